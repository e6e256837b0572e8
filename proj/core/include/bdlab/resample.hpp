#pragma once
#include <array>
#include <memory>

#include "bdlab/common.hpp"
#include "bdlab/evolution.hpp"
#include "bdlab/grid.hpp"

namespace bdlab {

// Catmull-Rom weights at fractional offset s in [0,1).
std::array<double, 4> cr_w(double s);

// Bicubic Catmull-Rom interpolation of nodal values on a disk grid at polar
// point (r, th); clamped in r (ring indices clipped to [0, n_r], ring 0 is
// the center value), periodic in theta.
double interp_polar(const Grid& g, const Vec& v, double r, double th);

// Resample a disk trajectory into a boundary chart: the chart at base point
// (cos theta0, sin theta0) maps local coordinates y to
// X = p0 + y1*that + (y_n + phi(y1))*nhat with phi the circle graph
// 1 - sqrt(1 - y1^2), that = (-sin theta0, cos theta0), nhat = -p0.
// Returns a halfspace trajectory on the local grid (Rc, hc) holding
// 2*nstamp_half + 1 stamps centered at chart time t0_chart (local time
// runs over [-nstamp_half*tau, +nstamp_half*tau]).
Trajectory chart_resample(const Trajectory& disk_traj, double theta0,
                          double t0_chart, double Rc, double hc, int nstamp_half);

}  // namespace bdlab
