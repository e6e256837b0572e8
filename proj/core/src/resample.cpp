#include "bdlab/resample.hpp"

#include <algorithm>
#include <cmath>

namespace bdlab {

std::array<double, 4> cr_w(double s) {
  return {
      -0.5 * s * s * s + s * s - 0.5 * s,
      1.5 * s * s * s - 2.5 * s * s + 1.0,
      -1.5 * s * s * s + 2.0 * s * s + 0.5 * s,
      0.5 * s * s * s - 0.5 * s * s,
  };
}

double interp_polar(const Grid& g, const Vec& v, double r, double th) {
  require(g.kind == GridKind::disk, "interp_polar: disk grids only");
  double fr = r / g.dr;
  int i0 = static_cast<int>(std::floor(fr));
  std::array<double, 4> wr = cr_w(fr - i0);
  double ft = std::fmod(th, 2.0 * kPi);
  if (ft < 0.0) ft += 2.0 * kPi;
  ft /= g.dth;
  int j0 = static_cast<int>(std::floor(ft));
  std::array<double, 4> wt = cr_w(ft - j0);
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    int i = std::clamp(i0 - 1 + a, 0, g.n_r);
    double row;
    if (i == 0) {
      row = v[0];
    } else {
      row = 0.0;
      for (int b = 0; b < 4; ++b) row += wt[b] * v[g.disk_id(i, j0 - 1 + b)];
    }
    out += wr[a] * row;
  }
  return out;
}

Trajectory chart_resample(const Trajectory& disk_traj, double theta0,
                          double t0_chart, double Rc, double hc, int nstamp_half) {
  const Grid& g = *disk_traj.grid;
  require(g.kind == GridKind::disk, "chart_resample: disk trajectories only");
  double tau = disk_traj.tau;
  double m0r = (t0_chart - disk_traj.t0) / tau;
  int m0 = static_cast<int>(std::round(m0r));
  require(std::abs(m0r - m0) < 1e-9, "chart_resample: t0_chart must land on a stamp");
  require(m0 - nstamp_half >= 0 && m0 + nstamp_half <= disk_traj.M(),
          "chart_resample: stamp window leaves the trajectory span");

  auto gl = std::make_shared<Grid>(build_halfspace_grid(Rc, hc));
  double p0x = std::cos(theta0), p0y = std::sin(theta0);
  double tvx = -std::sin(theta0), tvy = std::cos(theta0);
  // nhat = -p0
  Trajectory out;
  out.grid = gl;
  out.tau = tau;
  out.t0 = -tau * nstamp_half;
  out.stamps.assign(2 * nstamp_half + 1, Vec(gl->nnode(), 0.0));
  for (int k = -nstamp_half; k <= nstamp_half; ++k) {
    const Vec& v = disk_traj.stamps[m0 + k];
    Vec& dst = out.stamps[k + nstamp_half];
    for (int nidx = 0; nidx < gl->nnode(); ++nidx) {
      double y1 = gl->x1[nidx], yn = gl->x2[nidx];
      double depth = yn + (1.0 - std::sqrt(1.0 - y1 * y1));
      double X = p0x + y1 * tvx - depth * p0x;
      double Y = p0y + y1 * tvy - depth * p0y;
      double r = std::hypot(X, Y);
      double th = std::atan2(Y, X);
      dst[nidx] = interp_polar(g, v, std::min(r, 1.0), th);
    }
  }
  return out;
}

}  // namespace bdlab
