#pragma once
#include <cstdint>

#include "bdlab/common.hpp"
#include "bdlab/fields.hpp"
#include "bdlab/grid.hpp"

namespace bdlab {

enum class Region { boundary, interior };

// Flattened node-time point cloud of a cylinder region (time-major: stamps
// ascending, node ids ascending within a stamp).  For disk grids x1/x2 are
// the chordal coordinates (cos theta, sin theta) of boundary nodes.
struct PointSet {
  Vec vals, x1, x2, t;
  std::size_t size() const { return vals.size(); }
};

PointSet region_points(const Grid& g, const Cylinder& c, Region region, double tau,
                       double t0, const Stamps& F);

// Hoelder seminorm sup |f(p)-f(q)| / d(p,q)^alpha in the parabolic sup-metric
// d = max(|x-y|, |t-s|).  Exhaustive over pairs for <= cap points; above the
// cap, npairs splitmix64-seeded random pairs.
double holder_seminorm(const PointSet& pts, double alpha, std::uint64_t seed = 1,
                       std::size_t cap = 20000, std::size_t npairs = 10000000);

// Max of holder_seminorm over the derivative fields (d1, d2, dt).
double c1alpha_seminorm(const Grid& g, const Cylinder& c, Region region, double tau,
                        double t0, const TrajFields& f, double alpha,
                        std::uint64_t seed = 1);

// Morrey norm: max over the radius ladder of rho^{-theta} int_{bnd} f^2
// (interior: rho^{-(theta+1)} int f^2), then square root.
double morrey_norm(const Grid& g, double t0, double tau, int M, const Stamps& F,
                   double theta, const Vec& ladder, Region region);

// Campanato seminorm: same scaling with the cylinder mean subtracted first.
double campanato_seminorm(const Grid& g, double t0, double tau, int M, const Stamps& F,
                          double theta, const Vec& ladder, Region region);

// Linear comparison polynomial c1 x1 + cn x_n + ct t; coefficients are the
// region-cylinder averages of the derivative fields (boundary variant P,
// interior variant P-tilde).
struct Polynomial {
  double c1 = 0.0, cn = 0.0, ct = 0.0;
};

Polynomial fit_polynomial(const Cylinder& c, const TrajFields& f, Region variant);

// Squared H^1 seminorm density sums over a cylinder region:
// int (d1^2 + d2^2 + dt^2).
double h1_seminorm_sq(const Cylinder& c, const TrajFields& f, Region region);

// Same with the polynomial's constant derivative fields subtracted:
// int ((d1-c1)^2 + (d2-cn)^2 + (dt-ct)^2).
double h1_excess_sq(const Cylinder& c, const TrajFields& f, const Polynomial& p,
                    Region region);

}  // namespace bdlab
