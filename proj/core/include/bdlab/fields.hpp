#pragma once
#include "bdlab/common.hpp"
#include "bdlab/grid.hpp"

namespace bdlab {

// Per-stamp derivative fields of a trajectory.  Meaning is kind-dependent:
// halfspace d1 = d/dx1, d2 = d/dx_n; disk d1 = d/dr, d2 = (1/r) d/dtheta
// (at the center d1 holds |grad| from a ring-1 least-squares fit, d2 = 0).
// dt is the discrete time derivative: centered inside, second-order
// one-sided at the ends (forward difference when only two stamps exist).
struct TrajFields {
  Stamps d1, d2, dt;
};

// Spatial derivatives of one nodal field (centered inside, second-order
// one-sided at grid faces).  Returns the pair (d1, d2) described above.
void dx_fields(const Grid& g, const Vec& u, Vec& d1, Vec& d2);

Stamps time_derivative(const Stamps& U, double tau);

TrajFields compute_fields(const Grid& g, const Stamps& U, double tau);

}  // namespace bdlab
