#pragma once
#include <memory>

#include "bdlab/elliptic.hpp"
#include "bdlab/evolution.hpp"
#include "bdlab/grid.hpp"

namespace bdlab {

// Knobs of the nonlinear boundary flow d/dt(u^p) = -d_nu u - b u + f solved
// as a whole-trajectory fixed point in phi = psi + U0 variables with the
// frozen coefficient sigma*p*(w+U0)^{p-1} + (1-sigma).
struct NonlinearConfig {
  double p = 2.0;
  double band_lo = 0.125;  // structural coefficient band [1/Lambda^, Lambda^]
  double band_hi = 8.0;
  double fp_tol = 1e-10;
  int max_iters = 60;
  Vec sigma_schedule = {1.0};
  double T = 0.5;
  double tau = 1.0 / 128.0;
  double tol = 1e-10;  // linear solve tolerance
};

struct PositivityReport {
  double min_u = 0.0;
  double max_u = 0.0;
  bool violation = false;
};

struct NonlinearResult {
  Trajectory traj;  // u = w* + U0 (full nodal stamps, t0 = 0)
  int iters = 0;    // iterations of the final sigma stage
  Vec diffs;        // successive sup-norm differences of that stage
};

// Harmonic extension of positive boundary data (the paper's U0).
Vec harmonic_extension(const Operator& op, const Vec& u0b, double tol = 1e-10);

// One backward-Euler step of the sigma-linearized problem at time t1:
// (A + diag(mb (c/tau + sigma b))) phi' = mb (sigma f + c phi/tau)
//                                          + (1-sigma) (A U0)|_bnd,
// c = sigma p (w_next + U0)^{p-1} + (1-sigma) frozen from the previous
// iterate's next-stamp boundary values w_next.  Errors if u = w_next + U0
// loses positivity or c leaves the configured band (horizon too large);
// coefficients are never clamped.
Vec linearized_step(const Grid& g, const Csr& A, const Vec& mb, const Vec& AU0,
                    const Vec& U0, const Vec& w_next, const Vec& phi_m, double sigma,
                    const NonlinearConfig& cfg, const ScalarField& b,
                    const ScalarField& f, double t1, Vec& warm);

// Whole-horizon fixed point at sigma = 1 starting from w == 0.
NonlinearResult fixed_point_solve(std::shared_ptr<const Grid> g, const Vec& u0b,
                                  const NonlinearConfig& cfg, const ScalarField& b,
                                  const ScalarField& f);

// Runs the configured sigma schedule, warm-starting each stage from the
// previous fixed point.
NonlinearResult sigma_continuation(std::shared_ptr<const Grid> g, const Vec& u0b,
                                   const NonlinearConfig& cfg, const ScalarField& b,
                                   const ScalarField& f);

// Min/max of u over all boundary node-times, flagged against [band_lo, band_hi].
PositivityReport positivity_bounds(const Trajectory& traj, double band_lo,
                                   double band_hi);

}  // namespace bdlab
