#pragma once
#include <cstdint>
#include <map>
#include <string>

#include "bdlab/evolution.hpp"
#include "bdlab/norms.hpp"

namespace bdlab {

// Outcome of one energy / regularity inequality evaluated on a trajectory:
// the empirical constant is ratio = lhs / rhs (rhs carries no constant).
// `history` holds the per-refinement-level ratios when the suite reruns a
// check across levels (level 0 = coarsest).
struct InequalityReport {
  std::string id;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  bool ratio_defined = true;  // false iff rhs == 0 while lhs > 0
  bool trivial = false;       // both sides vanish identically
  double rho = 0.0, R = 0.0, h = 0.0, tau = 0.0;
  double slope = 0.0;  // ladder fit (ITER_DECAY only)
  std::map<std::string, double> extras;
  Vec history;
};

// Energy inequality sup_t int_bnd u^2 + int int |Du|^2  <=  C [...] on the
// cylinder pair (rho, R) centered at time tc.  Gap precondition rho <= 0.9 R.
InequalityReport check_caccioppoli_I(const Trajectory& traj, double rho, double R,
                                     double tc = 0.0);
// Gradient-energy variant; same precondition as CACC1.
InequalityReport check_caccioppoli_II(const Trajectory& traj, double rho, double R,
                                      double tc = 0.0);
// Time-derivative variant; stated range requires rho <= 7R/8.
InequalityReport check_caccioppoli_III(const Trajectory& traj, double rho, double R,
                                       double tc = 0.0);

// Four-term mean-oscillation excess E(rho): for each of the boundary and
// interior cylinder means of u, the average integrals of (u - mean)^2 over
// both regions are summed.
double oscillation_excess(const Trajectory& traj, double rho, double tc = 0.0);

// Homogeneous decay ratio E(rho) / ((rho/R)^2 E(R)); shared by the decay
// check and the zero-source reduction of the nonhomogeneous iteration.
double homogeneous_decay_ratio(const Trajectory& traj, double rho, double R,
                               double tc = 0.0);

// Fits log E against log rho over the ladder (>= 3 radii) and reports the
// worst per-rung decay ratio.  E identically zero sets the trivial flag.
InequalityReport check_iteration_decay(const Trajectory& traj, const Vec& ladder,
                                       double R, double tc = 0.0);

// Linear-polynomial excess energy at scale rho: for the boundary-mean and
// interior-mean comparison polynomials, [u-P]^2_{H1(bnd)} + rho^{-1}
// [u-P]^2_{H1(int)} summed over both variants.
double polynomial_excess(const Trajectory& traj, double rho, double tc = 0.0);

// Optional source data of the nonhomogeneous local problem; null members are
// identically zero.
struct NonhomSources {
  const Stamps* f = nullptr;   // boundary source
  const Stamps* F1 = nullptr;  // tangential flux component
  const Stamps* Fn = nullptr;  // normal flux component
};

// Excess iteration with sources: lhs = polynomial_excess(rho); rhs =
// (rho/R)^{n+2} polynomial_excess(R) + (1/R) sum_i |F_i|^2_{Q_R}
// + |F_n|^2_{bnd Q_R} + |f - (f)_R|^2_{bnd Q_R}.  With all sources absent the
// check reduces to the homogeneous decay path (extras carries its ratio).
InequalityReport check_nonhom_iteration(const Trajectory& traj, double rho, double R,
                                        const NonhomSources& src = {},
                                        double tc = 0.0);

// Pointwise regularity estimate on the half cylinder: lhs = squared C^{1+a}
// seminorms of u over Q_{R/2} (boundary + interior); rhs = squared H^1 norms
// over Q_R plus the squared C^a norm of the boundary trace (and of the
// boundary source when supplied).
InequalityReport check_schauder_local(const Trajectory& traj, double R, double alpha,
                                      const Stamps* fB = nullptr, double tc = 0.0,
                                      std::uint64_t seed = 1);

// Morrey-scale estimate: lhs = sum over the derivative fields of squared
// Morrey norms on the half ladder; rhs = gradient energies at scale R plus
// the squared Morrey norm of u itself on the full ladder.
InequalityReport check_morrey_estimate(const Trajectory& traj, double R, double theta,
                                       int depth = 4, double tc = 0.0);

// Interior-energy compatibility ratio packaged as an inequality report.
InequalityReport check_compat_energy(const Trajectory& traj, double rho,
                                     double tc = 0.0);

// Global estimate on the disk: lhs = max over n_arcs boundary charts of the
// squared chart-local C^{1+a} seminorms at scale Rc/2; rhs = global H^1
// energies of the disk trajectory plus the squared chordal C^a norm of the
// boundary trace.  Errors if the arcs fail to cover the boundary circle.
InequalityReport check_schauder_global(const Trajectory& disk_traj, int n_arcs,
                                       double Rc, double hc, double t0_chart,
                                       double alpha, std::uint64_t seed = 1);

// The nine check ids, sorted.
std::vector<std::string> default_check_ids();

// Driver problems are built in; the suite selects checks by id, reruns them
// over `depth` refinement levels (halving h and tau per level), and reports
// the finest level with the full ratio history attached.
struct SuiteConfig {
  std::vector<std::string> checks;  // empty list = run nothing
  int depth = 1;
  std::uint64_t seed = 1;
  double rho = 0.5, R = 1.0;  // cylinder pair for the halfspace checks
  double alpha = 0.5;
  // base resolutions of the driver problems
  double h_mode = 1.0 / 64, tau_mode = 1.0 / 256;    // CACC1-3, COMPAT_E
  double h_decay = 1.0 / 64, tau_decay = 1.0 / 64;   // ITER_DECAY, MORREY_EST, SCHAUDER_LOCAL
  double h_nonhom = 1.0 / 32, tau_nonhom = 1.0 / 64; // NONHOM_ITER
  int nr_disk = 64, nth_disk = 256;                  // SCHAUDER_GLOBAL
  double tau_disk = 1.0 / 128;
};

std::vector<InequalityReport> run_verification_suite(const SuiteConfig& cfg);

}  // namespace bdlab
