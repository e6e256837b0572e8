#pragma once
#include <memory>

#include "bdlab/elliptic.hpp"
#include "bdlab/fields.hpp"
#include "bdlab/grid.hpp"

namespace bdlab {

// Time-stamped solution of the boundary diffusion equation.  Derivative
// fields are computed lazily on the first fields() call and cached; stamps
// must not change after that.  Copies never inherit the cache, so a copy may
// still adjust its stamps before first use.  Every interior stamp is the
// a-harmonic extension of its boundary trace (to solver tolerance).
struct Trajectory {
  std::shared_ptr<const Grid> grid;
  double t0 = 0.0;
  double tau = 0.0;
  Stamps stamps;

  Trajectory() = default;
  Trajectory(const Trajectory& o)
      : grid(o.grid), t0(o.t0), tau(o.tau), stamps(o.stamps) {}
  Trajectory& operator=(const Trajectory& o) {
    if (this != &o) {
      grid = o.grid;
      t0 = o.t0;
      tau = o.tau;
      stamps = o.stamps;
      cache_.reset();
    }
    return *this;
  }
  Trajectory(Trajectory&&) = default;
  Trajectory& operator=(Trajectory&&) = default;

  int M() const { return static_cast<int>(stamps.size()) - 1; }
  double time_of(int m) const { return t0 + m * tau; }
  const TrajFields& fields() const;

 private:
  mutable std::shared_ptr<const TrajFields> cache_;
};

// Problem data for the linear flow m du/dt + A u + m (b u - f) = 0 on the
// dynamic boundary rows, A u = 0 on interior rows.  For halfspace grids,
// `wall` supplies Dirichlet data on the three artificial sides (and the
// initial interior state through the harmonic extension); disk grids ignore
// it.
struct LinearProblem {
  ScalarField a = ScalarField::constant(1.0);
  ScalarField b = ScalarField::constant(0.0);
  ScalarField f = ScalarField::constant(0.0);
  ScalarField wall = ScalarField::constant(0.0);
  const FlattenedChart* chart = nullptr;
  double Lambda = 4.0;
  double tol = 1e-10;
};

// Backward-Euler stepper.  The assembled system is reused across steps when
// a and b are constant in time; solves are warm-started from the previous
// stamp.
class LinearStepper {
 public:
  LinearStepper(std::shared_ptr<const Grid> g, LinearProblem pb, double tau);
  // One implicit step from state um to time t1 = t_m + tau.
  Vec step_linear(const Vec& um, double t1);
  const Vec& boundary_mass_vec() const { return mb_; }

 private:
  void build(double t1);

  std::shared_ptr<const Grid> grid_;
  LinearProblem pb_;
  double tau_;
  Vec mb_;
  Csr S_;
  std::vector<std::uint8_t> fixed_;
  Vec warm_;
  bool built_ = false;
  bool const_coeff_ = false;
};

// u0: boundary data (disk: over boundary_idx; halfspace: over dyn_idx).
// The initial stamp is the a-harmonic extension of u0 (with wall data at t0
// on halfspace grids).
Trajectory run_linear(std::shared_ptr<const Grid> g, const LinearProblem& pb,
                      const Vec& u0, double t0, double tau, int M);

// Both sides of the interior-energy compatibility condition on Q_rho^+
// centered at time tc: numerator = int |u_t|^2, denominator =
// int |D_x u|^2 + rho^{-2} int u^2.
struct CompatReport {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
  bool ratio_defined = true;  // false iff denominator == 0 with numerator > 0
};

CompatReport check_compatibility(const Trajectory& traj, double rho, double tc = 0.0);

// Running trapezoid time-average u_h(x,t) = (1/h_s) int_t^{t+h_s} u; the
// trajectory shrinks by h_s/tau stamps at the far end.
Trajectory steklov_average(const Trajectory& traj, double h_s);

// Boundary Fourier mode diagnostics on disk trajectories.
double mode_coefficient(const Grid& g, const Vec& stamp, int k);
double fit_decay_rate(const Trajectory& traj, int k);

}  // namespace bdlab
