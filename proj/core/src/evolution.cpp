#include "bdlab/evolution.hpp"

#include <cmath>

namespace bdlab {

const TrajFields& Trajectory::fields() const {
  if (!cache_)
    cache_ = std::make_shared<const TrajFields>(compute_fields(*grid, stamps, tau));
  return *cache_;
}

namespace {

Csr with_added_diagonal(const Csr& A, const Vec& d) {
  Csr S = A;
  for (int r = 0; r < S.n; ++r) {
    bool found = false;
    for (int k = S.row_ptr[r]; k < S.row_ptr[r + 1]; ++k)
      if (S.col_idx[k] == r) {
        S.vals[k] += d[r];
        found = true;
        break;
      }
    require(found || d[r] == 0.0, "with_added_diagonal: missing diagonal entry");
  }
  return S;
}

}  // namespace

LinearStepper::LinearStepper(std::shared_ptr<const Grid> g, LinearProblem pb, double tau)
    : grid_(std::move(g)), pb_(std::move(pb)), tau_(tau) {
  require(tau_ > 0.0, "LinearStepper: need tau > 0");
  mb_ = boundary_mass(*grid_, pb_.chart);
  const_coeff_ = pb_.a.is_const && pb_.b.is_const;
}

void LinearStepper::build(double t1) {
  const Grid& g = *grid_;
  Operator op = assemble(g, pb_.a, t1, pb_.Lambda, pb_.chart);
  int nn = g.nnode();
  Vec D(nn, 0.0);
  const std::vector<int>& dyn =
      (g.kind == GridKind::halfspace) ? g.dyn_idx : g.boundary_idx;
  for (int id : dyn)
    D[id] = mb_[id] * (1.0 / tau_ + pb_.b(g.x1[id], g.x2[id], t1));
  S_ = with_added_diagonal(op.A, D);
  fixed_.assign(nn, 0);
  if (g.kind == GridKind::halfspace)
    for (int id = 0; id < nn; ++id)
      if (g.is_wall[id]) fixed_[id] = 1;
  built_ = true;
}

Vec LinearStepper::step_linear(const Vec& um, double t1) {
  const Grid& g = *grid_;
  if (!built_ || !const_coeff_) build(t1);
  int nn = g.nnode();
  Vec rhs(nn, 0.0);
  const std::vector<int>& dyn =
      (g.kind == GridKind::halfspace) ? g.dyn_idx : g.boundary_idx;
  for (int id : dyn)
    rhs[id] = mb_[id] * (um[id] / tau_ + pb_.f(g.x1[id], g.x2[id], t1));
  Vec vals(nn, 0.0);
  if (g.kind == GridKind::halfspace)
    for (int id = 0; id < nn; ++id)
      if (g.is_wall[id]) vals[id] = pb_.wall(g.x1[id], g.x2[id], t1);
  if (warm_.empty()) warm_ = um;
  int nfree = 0;
  for (int i = 0; i < nn; ++i) nfree += fixed_.empty() || !fixed_[i] ? 1 : 0;
  solve_pinned(S_, fixed_, vals, rhs, warm_, pb_.tol, 20 * nfree);
  return warm_;
}

Trajectory run_linear(std::shared_ptr<const Grid> g, const LinearProblem& pb,
                      const Vec& u0, double t0, double tau, int M) {
  require(M >= 1, "run_linear: need at least one step");
  const Grid& grid = *g;
  Trajectory traj;
  traj.grid = g;
  traj.t0 = t0;
  traj.tau = tau;
  traj.stamps.reserve(M + 1);

  Operator op0 = assemble(grid, pb.a, t0, pb.Lambda, pb.chart);
  if (grid.kind == GridKind::halfspace) {
    Vec wall0(grid.nnode(), 0.0);
    for (int id = 0; id < grid.nnode(); ++id)
      if (grid.is_wall[id]) wall0[id] = pb.wall(grid.x1[id], grid.x2[id], t0);
    traj.stamps.push_back(solve_dirichlet(op0, u0, pb.tol, &wall0));
  } else {
    traj.stamps.push_back(solve_dirichlet(op0, u0, pb.tol));
  }

  LinearStepper stepper(g, pb, tau);
  for (int m = 0; m < M; ++m)
    traj.stamps.push_back(stepper.step_linear(traj.stamps.back(), t0 + (m + 1) * tau));
  return traj;
}

CompatReport check_compatibility(const Trajectory& traj, double rho, double tc) {
  const Grid& g = *traj.grid;
  Cylinder c = cylinder_nodes(g, traj.t0, traj.tau, traj.M(), rho, tc);
  const TrajFields& f = traj.fields();
  int M = traj.M();
  std::size_t nn = traj.stamps[0].size();
  Stamps ut2(M + 1, Vec(nn)), g2(M + 1, Vec(nn)), u2(M + 1, Vec(nn));
  for (int m = 0; m <= M; ++m)
    for (std::size_t i = 0; i < nn; ++i) {
      ut2[m][i] = f.dt[m][i] * f.dt[m][i];
      g2[m][i] = f.d1[m][i] * f.d1[m][i] + f.d2[m][i] * f.d2[m][i];
      u2[m][i] = traj.stamps[m][i] * traj.stamps[m][i];
    }
  CompatReport rep;
  rep.numerator = c.int_integral(ut2);
  rep.denominator = c.int_integral(g2) + c.int_integral(u2) / (rho * rho);
  if (rep.denominator > 0.0) {
    rep.ratio = rep.numerator / rep.denominator;
  } else if (rep.numerator > 0.0) {
    rep.ratio_defined = false;  // never divide by a vanishing denominator
  } else {
    rep.ratio = 0.0;
  }
  return rep;
}

Trajectory steklov_average(const Trajectory& traj, double h_s) {
  double ratio = h_s / traj.tau;
  int k = static_cast<int>(std::round(ratio));
  require(k >= 1 && std::abs(ratio - k) < 1e-9,
          "steklov_average: h_s must be a positive multiple of tau");
  int M = traj.M();
  require(k <= M, "steklov_average: h_s exceeds the trajectory span");
  Trajectory out;
  out.grid = traj.grid;
  out.t0 = traj.t0;
  out.tau = traj.tau;
  int Mh = M - k;
  std::size_t nn = traj.stamps[0].size();
  out.stamps.assign(Mh + 1, Vec(nn, 0.0));
  for (int m = 0; m <= Mh; ++m)
    for (int i = 0; i <= k; ++i) {
      double w = (i == 0 || i == k) ? 0.5 * traj.tau : traj.tau;
      double scale = w / (k * traj.tau);
      for (std::size_t p = 0; p < nn; ++p) out.stamps[m][p] += scale * traj.stamps[m + i][p];
    }
  return out;
}

double mode_coefficient(const Grid& g, const Vec& stamp, int k) {
  require(g.kind == GridKind::disk, "mode_coefficient: disk grids only");
  double s = 0.0;
  for (int j = 0; j < g.n_th; ++j)
    s += stamp[g.disk_id(g.n_r, j)] * std::cos(k * j * g.dth);
  return s / (g.n_th / 2.0);
}

double fit_decay_rate(const Trajectory& traj, int k) {
  int M = traj.M();
  Vec ts(M + 1), lc(M + 1);
  for (int m = 0; m <= M; ++m) {
    ts[m] = traj.time_of(m) - traj.t0;
    lc[m] = std::log(std::abs(mode_coefficient(*traj.grid, traj.stamps[m], k)));
  }
  return -polyfit_slope(ts, lc);
}

}  // namespace bdlab
