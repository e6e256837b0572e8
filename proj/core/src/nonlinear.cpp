#include "bdlab/nonlinear.hpp"

#include <algorithm>
#include <cmath>

namespace bdlab {

Vec harmonic_extension(const Operator& op, const Vec& u0b, double tol) {
  for (double v : u0b)
    require(v > 0.0, "harmonic_extension: boundary data must be positive");
  return solve_dirichlet(op, u0b, tol);
}

namespace {

Csr with_added_diagonal(const Csr& A, const Vec& d) {
  Csr S = A;
  for (int r = 0; r < S.n; ++r)
    for (int k = S.row_ptr[r]; k < S.row_ptr[r + 1]; ++k)
      if (S.col_idx[k] == r) {
        S.vals[k] += d[r];
        break;
      }
  return S;
}

}  // namespace

Vec linearized_step(const Grid& g, const Csr& A, const Vec& mb, const Vec& AU0,
                    const Vec& U0, const Vec& w_next, const Vec& phi_m, double sigma,
                    const NonlinearConfig& cfg, const ScalarField& b,
                    const ScalarField& f, double t1, Vec& warm) {
  int nn = g.nnode();
  Vec D(nn, 0.0), rhs(nn, 0.0);
  for (int id : g.boundary_idx) {
    double u = w_next[id] + U0[id];
    if (u <= 0.0)
      fail("linearized_step: iterate lost positivity on the boundary (u = " +
           std::to_string(u) + ")");
    double c = sigma * cfg.p * std::pow(u, cfg.p - 1.0) + (1.0 - sigma);
    if (!(c >= cfg.band_lo && c <= cfg.band_hi))
      fail("linearized_step: frozen coefficient " + std::to_string(c) +
           " leaves the band [" + std::to_string(cfg.band_lo) + ", " +
           std::to_string(cfg.band_hi) + "] (horizon too large)");
    double bv = b(g.x1[id], g.x2[id], t1);
    D[id] = mb[id] * (c / cfg.tau + sigma * bv);
    rhs[id] = mb[id] * (sigma * f(g.x1[id], g.x2[id], t1) + c * phi_m[id] / cfg.tau) +
              (1.0 - sigma) * AU0[id];
  }
  Csr S = with_added_diagonal(A, D);
  std::vector<std::uint8_t> fixed(nn, 0);
  Vec dummy(nn, 0.0);
  if (warm.empty()) warm = phi_m;
  solve_pinned(S, fixed, dummy, rhs, warm, cfg.tol, 20 * nn);
  return warm;
}

namespace {

NonlinearResult run_stages(std::shared_ptr<const Grid> g, const Vec& u0b,
                           const NonlinearConfig& cfg, const ScalarField& b,
                           const ScalarField& f, const Vec& schedule) {
  const Grid& grid = *g;
  require(grid.kind == GridKind::disk, "nonlinear flow: disk grids only");
  require(cfg.p > 0.0, "nonlinear flow: need exponent p > 0");
  require(cfg.fp_tol > 0.0, "nonlinear flow: need fixed-point tolerance > 0");
  require(cfg.max_iters >= 1, "nonlinear flow: need max_iters >= 1");
  int Mst = static_cast<int>(std::round(cfg.T / cfg.tau));
  require(Mst >= 1 && std::abs(Mst * cfg.tau - cfg.T) < 1e-9,
          "nonlinear flow: T must be a positive multiple of tau");

  Operator op = assemble(grid, ScalarField::constant(1.0), 0.0, 4.0);
  Vec U0 = harmonic_extension(op, u0b, cfg.tol);
  Vec AU0 = op.A.matvec(U0);
  Vec mb = boundary_mass(grid);
  int nn = grid.nnode();

  Stamps w(Mst + 1, Vec(nn, 0.0));  // w(x, 0) = 0 and w^0 == 0 per stage
  NonlinearResult res;
  for (double sigma : schedule) {
    require(sigma >= 0.0 && sigma <= 1.0, "nonlinear flow: sigma must lie in [0,1]");
    Vec diffs;
    int iters = 0;
    for (int it = 0; it < cfg.max_iters; ++it) {
      Stamps phi(Mst + 1, Vec());
      phi[0] = U0;
      for (int m = 0; m < Mst; ++m) {
        double t1 = (m + 1) * cfg.tau;
        Vec warm(nn);  // previous iterate's value of this stamp
        for (int i = 0; i < nn; ++i) warm[i] = w[m + 1][i] + U0[i];
        phi[m + 1] = linearized_step(grid, op.A, mb, AU0, U0, w[m + 1], phi[m], sigma,
                                     cfg, b, f, t1, warm);
      }
      double d = 0.0;
      for (int m = 0; m <= Mst; ++m)
        for (int i = 0; i < nn; ++i) {
          double wn = phi[m][i] - U0[i];
          d = std::max(d, std::abs(wn - w[m][i]));
          w[m][i] = wn;
        }
      diffs.push_back(d);
      iters = it + 1;
      if (d <= cfg.fp_tol) break;
    }
    if (diffs.back() > cfg.fp_tol)
      fail("nonlinear flow: fixed point did not contract within " +
           std::to_string(cfg.max_iters) +
           " iterations (shrink the horizon T)");
    res.iters = iters;
    res.diffs = diffs;
  }

  res.traj.grid = g;
  res.traj.t0 = 0.0;
  res.traj.tau = cfg.tau;
  res.traj.stamps.assign(Mst + 1, Vec(nn, 0.0));
  for (int m = 0; m <= Mst; ++m)
    for (int i = 0; i < nn; ++i) res.traj.stamps[m][i] = w[m][i] + U0[i];
  return res;
}

}  // namespace

NonlinearResult fixed_point_solve(std::shared_ptr<const Grid> g, const Vec& u0b,
                                  const NonlinearConfig& cfg, const ScalarField& b,
                                  const ScalarField& f) {
  return run_stages(std::move(g), u0b, cfg, b, f, Vec{1.0});
}

NonlinearResult sigma_continuation(std::shared_ptr<const Grid> g, const Vec& u0b,
                                   const NonlinearConfig& cfg, const ScalarField& b,
                                   const ScalarField& f) {
  require(!cfg.sigma_schedule.empty(), "sigma_continuation: empty schedule");
  for (std::size_t i = 1; i < cfg.sigma_schedule.size(); ++i)
    require(cfg.sigma_schedule[i] >= cfg.sigma_schedule[i - 1],
            "sigma_continuation: schedule must be monotone");
  return run_stages(std::move(g), u0b, cfg, b, f, cfg.sigma_schedule);
}

PositivityReport positivity_bounds(const Trajectory& traj, double band_lo,
                                   double band_hi) {
  const Grid& g = *traj.grid;
  PositivityReport rep;
  bool first = true;
  for (const Vec& stamp : traj.stamps)
    for (int id : g.boundary_idx) {
      double v = stamp[id];
      if (first) {
        rep.min_u = rep.max_u = v;
        first = false;
      } else {
        rep.min_u = std::min(rep.min_u, v);
        rep.max_u = std::max(rep.max_u, v);
      }
    }
  rep.violation = !(rep.min_u >= band_lo && rep.max_u <= band_hi);
  return rep;
}

}  // namespace bdlab
