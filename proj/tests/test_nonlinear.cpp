#include <cmath>

#include "bdlab/common.hpp"
#include "bdlab/elliptic.hpp"
#include "bdlab/evolution.hpp"
#include "bdlab/grid.hpp"
#include "bdlab/nonlinear.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bdlab;
using namespace bdlab::test;

namespace {

// Manufactured family u*(theta, t) = g0(t) + g1(t) cos(theta) with
// g0 = 2 + 0.1 t, g1 = 0.5 exp(-t); on the unit circle cos(theta) = x1 and
// the harmonic extension is g0 + g1 r cos(theta), so d_nu u* = g1 cos(theta).
double ustar(double x1, double t) { return 2.0 + 0.1 * t + 0.5 * std::exp(-t) * x1; }

ScalarField forcing(double p) {
  return ScalarField::of([p](double x1, double, double t) {
    double us = ustar(x1, t);
    double dtu = 0.1 - 0.5 * std::exp(-t) * x1;
    return p * std::pow(us, p - 1.0) * dtu + 0.5 * std::exp(-t) * x1 + 0.5 * us;
  });
}

Vec initial_data(const Grid& g) {
  Vec u0(g.boundary_idx.size());
  for (std::size_t i = 0; i < u0.size(); ++i)
    u0[i] = ustar(g.x1[g.boundary_idx[i]], 0.0);
  return u0;
}

double manufactured_err(const NonlinearResult& res) {
  const Grid& g = *res.traj.grid;
  double err = 0.0;
  for (std::size_t m = 0; m < res.traj.stamps.size(); ++m) {
    double t = res.traj.time_of(static_cast<int>(m));
    for (int id : g.boundary_idx)
      err = std::max(err, std::abs(res.traj.stamps[m][id] - ustar(g.x1[id], t)));
  }
  return err;
}

NonlinearConfig base_config(double p, double tau, double T) {
  NonlinearConfig cfg;
  cfg.p = p;
  cfg.tau = tau;
  cfg.T = T;
  return cfg;
}

}  // namespace

TEST_CASE("steady data is a one-iteration fixed point") {
  auto g = std::make_shared<const Grid>(build_disk_grid(16, 64));
  NonlinearConfig cfg = base_config(2.0, 1.0 / 32, 0.25);
  Vec u0(g->boundary_idx.size(), 2.0);
  // b u = f balances the flux-free steady state u == 2
  NonlinearResult res = fixed_point_solve(g, u0, cfg, ScalarField::constant(0.5),
                                          ScalarField::constant(1.0));
  CHECK(res.iters == 1);
  for (const Vec& s : res.traj.stamps)
    for (double v : s) CHECK(std::abs(v - 2.0) < 1e-9);
}

TEST_CASE("p = 1 reproduces the linear flow") {
  auto g = std::make_shared<const Grid>(build_disk_grid(16, 64));
  NonlinearConfig cfg = base_config(1.0, 1.0 / 32, 0.25);
  cfg.tol = 1e-12;
  cfg.fp_tol = 1e-12;
  ScalarField b = ScalarField::constant(0.5);
  ScalarField f = forcing(1.0);
  NonlinearResult res = fixed_point_solve(g, initial_data(*g), cfg, b, f);

  LinearProblem pb;
  pb.b = b;
  pb.f = f;
  pb.tol = 1e-12;
  Trajectory lin = run_linear(g, pb, initial_data(*g), 0.0, cfg.tau, 8);
  REQUIRE(lin.stamps.size() == res.traj.stamps.size());
  double d = 0.0;
  for (std::size_t m = 0; m < lin.stamps.size(); ++m)
    d = std::max(d, sup_abs_diff(lin.stamps[m], res.traj.stamps[m]));
  CHECK(d <= 1e-9);
}

TEST_CASE("manufactured solution: pinned errors and contraction") {
  auto g = std::make_shared<const Grid>(build_disk_grid(32, 128));
  for (auto [p, pin, pin_iters] :
       {std::tuple{0.5, 6.64370e-04, 6}, std::tuple{2.0, 1.45312e-03, 7}}) {
    NonlinearConfig cfg = base_config(p, 1.0 / 64, 0.5);
    NonlinearResult res = fixed_point_solve(g, initial_data(*g), cfg,
                                            ScalarField::constant(0.5), forcing(p));
    CHECK(std::abs(manufactured_err(res) - pin) < 1e-6);
    CHECK(res.iters == pin_iters);
    // whole-horizon iteration contracts fast on this horizon
    for (std::size_t i = 1; i < res.diffs.size(); ++i)
      CHECK(res.diffs[i] <= 0.9 * res.diffs[i - 1]);
    PositivityReport pos = positivity_bounds(res.traj, cfg.band_lo, cfg.band_hi);
    CHECK(!pos.violation);
    CHECK(pos.min_u == doctest::Approx(1.5).epsilon(0.01));
    CHECK(pos.max_u == doctest::Approx(2.5).epsilon(0.01));
  }
}

TEST_CASE("coefficient band violations error out (no clamping)") {
  auto g = std::make_shared<const Grid>(build_disk_grid(16, 64));
  NonlinearConfig cfg = base_config(2.0, 1.0 / 32, 0.25);

  // initial level 0.05: frozen coefficient p*u^{p-1} = 0.1 < band_lo
  Vec tiny(g->boundary_idx.size(), 0.05);
  CHECK_THROWS_WITH_AS(
      fixed_point_solve(g, tiny, cfg, ScalarField::constant(0.0),
                        ScalarField::constant(0.0)),
      doctest::Contains("band"), Error);

  // initial level 5: coefficient 10 > band_hi
  Vec big(g->boundary_idx.size(), 5.0);
  CHECK_THROWS_AS(fixed_point_solve(g, big, cfg, ScalarField::constant(0.0),
                                    ScalarField::constant(0.0)),
                  Error);

  // strongly negative forcing drives u through zero
  Vec u0(g->boundary_idx.size(), 0.5);
  CHECK_THROWS_AS(fixed_point_solve(g, u0, cfg, ScalarField::constant(0.0),
                                    ScalarField::constant(-40.0)),
                  Error);
}

TEST_CASE("sigma = 0 endpoint is the frozen linear problem") {
  auto g = std::make_shared<const Grid>(build_disk_grid(16, 64));
  NonlinearConfig cfg = base_config(2.0, 1.0 / 32, 0.25);
  cfg.sigma_schedule = {0.0};
  Vec u0 = initial_data(*g);
  NonlinearResult res = sigma_continuation(g, u0, cfg, ScalarField::constant(0.5),
                                           forcing(2.0));
  CHECK(res.iters <= 2);
  // at sigma = 0 the fixed point is w == 0, i.e. u == U0 frozen in time
  Operator op = assemble(*g, ScalarField::constant(1.0), 0.0, 4.0);
  Vec U0 = harmonic_extension(op, u0);
  for (const Vec& s : res.traj.stamps) CHECK(sup_abs_diff(s, U0) <= 1e-8);
}

TEST_CASE("sigma continuation lands on the direct fixed point") {
  auto g = std::make_shared<const Grid>(build_disk_grid(32, 128));
  NonlinearConfig direct = base_config(2.0, 1.0 / 64, 0.5);
  NonlinearResult rd = fixed_point_solve(g, initial_data(*g), direct,
                                         ScalarField::constant(0.5), forcing(2.0));
  NonlinearConfig cont = direct;
  cont.sigma_schedule = {0.0, 0.5, 1.0};
  NonlinearResult rc = sigma_continuation(g, initial_data(*g), cont,
                                          ScalarField::constant(0.5), forcing(2.0));
  double ed = manufactured_err(rd), ec = manufactured_err(rc);
  CHECK(ec <= 2.0 * ed);
}

TEST_CASE("positivity report flags values outside the band") {
  auto g = std::make_shared<const Grid>(build_disk_grid(8, 32));
  Trajectory traj = sampled_traj(
      g, 0.0, 0.25, 4, [](double x1, double, double) { return 2.0 + x1; });
  PositivityReport ok = positivity_bounds(traj, 0.125, 8.0);
  CHECK(!ok.violation);
  CHECK(ok.min_u == doctest::Approx(1.0).epsilon(1e-9));
  PositivityReport bad = positivity_bounds(traj, 2.0, 8.0);
  CHECK(bad.violation);
}
