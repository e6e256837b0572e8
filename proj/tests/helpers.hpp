#pragma once
// Shared builders for the test drivers: the exponential half-space mode,
// solver trajectories with exact wall data, and exact-sampled stamp arrays.
#include <cmath>
#include <memory>

#include "bdlab/common.hpp"
#include "bdlab/elliptic.hpp"
#include "bdlab/evolution.hpp"
#include "bdlab/grid.hpp"

namespace bdlab::test {

inline double mode(double x1, double xn, double t, double k = kPi) {
  return std::exp(-k * xn) * std::cos(k * x1) * std::exp(-k * t);
}

inline ScalarField mode_field(double k = kPi) {
  return ScalarField::of(
      [k](double x1, double xn, double t) { return mode(x1, xn, t, k); });
}

// Solver trajectory for the homogeneous mode problem: wall data = exact mode,
// u0 = mode at t0 on the dynamic nodes, a = 1, b = 0, f = 0.
inline Trajectory solver_mode_traj(double h, double tau, double t0 = -1.0,
                                   double span = 2.0, double k = kPi) {
  auto g = std::make_shared<const Grid>(build_halfspace_grid(1.0, h));
  LinearProblem pb;
  pb.wall = mode_field(k);
  Vec u0(g->dyn_idx.size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    int id = g->dyn_idx[i];
    u0[i] = mode(g->x1[id], g->x2[id], t0, k);
  }
  int M = static_cast<int>(std::lround(span / tau));
  return run_linear(g, pb, u0, t0, tau, M);
}

// Exact mode sampled at every node and stamp (no solves involved).
inline Trajectory sampled_mode_traj(double h, double tau, double t0 = -1.0,
                                    double span = 2.0, double k = kPi) {
  auto g = std::make_shared<const Grid>(build_halfspace_grid(1.0, h));
  Trajectory traj;
  traj.grid = g;
  traj.t0 = t0;
  traj.tau = tau;
  int M = static_cast<int>(std::lround(span / tau));
  traj.stamps.assign(M + 1, Vec(g->nnode(), 0.0));
  for (int m = 0; m <= M; ++m)
    for (int id = 0; id < g->nnode(); ++id)
      traj.stamps[m][id] = mode(g->x1[id], g->x2[id], t0 + m * tau, k);
  return traj;
}

// Stamps holding an arbitrary function of (x1, xn, t) on a given grid.
template <class F>
Trajectory sampled_traj(std::shared_ptr<const Grid> g, double t0, double tau,
                        int M, F&& f) {
  Trajectory traj;
  traj.grid = g;
  traj.t0 = t0;
  traj.tau = tau;
  traj.stamps.assign(M + 1, Vec(g->nnode(), 0.0));
  for (int m = 0; m <= M; ++m)
    for (int id = 0; id < g->nnode(); ++id)
      traj.stamps[m][id] = f(g->x1[id], g->x2[id], t0 + m * tau);
  return traj;
}

// Boundary-diffusion run on the disk: v0 given on boundary nodes as cos-mode
// combination, a = 1, constant b, f = 0.
inline Trajectory disk_mode_traj(int n_r, int n_theta, double tau, int M,
                                 const std::vector<std::pair<int, double>>& modes,
                                 double b = 0.0) {
  auto g = std::make_shared<const Grid>(build_disk_grid(n_r, n_theta));
  LinearProblem pb;
  pb.b = ScalarField::constant(b);
  Vec v0(g->boundary_idx.size(), 0.0);
  for (std::size_t i = 0; i < v0.size(); ++i) {
    double th = g->th_of[g->boundary_idx[i]];
    for (auto& [k, c] : modes) v0[i] += c * std::cos(k * th);
  }
  return run_linear(g, pb, v0, 0.0, tau, M);
}

inline double sup_abs_diff(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace bdlab::test
