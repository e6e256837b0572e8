#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <memory>

#include "bdlab/elliptic.hpp"
#include "bdlab/evolution.hpp"
#include "bdlab/grid.hpp"
#include "bdlab/norms.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

double mode(double x1, double xn) {
  return std::exp(-kPi * xn) * std::cos(kPi * x1);
}

// grid.n encodes 1/h for halfspace benches, n_r for disk benches.

void BM_AssembleHalfspace(benchmark::State& st) {
  bdlab::Grid g = bdlab::build_halfspace_grid(1.0, 1.0 / st.range(0));
  bdlab::ScalarField a = bdlab::ScalarField::of([](double x1, double, double t) {
    return 1.0 + 0.25 * std::sin(x1) * std::cos(t);
  });
  for (auto _ : st) {
    bdlab::Operator op = bdlab::assemble(g, a, 0.0, 4.0);
    benchmark::DoNotOptimize(op.A.vals.data());
  }
  st.SetItemsProcessed(st.iterations() * g.nnode());
}
BENCHMARK(BM_AssembleHalfspace)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_DirichletSolve(benchmark::State& st) {
  bdlab::Grid g = bdlab::build_halfspace_grid(1.0, 1.0 / st.range(0));
  bdlab::Operator op = bdlab::assemble(g, bdlab::ScalarField::constant(1.0), 0.0, 4.0);
  bdlab::Vec gb(g.dyn_idx.size());
  for (std::size_t i = 0; i < gb.size(); ++i) gb[i] = mode(g.x1[g.dyn_idx[i]], 0.0);
  for (auto _ : st) {
    bdlab::Vec u = bdlab::solve_dirichlet(op, gb);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_DirichletSolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_EulerStep(benchmark::State& st) {
  auto g = std::make_shared<const bdlab::Grid>(
      bdlab::build_halfspace_grid(1.0, 1.0 / st.range(0)));
  bdlab::LinearProblem pb;
  bdlab::Operator op = bdlab::assemble(*g, pb.a, 0.0, pb.Lambda);
  bdlab::Vec gb(g->dyn_idx.size());
  for (std::size_t i = 0; i < gb.size(); ++i) gb[i] = mode(g->x1[g->dyn_idx[i]], 0.0);
  bdlab::Vec u0 = bdlab::solve_dirichlet(op, gb);
  double tau = 0.5 / st.range(0);
  bdlab::LinearStepper stepper(g, pb, tau);
  for (auto _ : st) {
    bdlab::Vec u1 = stepper.step_linear(u0, tau);
    benchmark::DoNotOptimize(u1.data());
  }
}
BENCHMARK(BM_EulerStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DtnApply(benchmark::State& st) {
  int n_r = static_cast<int>(st.range(0));
  bdlab::Grid g = bdlab::build_disk_grid(n_r, 4 * n_r);
  bdlab::Operator op = bdlab::assemble(g, bdlab::ScalarField::constant(1.0), 0.0, 4.0);
  bdlab::Vec gb(g.boundary_idx.size());
  for (std::size_t i = 0; i < gb.size(); ++i)
    gb[i] = std::cos(2.0 * g.th_of[g.boundary_idx[i]]);
  for (auto _ : st) {
    bdlab::Vec q = bdlab::dtn_apply(op, gb);
    benchmark::DoNotOptimize(q.data());
  }
}
BENCHMARK(BM_DtnApply)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

// Above the exhaustive cap the seminorm samples 10M splitmix64 pairs.
void BM_HolderSubsampled(benchmark::State& st) {
  std::size_t n = static_cast<std::size_t>(st.range(0));
  bdlab::PointSet pts;
  pts.vals.resize(n);
  pts.x1.resize(n);
  pts.x2.resize(n);
  pts.t.resize(n);
  std::uint64_t s = 42;
  auto next = [&s] {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  };
  for (std::size_t i = 0; i < n; ++i) {
    pts.x1[i] = 2.0 * next() - 1.0;
    pts.x2[i] = next();
    pts.t[i] = -next();
    pts.vals[i] = mode(pts.x1[i], pts.x2[i]) * std::exp(kPi * pts.t[i]);
  }
  for (auto _ : st) {
    double h = bdlab::holder_seminorm(pts, 0.5);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_HolderSubsampled)->Arg(30000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
