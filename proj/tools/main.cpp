// bdlab: config-driven experiments on the boundary diffusion equation.
// Verbs: solve (run one problem), verify (inequality suite), converge
// (error-vs-resolution ladder).  All state lives in the config; reports are
// byte-deterministic, wall time goes to stderr.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "bdlab/chart.hpp"
#include "bdlab/config.hpp"
#include "bdlab/expr.hpp"
#include "bdlab/nonlinear.hpp"
#include "bdlab/report.hpp"
#include "bdlab/verifier.hpp"

namespace bdlab {
namespace {

ExperimentConfig load_config(const std::string& verb, const std::string& path) {
  if (path == "default") {
    ProblemKind kind = ProblemKind::linear_disk;
    if (verb == "verify") kind = ProblemKind::verification_suite;
    if (verb == "converge") kind = ProblemKind::linear_halfspace;
    return parse_config(default_config_text(kind));
  }
  return parse_config_file(path);
}

int steps_of(const ExperimentConfig& cfg, double tau) {
  return static_cast<int>(std::floor(cfg.T / tau + 0.5));
}

Vec boundary_data(const Grid& g, const Expr& e, double t) {
  const std::vector<int>& idx =
      g.kind == GridKind::disk ? g.boundary_idx : g.dyn_idx;
  Vec out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out[i] = e.eval(g.x1[idx[i]], g.x2[idx[i]], t);
  return out;
}

double sup_err_boundary(const Trajectory& traj, const Expr& exact) {
  const Grid& g = *traj.grid;
  double err = 0.0;
  for (int m = 0; m <= traj.M(); ++m) {
    double t = traj.time_of(m);
    for (int id : g.boundary_idx)
      err = std::max(err, std::abs(traj.stamps[m][id] - exact.eval(g.x1[id], g.x2[id], t)));
  }
  return err;
}

// Sup error on the inner half-chart |x1| <= R/2, xn <= R/2 (halfspace).
double sup_err_inner(const Trajectory& traj, const Expr& exact) {
  const Grid& g = *traj.grid;
  double half = g.R / 2 + 1e-12;
  double err = 0.0;
  for (int m = 0; m <= traj.M(); ++m) {
    double t = traj.time_of(m);
    for (int id = 0; id < g.nnode(); ++id) {
      if (std::abs(g.x1[id]) > half || g.x2[id] > half) continue;
      err = std::max(err, std::abs(traj.stamps[m][id] - exact.eval(g.x1[id], g.x2[id], t)));
    }
  }
  return err;
}

LinearProblem linear_problem(const ExperimentConfig& cfg, const FlattenedChart* chart) {
  LinearProblem pb;
  pb.a = Expr::parse(cfg.a).field();
  pb.b = Expr::parse(cfg.b).field();
  pb.f = Expr::parse(cfg.f).field();
  pb.wall = Expr::parse(cfg.wall).field();
  pb.chart = chart;
  pb.Lambda = cfg.Lambda;
  pb.tol = cfg.tol;
  return pb;
}

Trajectory solve_linear_disk(const ExperimentConfig& cfg, int n_r, int n_theta,
                             double tau) {
  auto g = std::make_shared<const Grid>(build_disk_grid(n_r, n_theta));
  LinearProblem pb = linear_problem(cfg, nullptr);
  Vec u0 = boundary_data(*g, Expr::parse(cfg.u0), cfg.t0);
  return run_linear(g, pb, u0, cfg.t0, tau, steps_of(cfg, tau));
}

Trajectory solve_linear_halfspace(const ExperimentConfig& cfg, double h, double tau,
                                  FlattenedChart& chart_storage) {
  auto g = std::make_shared<const Grid>(build_halfspace_grid(cfg.R, h));
  PhiSpec spec = PhiSpec::parse(cfg.phi);
  const FlattenedChart* chart = nullptr;
  if (spec.kind != PhiSpec::Kind::zero) {
    chart_storage = build_chart(spec, *g, cfg.Lambda);
    chart = &chart_storage;
  }
  LinearProblem pb = linear_problem(cfg, chart);
  Vec u0 = boundary_data(*g, Expr::parse(cfg.u0), cfg.t0);
  return run_linear(g, pb, u0, cfg.t0, tau, steps_of(cfg, tau));
}

NonlinearResult solve_nonlinear(const ExperimentConfig& cfg, int n_r, int n_theta,
                                double tau) {
  auto g = std::make_shared<const Grid>(build_disk_grid(n_r, n_theta));
  NonlinearConfig nc;
  nc.p = cfg.p;
  nc.band_lo = cfg.band_lo;
  nc.band_hi = cfg.band_hi;
  nc.fp_tol = cfg.fp_tol;
  nc.max_iters = cfg.max_iters;
  nc.sigma_schedule = parse_schedule(cfg.sigma_schedule);
  nc.T = cfg.T;
  nc.tau = tau;
  nc.tol = cfg.tol;
  Vec u0 = boundary_data(*g, Expr::parse(cfg.u0), 0.0);
  return sigma_continuation(g, u0, nc, Expr::parse(cfg.b).field(),
                            Expr::parse(cfg.f).field());
}

// Relative l2 error of the discrete DtN symbol against k on cos(k theta).
double dtn_mode_error(const Operator& op, int k, double tol) {
  const Grid& g = *op.grid;
  Vec gb(g.boundary_idx.size());
  for (std::size_t j = 0; j < gb.size(); ++j) {
    int id = g.boundary_idx[j];
    gb[j] = std::cos(k * g.th_of[id]);
  }
  Vec w = dtn_apply(op, gb, tol);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < gb.size(); ++j) {
    double target = k * gb[j];
    num += (w[j] - target) * (w[j] - target);
    den += target * target;
  }
  return std::sqrt(num / den);
}

void add_decay_table(ReportData& rep, const Trajectory& traj,
                     const ExperimentConfig& cfg) {
  Expr b = Expr::parse(cfg.b);
  if (!b.is_constant()) {
    rep.info.emplace_back("decay_table", "omitted: b is not constant");
    return;
  }
  double bval = b.eval(0, 0, 0);
  const Grid& g = *traj.grid;
  double scale = 0.0;
  Vec c0(5, 0.0);
  for (int k = 1; k <= 4; ++k) {
    c0[k] = std::abs(mode_coefficient(g, traj.stamps[0], k));
    scale += c0[k];
  }
  for (int k = 1; k <= 4; ++k) {
    if (c0[k] <= 1e-9 * scale) continue;  // mode absent from the data
    DecayRow row;
    row.k = k;
    row.b = bval;
    row.rate = fit_decay_rate(traj, k);
    row.target = k + bval;
    row.rel_err = std::abs(row.rate - row.target) / row.target;
    rep.decay.push_back(row);
  }
}

struct SolveOutput {
  ReportData rep;
  Trajectory traj;
  bool have_traj = false;
};

SolveOutput run_solve(const ExperimentConfig& cfg) {
  SolveOutput out;
  ReportData& rep = out.rep;
  rep.verb = "solve";
  rep.info.emplace_back("kind", kind_name(cfg.kind));
  switch (cfg.kind) {
    case ProblemKind::linear_disk: {
      out.traj = solve_linear_disk(cfg, cfg.n_r, cfg.n_theta, cfg.tau);
      out.have_traj = true;
      add_decay_table(rep, out.traj, cfg);
      if (!cfg.exact.empty())
        rep.scalars.emplace_back("sup_err_boundary",
                                 sup_err_boundary(out.traj, Expr::parse(cfg.exact)));
      break;
    }
    case ProblemKind::linear_halfspace: {
      FlattenedChart chart;
      out.traj = solve_linear_halfspace(cfg, cfg.h, cfg.tau, chart);
      out.have_traj = true;
      if (!cfg.exact.empty())
        rep.scalars.emplace_back("sup_err_inner",
                                 sup_err_inner(out.traj, Expr::parse(cfg.exact)));
      break;
    }
    case ProblemKind::nonlinear_disk: {
      NonlinearResult res = solve_nonlinear(cfg, cfg.n_r, cfg.n_theta, cfg.tau);
      out.traj = res.traj;
      out.have_traj = true;
      PositivityReport pos = positivity_bounds(res.traj, cfg.band_lo, cfg.band_hi);
      rep.scalars.emplace_back("fp_iterations", res.iters);
      rep.scalars.emplace_back("fp_final_diff",
                               res.diffs.empty() ? 0.0 : res.diffs.back());
      rep.scalars.emplace_back("min_u", pos.min_u);
      rep.scalars.emplace_back("max_u", pos.max_u);
      rep.scalars.emplace_back("band_violation", pos.violation ? 1.0 : 0.0);
      if (!cfg.exact.empty())
        rep.scalars.emplace_back("sup_err_boundary",
                                 sup_err_boundary(res.traj, Expr::parse(cfg.exact)));
      rep.timing.emplace_back("fp_iterations", res.iters);
      break;
    }
    case ProblemKind::verification_suite: {
      rep.checks = run_verification_suite(to_suite_config(cfg));
      rep.timing.emplace_back("checks", static_cast<double>(rep.checks.size()));
      return out;
    }
  }
  rep.timing.emplace_back("time_steps", out.traj.M());
  rep.scalars.emplace_back("nodes", out.traj.grid->nnode());
  if (cfg.csv_nodes != "none") rep.info.emplace_back("trajectory", "trajectory.csv");
  return out;
}

ReportData run_verify(const ExperimentConfig& cfg) {
  require(cfg.kind == ProblemKind::verification_suite,
          "verify: config kind must be verification-suite (got '" +
              kind_name(cfg.kind) + "')");
  ReportData rep;
  rep.verb = "verify";
  rep.info.emplace_back("kind", kind_name(cfg.kind));
  rep.checks = run_verification_suite(to_suite_config(cfg));
  rep.timing.emplace_back("checks", static_cast<double>(rep.checks.size()));
  return rep;
}

ReportData run_converge(const ExperimentConfig& cfg) {
  require(cfg.depth >= 2, "converge: insufficient depth (need depth >= 2, got " +
                              std::to_string(cfg.depth) + ")");
  ReportData rep;
  rep.verb = "converge";
  rep.info.emplace_back("kind", kind_name(cfg.kind));
  switch (cfg.kind) {
    case ProblemKind::linear_halfspace: {
      require(!cfg.exact.empty(),
              "converge: halfspace order study needs key 'coeffs.exact'");
      Expr exact = Expr::parse(cfg.exact);
      for (int l = 0; l < cfg.depth; ++l) {
        double h = cfg.h / (1 << l);
        double tau = cfg.tau / (1 << (2 * l));  // tau ~ h^2
        FlattenedChart chart;
        Trajectory traj = solve_linear_halfspace(cfg, h, tau, chart);
        rep.errors.push_back({h, tau, sup_err_inner(traj, exact)});
      }
      break;
    }
    case ProblemKind::linear_disk: {
      // DtN mode study: relative symbol error, worst mode k = 1..4.
      for (int l = 0; l < cfg.depth; ++l) {
        int n_r = cfg.n_r * (1 << l), n_theta = cfg.n_theta * (1 << l);
        Grid g = build_disk_grid(n_r, n_theta);
        Operator op = assemble(g, ScalarField::constant(1.0), 0.0, cfg.Lambda);
        double err = 0.0;
        for (int k = 1; k <= 4; ++k)
          err = std::max(err, dtn_mode_error(op, k, cfg.tol));
        rep.errors.push_back({g.dr, 0.0, err});
      }
      break;
    }
    case ProblemKind::nonlinear_disk: {
      require(!cfg.exact.empty(),
              "converge: nonlinear study needs key 'coeffs.exact'");
      Expr exact = Expr::parse(cfg.exact);
      for (int l = 0; l < cfg.depth; ++l) {
        NonlinearResult res = solve_nonlinear(cfg, cfg.n_r * (1 << l),
                                              cfg.n_theta * (1 << l),
                                              cfg.tau / (1 << l));
        rep.errors.push_back({1.0 / (cfg.n_r * (1 << l)), cfg.tau / (1 << l),
                              sup_err_boundary(res.traj, exact)});
      }
      break;
    }
    case ProblemKind::verification_suite:
      fail("converge: config kind must be a solvable problem (got "
           "'verification-suite')");
  }
  for (std::size_t l = 0; l + 1 < rep.errors.size(); ++l)
    rep.orders.push_back(std::log2(rep.errors[l].err / rep.errors[l + 1].err));
  Vec lh, le;
  for (const auto& row : rep.errors) {
    lh.push_back(std::log(row.h));
    le.push_back(std::log(row.err));
  }
  rep.scalars.emplace_back("fitted_order", polyfit_slope(lh, le));
  rep.timing.emplace_back("levels", static_cast<double>(rep.errors.size()));
  return rep;
}

int run(const std::string& verb, const std::string& config_path,
        const std::string& out_flag) {
  auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg = load_config(verb, config_path);

  ReportData rep;
  std::string csv;
  bool have_traj = false;
  if (verb == "solve") {
    SolveOutput out = run_solve(cfg);
    rep = std::move(out.rep);
    if (out.have_traj && cfg.csv_nodes != "none") {
      csv = trajectory_csv(out.traj, cfg.csv_nodes, cfg.csv_stride);
      have_traj = true;
    }
  } else if (verb == "verify") {
    rep = run_verify(cfg);
  } else {
    rep = run_converge(cfg);
  }
  rep.config_text = emit_config(cfg);
  std::string json = render_report_json(rep);

  // All computation succeeded; only now touch the filesystem.
  std::filesystem::path out_dir = out_flag.empty() ? cfg.out_dir : out_flag;
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "report.json", std::ios::binary);
    out << json;
    require(out.good(), "cannot write " + (out_dir / "report.json").string());
  }
  if (have_traj) {
    std::ofstream out(out_dir / "trajectory.csv", std::ios::binary);
    out << csv;
    require(out.good(), "cannot write " + (out_dir / "trajectory.csv").string());
  }

  auto ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::fprintf(stderr, "[bdlab] %s: wrote %s (%.0f ms)\n", verb.c_str(),
               (out_dir / "report.json").string().c_str(), ms);
  return 0;
}

}  // namespace
}  // namespace bdlab

int main(int argc, char** argv) {
  CLI::App app{"bdlab: boundary diffusion equation laboratory"};
  app.set_version_flag("--version", bdlab::kToolVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir;
  const char* kinds[] = {"solve", "verify", "converge"};
  const char* blurbs[] = {"run one configured problem",
                          "run the inequality verification suite",
                          "run an error-vs-resolution ladder"};
  for (int i = 0; i < 3; ++i) {
    CLI::App* sub = app.add_subcommand(kinds[i], blurbs[i]);
    sub->add_option("--config", config_path,
                    "config file path, or 'default' for the built-in config")
        ->required();
    sub->add_option("--out", out_dir, "output directory (default: config out_dir)");
  }

  CLI11_PARSE(app, argc, argv);
  std::string verb = app.get_subcommands().front()->get_name();
  try {
    return bdlab::run(verb, config_path, out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
