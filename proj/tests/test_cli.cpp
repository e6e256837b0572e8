#include <cmath>
#include <cstdlib>
#include <sstream>

#include "bdlab/common.hpp"
#include "bdlab/config.hpp"
#include "bdlab/expr.hpp"
#include "bdlab/report.hpp"
#include "doctest.h"

using namespace bdlab;

TEST_CASE("expressions: arithmetic, precedence, builtins") {
  CHECK(Expr::parse("2+3*4").eval(0, 0, 0) == 14.0);
  CHECK(Expr::parse("2*3^2").eval(0, 0, 0) == 18.0);
  CHECK(Expr::parse("-3^2").eval(0, 0, 0) == -9.0);
  CHECK(Expr::parse("2^3^2").eval(0, 0, 0) == 512.0);  // right associative
  CHECK(Expr::parse("(2+3)*4").eval(0, 0, 0) == 20.0);
  CHECK(Expr::parse("7/2/2").eval(0, 0, 0) == 1.75);
  CHECK(Expr::parse("pow(2,10)").eval(0, 0, 0) == 1024.0);
  CHECK(Expr::parse("pi").eval(0, 0, 0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(Expr::parse("x1 - xn + 2*t").eval(5, 3, 1) == 4.0);
  CHECK(Expr::parse("x1 - x2").eval(5, 3, 0) == 2.0);  // x2 aliases xn
  CHECK(Expr::parse("sin(pi/2) + cos(0)").eval(0, 0, 0) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(Expr::parse("exp(-pi*xn)*cos(pi*x1)").eval(1, 0, 0) ==
        doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(Expr::parse("sqrt(abs(-9))").eval(0, 0, 0) == 3.0);
  CHECK(Expr::parse("log(exp(2))").eval(0, 0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  // polar helpers: theta = atan2(x2, x1), r = hypot(x1, x2)
  CHECK(Expr::parse("theta").eval(0, 1, 0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(Expr::parse("r").eval(3, 4, 0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("expressions: constant detection and error texts") {
  CHECK(Expr::parse("2*pi").is_constant());
  CHECK(Expr::parse("sin(1)+2").is_constant());
  CHECK(!Expr::parse("x1").is_constant());
  CHECK(!Expr::parse("cos(theta)").is_constant());
  ScalarField f = Expr::parse("2*pi").field();
  CHECK(f.is_const);
  CHECK(f.value == doctest::Approx(2 * kPi).epsilon(1e-15));

  CHECK_THROWS_WITH_AS(Expr::parse("x3"), doctest::Contains("unknown identifier"),
                       Error);
  CHECK_THROWS_WITH_AS(Expr::parse("foo(2)"), doctest::Contains("unknown function"),
                       Error);
  CHECK_THROWS_WITH_AS(Expr::parse("(2+3"), doctest::Contains("expected ')'"), Error);
  CHECK_THROWS_WITH_AS(Expr::parse("2+*3"), doctest::Contains("expression"), Error);
  CHECK_THROWS_WITH_AS(Expr::parse("2 3"), doctest::Contains("trailing"), Error);
}

TEST_CASE("config: defaults fill a minimal file") {
  ExperimentConfig cfg = parse_config("[problem]\nkind = linear-disk\n");
  CHECK(cfg.kind == ProblemKind::linear_disk);
  CHECK(cfg.n_r == 64);
  CHECK(cfg.n_theta == 256);
  CHECK(cfg.tau == 1.0 / 128);
  CHECK(cfg.T == 1.0);
  CHECK(cfg.tol == 1e-10);
  CHECK(cfg.Lambda == 4.0);
  CHECK(cfg.u0 == "cos(theta)");
  CHECK(cfg.csv_nodes == "boundary");
  // empty input = all defaults
  CHECK(parse_config("") == ExperimentConfig{});
}

TEST_CASE("config: canonical emit round-trips on all shipped kinds") {
  for (ProblemKind kind : {ProblemKind::linear_disk, ProblemKind::linear_halfspace,
                           ProblemKind::nonlinear_disk, ProblemKind::verification_suite}) {
    ExperimentConfig cfg = parse_config(default_config_text(kind));
    std::string text = emit_config(cfg);
    ExperimentConfig again = parse_config(text);
    CHECK(again == cfg);
    CHECK(emit_config(again) == text);
  }
}

TEST_CASE("config: validation errors name the key") {
  CHECK_THROWS_WITH_AS(parse_config("[coeffs]\nLambda = 0.5\n"),
                       doctest::Contains("Lambda > 1"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[grid]\nnr = 3\n"),
                       doctest::Contains("unknown key 'grid.nr'"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[gird]\nn_r = 3\n"),
                       doctest::Contains("unknown section"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[grid]\nn_r = many\n"),
                       doctest::Contains("expects an integer"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[time]\ntau = soon\n"),
                       doctest::Contains("expects a number"), Error);
  CHECK_THROWS_WITH_AS(parse_config("n_r = 4\n"),
                       doctest::Contains("before any [section]"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[problem]\nkind = cubic-disk\n"),
                       doctest::Contains("problem.kind"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[time]\ntau = 0.3\nT = 1.0\n"),
                       doctest::Contains("multiple of tau"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[coeffs]\ntol = 0.001\n"),
                       doctest::Contains("tol"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[nonlinear]\nsigma_schedule = 0.5,0.2\n"),
                       doctest::Contains("sigma_schedule"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[coeffs]\nf = x1 +* 2\n"),
                       doctest::Contains("coeffs.f"), Error);
}

TEST_CASE("config: check lists") {
  CHECK(parse_check_list("all") == default_check_ids());
  CHECK(parse_check_list("none").empty());
  std::vector<std::string> two = parse_check_list("COMPAT_E,CACC1,CACC1");
  CHECK(two == std::vector<std::string>{"CACC1", "COMPAT_E"});
  CHECK_THROWS_WITH_AS(parse_check_list("CACC9"),
                       doctest::Contains("unknown check id"), Error);
  CHECK_THROWS_WITH_AS(parse_check_list(""), doctest::Contains("empty check list"),
                       Error);
}

TEST_CASE("config: kind names round-trip") {
  CHECK(kind_name(ProblemKind::linear_disk) == std::string("linear-disk"));
  CHECK(kind_name(ProblemKind::linear_halfspace) == std::string("linear-halfspace"));
  CHECK(kind_name(ProblemKind::nonlinear_disk) == std::string("nonlinear-disk"));
  CHECK(kind_name(ProblemKind::verification_suite) ==
        std::string("verification-suite"));
}

TEST_CASE("report: rendering is a pure function of its data") {
  ReportData data;
  data.verb = "verify";
  data.config_text = "[problem]\nkind = verification-suite\n";
  InequalityReport rep;
  rep.id = "CACC1";
  rep.lhs = 1.0;
  rep.rhs = 4.0;
  rep.ratio = 0.25;
  rep.rho = 0.5;
  rep.R = 1.0;
  rep.extras["E_R"] = 2.0;
  rep.history = {0.25};
  data.checks.push_back(rep);
  data.scalars.emplace_back("sup_err", 1e-3);
  data.timing.emplace_back("time_steps", 128.0);
  data.info.emplace_back("grid", "halfspace");

  std::string a = render_report_json(data);
  std::string b = render_report_json(data);
  CHECK(a == b);
  CHECK(a.find("\"tool\": \"bdlab 1.0.0\"") != std::string::npos);
  CHECK(a.find("\"CACC1\"") != std::string::npos);
  CHECK(a.find("\"time_steps\": 128.0") != std::string::npos);
  CHECK(a.back() == '\n');
}

TEST_CASE("report: trajectory csv layout and stride") {
  auto g = std::make_shared<const Grid>(build_disk_grid(2, 4));
  Trajectory traj;
  traj.grid = g;
  traj.t0 = 0.0;
  traj.tau = 0.25;
  traj.stamps.assign(5, Vec(g->nnode(), 1.0));
  std::string csv = trajectory_csv(traj, "boundary", 2);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x1,x2,on_boundary,value");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  // stamps kept: m = 0, 2, 4 -> 3 stamps x 4 boundary nodes
  CHECK(rows == 12);

  std::string all = trajectory_csv(traj, "all", 1);
  std::istringstream ia(all);
  std::getline(ia, line);
  rows = 0;
  while (std::getline(ia, line)) ++rows;
  CHECK(rows == 5u * g->nnode());

  // %.17g values round-trip through strtod
  Trajectory tiny = traj;
  tiny.stamps.assign(1, Vec(g->nnode(), 0.1));
  std::string one = trajectory_csv(tiny, "boundary", 1);
  std::istringstream io(one);
  std::getline(io, line);  // header
  std::getline(io, line);
  std::size_t last = line.rfind(',');
  double v = std::strtod(line.c_str() + last + 1, nullptr);
  CHECK(v == 0.1);
}
