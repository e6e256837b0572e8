#include "bdlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bdlab/chart.hpp"
#include "bdlab/expr.hpp"

namespace bdlab {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

double parse_number(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail("config: key '" + key + "' expects a number (got '" + value + "')");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    fail("config: key '" + key + "' expects an integer (got '" + value + "')");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0')
    fail("config: key '" + key + "' expects an unsigned integer (got '" + value + "')");
  return static_cast<std::uint64_t>(v);
}

void check_expr(const std::string& key, const std::string& text) {
  try {
    Expr::parse(text);
  } catch (const Error& e) {
    fail("config: key '" + key + "': " + e.what());
  }
}

void assign(ExperimentConfig& c, const std::string& section, const std::string& key,
            const std::string& value) {
  const std::string full = section + "." + key;
  if (section == "problem") {
    if (key == "kind") {
      if (value == "linear-disk")
        c.kind = ProblemKind::linear_disk;
      else if (value == "linear-halfspace")
        c.kind = ProblemKind::linear_halfspace;
      else if (value == "nonlinear-disk")
        c.kind = ProblemKind::nonlinear_disk;
      else if (value == "verification-suite")
        c.kind = ProblemKind::verification_suite;
      else
        fail("config: key 'problem.kind' must be one of linear-disk, "
             "linear-halfspace, nonlinear-disk, verification-suite (got '" +
             value + "')");
      return;
    }
    if (key == "seed") {
      c.seed = parse_u64(full, value);
      return;
    }
    if (key == "depth") {
      c.depth = parse_int(full, value);
      return;
    }
    if (key == "out_dir") {
      c.out_dir = value;
      return;
    }
  } else if (section == "grid") {
    if (key == "n_r") {
      c.n_r = parse_int(full, value);
      return;
    }
    if (key == "n_theta") {
      c.n_theta = parse_int(full, value);
      return;
    }
    if (key == "R") {
      c.R = parse_number(full, value);
      return;
    }
    if (key == "h") {
      c.h = parse_number(full, value);
      return;
    }
  } else if (section == "time") {
    if (key == "tau") {
      c.tau = parse_number(full, value);
      return;
    }
    if (key == "T") {
      c.T = parse_number(full, value);
      return;
    }
    if (key == "t0") {
      c.t0 = parse_number(full, value);
      return;
    }
  } else if (section == "coeffs") {
    if (key == "a") {
      c.a = value;
      return;
    }
    if (key == "b") {
      c.b = value;
      return;
    }
    if (key == "f") {
      c.f = value;
      return;
    }
    if (key == "u0") {
      c.u0 = value;
      return;
    }
    if (key == "wall") {
      c.wall = value;
      return;
    }
    if (key == "exact") {
      c.exact = value;
      return;
    }
    if (key == "phi") {
      c.phi = value;
      return;
    }
    if (key == "Lambda") {
      c.Lambda = parse_number(full, value);
      return;
    }
    if (key == "tol") {
      c.tol = parse_number(full, value);
      return;
    }
  } else if (section == "nonlinear") {
    if (key == "p") {
      c.p = parse_number(full, value);
      return;
    }
    if (key == "band_lo") {
      c.band_lo = parse_number(full, value);
      return;
    }
    if (key == "band_hi") {
      c.band_hi = parse_number(full, value);
      return;
    }
    if (key == "fp_tol") {
      c.fp_tol = parse_number(full, value);
      return;
    }
    if (key == "max_iters") {
      c.max_iters = parse_int(full, value);
      return;
    }
    if (key == "sigma_schedule") {
      c.sigma_schedule = value;
      return;
    }
  } else if (section == "verify") {
    if (key == "checks") {
      c.checks = value;
      return;
    }
    if (key == "rho") {
      c.rho = parse_number(full, value);
      return;
    }
    if (key == "R_outer") {
      c.R_outer = parse_number(full, value);
      return;
    }
    if (key == "alpha") {
      c.alpha = parse_number(full, value);
      return;
    }
    if (key == "h_mode") {
      c.h_mode = parse_number(full, value);
      return;
    }
    if (key == "tau_mode") {
      c.tau_mode = parse_number(full, value);
      return;
    }
    if (key == "h_decay") {
      c.h_decay = parse_number(full, value);
      return;
    }
    if (key == "tau_decay") {
      c.tau_decay = parse_number(full, value);
      return;
    }
    if (key == "h_nonhom") {
      c.h_nonhom = parse_number(full, value);
      return;
    }
    if (key == "tau_nonhom") {
      c.tau_nonhom = parse_number(full, value);
      return;
    }
    if (key == "n_r_disk") {
      c.n_r_disk = parse_int(full, value);
      return;
    }
    if (key == "n_theta_disk") {
      c.n_theta_disk = parse_int(full, value);
      return;
    }
    if (key == "tau_disk") {
      c.tau_disk = parse_number(full, value);
      return;
    }
  } else if (section == "output") {
    if (key == "csv_nodes") {
      c.csv_nodes = value;
      return;
    }
    if (key == "csv_stride") {
      c.csv_stride = parse_int(full, value);
      return;
    }
  } else {
    fail("config: unknown section '[" + section + "]'");
  }
  fail("config: unknown key '" + full + "'");
}

void validate(const ExperimentConfig& c) {
  require(c.depth >= 1, "config: key 'problem.depth' must be >= 1");
  require(c.n_r >= 2, "config: key 'grid.n_r' must be >= 2");
  require(c.n_theta >= 8, "config: key 'grid.n_theta' must be >= 8");
  require(c.R > 0.0, "config: key 'grid.R' must be positive");
  require(c.h > 0.0 && c.h < c.R, "config: key 'grid.h' must lie in (0, R)");
  require(c.tau > 0.0, "config: key 'time.tau' must be positive");
  require(c.T > 0.0, "config: key 'time.T' must be positive");
  double m = std::floor(c.T / c.tau + 0.5);
  require(m >= 1.0 && std::abs(m * c.tau - c.T) <= 1e-9 * std::max(1.0, c.T),
          "config: key 'time.T' must be a positive integer multiple of tau");
  check_expr("coeffs.a", c.a);
  check_expr("coeffs.b", c.b);
  check_expr("coeffs.f", c.f);
  check_expr("coeffs.u0", c.u0);
  check_expr("coeffs.wall", c.wall);
  if (!c.exact.empty()) check_expr("coeffs.exact", c.exact);
  try {
    PhiSpec::parse(c.phi);
  } catch (const Error& e) {
    fail("config: key 'coeffs.phi': " + std::string(e.what()));
  }
  if (!(c.Lambda > 1.0))
    fail("config: key 'coeffs.Lambda' = " + format_double(c.Lambda) +
         " violates the required bound Lambda > 1");
  require(c.tol > 0.0 && c.tol <= 1e-6,
          "config: key 'coeffs.tol' must lie in (0, 1e-6]");
  require(c.p > 0.0, "config: key 'nonlinear.p' must be positive");
  require(c.band_lo > 0.0 && c.band_lo < c.band_hi,
          "config: keys 'nonlinear.band_lo/band_hi' must satisfy 0 < lo < hi");
  require(c.fp_tol > 0.0, "config: key 'nonlinear.fp_tol' must be positive");
  require(c.max_iters >= 1, "config: key 'nonlinear.max_iters' must be >= 1");
  {
    std::vector<double> sched;
    try {
      sched = parse_schedule(c.sigma_schedule);
    } catch (const Error& e) {
      fail("config: key 'nonlinear.sigma_schedule': " + std::string(e.what()));
    }
    for (size_t i = 0; i < sched.size(); ++i) {
      require(sched[i] >= 0.0 && sched[i] <= 1.0,
              "config: key 'nonlinear.sigma_schedule' entries must lie in [0, 1]");
      require(i == 0 || sched[i - 1] <= sched[i],
              "config: key 'nonlinear.sigma_schedule' must be non-decreasing");
    }
  }
  try {
    parse_check_list(c.checks);
  } catch (const Error& e) {
    fail("config: key 'verify.checks': " + std::string(e.what()));
  }
  require(c.rho > 0.0, "config: key 'verify.rho' must be positive");
  require(c.R_outer > 0.0, "config: key 'verify.R_outer' must be positive");
  require(c.alpha > 0.0 && c.alpha < 1.0,
          "config: key 'verify.alpha' must lie in (0, 1)");
  require(c.h_mode > 0.0, "config: key 'verify.h_mode' must be positive");
  require(c.tau_mode > 0.0, "config: key 'verify.tau_mode' must be positive");
  require(c.h_decay > 0.0, "config: key 'verify.h_decay' must be positive");
  require(c.tau_decay > 0.0, "config: key 'verify.tau_decay' must be positive");
  require(c.h_nonhom > 0.0, "config: key 'verify.h_nonhom' must be positive");
  require(c.tau_nonhom > 0.0, "config: key 'verify.tau_nonhom' must be positive");
  require(c.n_r_disk >= 2, "config: key 'verify.n_r_disk' must be >= 2");
  require(c.n_theta_disk >= 8, "config: key 'verify.n_theta_disk' must be >= 8");
  require(c.tau_disk > 0.0, "config: key 'verify.tau_disk' must be positive");
  require(c.csv_nodes == "boundary" || c.csv_nodes == "all" || c.csv_nodes == "none",
          "config: key 'output.csv_nodes' must be boundary, all, or none");
  require(c.csv_stride >= 1, "config: key 'output.csv_stride' must be >= 1");
}

}  // namespace

std::string kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::linear_disk:
      return "linear-disk";
    case ProblemKind::linear_halfspace:
      return "linear-halfspace";
    case ProblemKind::nonlinear_disk:
      return "nonlinear-disk";
    case ProblemKind::verification_suite:
      return "verification-suite";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail("config: malformed section header on line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "grid" && section != "time" &&
          section != "coeffs" && section != "nonlinear" && section != "verify" &&
          section != "output")
        fail("config: unknown section '[" + section + "]'");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("config: expected 'key = value' on line " + std::to_string(lineno) +
           " (got '" + line + "')");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      fail("config: key '" + key + "' appears before any [section] header");
    if (key.empty()) fail("config: empty key on line " + std::to_string(lineno));
    assign(c, section, key, value);
  }
  validate(c);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "config: cannot open file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream o;
  auto num = [](double v) { return format_double(v); };
  o << "[problem]\n";
  o << "kind = " << kind_name(c.kind) << "\n";
  o << "seed = " << c.seed << "\n";
  o << "depth = " << c.depth << "\n";
  o << "out_dir = " << c.out_dir << "\n";
  o << "\n[grid]\n";
  o << "n_r = " << c.n_r << "\n";
  o << "n_theta = " << c.n_theta << "\n";
  o << "R = " << num(c.R) << "\n";
  o << "h = " << num(c.h) << "\n";
  o << "\n[time]\n";
  o << "tau = " << num(c.tau) << "\n";
  o << "T = " << num(c.T) << "\n";
  o << "t0 = " << num(c.t0) << "\n";
  o << "\n[coeffs]\n";
  o << "a = " << c.a << "\n";
  o << "b = " << c.b << "\n";
  o << "f = " << c.f << "\n";
  o << "u0 = " << c.u0 << "\n";
  o << "wall = " << c.wall << "\n";
  o << "exact = " << c.exact << "\n";
  o << "phi = " << c.phi << "\n";
  o << "Lambda = " << num(c.Lambda) << "\n";
  o << "tol = " << num(c.tol) << "\n";
  o << "\n[nonlinear]\n";
  o << "p = " << num(c.p) << "\n";
  o << "band_lo = " << num(c.band_lo) << "\n";
  o << "band_hi = " << num(c.band_hi) << "\n";
  o << "fp_tol = " << num(c.fp_tol) << "\n";
  o << "max_iters = " << c.max_iters << "\n";
  o << "sigma_schedule = " << c.sigma_schedule << "\n";
  o << "\n[verify]\n";
  o << "checks = " << c.checks << "\n";
  o << "rho = " << num(c.rho) << "\n";
  o << "R_outer = " << num(c.R_outer) << "\n";
  o << "alpha = " << num(c.alpha) << "\n";
  o << "h_mode = " << num(c.h_mode) << "\n";
  o << "tau_mode = " << num(c.tau_mode) << "\n";
  o << "h_decay = " << num(c.h_decay) << "\n";
  o << "tau_decay = " << num(c.tau_decay) << "\n";
  o << "h_nonhom = " << num(c.h_nonhom) << "\n";
  o << "tau_nonhom = " << num(c.tau_nonhom) << "\n";
  o << "n_r_disk = " << c.n_r_disk << "\n";
  o << "n_theta_disk = " << c.n_theta_disk << "\n";
  o << "tau_disk = " << num(c.tau_disk) << "\n";
  o << "\n[output]\n";
  o << "csv_nodes = " << c.csv_nodes << "\n";
  o << "csv_stride = " << c.csv_stride << "\n";
  return o.str();
}

std::string default_config_text(ProblemKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ProblemKind::linear_disk:
      // Three decaying modes so the report's mode-decay table has content.
      c.u0 = "cos(theta)+0.5*cos(2*theta)+0.25*cos(3*theta)";
      break;
    case ProblemKind::linear_halfspace:
      c.depth = 3;
      c.h = 0.125;
      c.tau = 0.125;  // tau = 8 h^2 at the coarsest rung
      c.T = 2.0;
      c.t0 = -1.0;
      c.u0 = "exp(-pi*xn)*cos(pi*x1)*exp(pi)";
      c.wall = "exp(-pi*xn)*cos(pi*x1)*exp(-pi*t)";
      c.exact = "exp(-pi*xn)*cos(pi*x1)*exp(-pi*t)";
      break;
    case ProblemKind::nonlinear_disk:
      c.depth = 2;
      c.n_r = 32;
      c.n_theta = 128;
      c.tau = 1.0 / 32;
      c.T = 0.25;
      c.b = "0.5";
      c.u0 = "2+0.5*x1";
      c.exact = "2+0.1*t+0.5*exp(-t)*x1";
      c.f = "2*(2+0.1*t+0.5*exp(-t)*x1)*(0.1-0.5*exp(-t)*x1)"
            "+0.5*exp(-t)*x1+0.5*(2+0.1*t+0.5*exp(-t)*x1)";
      break;
    case ProblemKind::verification_suite:
      break;
  }
  return emit_config(c);
}

std::vector<double> parse_schedule(const std::string& text) {
  auto parts = split_commas(text);
  require(!parts.empty() && !(parts.size() == 1 && parts[0].empty()),
          "empty schedule");
  std::vector<double> out;
  for (const auto& part : parts) {
    const char* begin = part.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') fail("malformed number '" + part + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> parse_check_list(const std::string& text) {
  if (trim(text) == "all") return default_check_ids();
  if (trim(text) == "none") return {};
  auto known = default_check_ids();
  std::vector<std::string> out;
  for (const auto& id : split_commas(text)) {
    require(std::find(known.begin(), known.end(), id) != known.end(),
            "unknown check id '" + id + "'");
    out.push_back(id);
  }
  require(!out.empty(), "empty check list (use 'none' to run nothing)");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SuiteConfig to_suite_config(const ExperimentConfig& c) {
  SuiteConfig s;
  s.checks = parse_check_list(c.checks);
  s.depth = c.depth;
  s.seed = c.seed;
  s.rho = c.rho;
  s.R = c.R_outer;
  s.alpha = c.alpha;
  s.h_mode = c.h_mode;
  s.tau_mode = c.tau_mode;
  s.h_decay = c.h_decay;
  s.tau_decay = c.tau_decay;
  s.h_nonhom = c.h_nonhom;
  s.tau_nonhom = c.tau_nonhom;
  s.nr_disk = c.n_r_disk;
  s.nth_disk = c.n_theta_disk;
  s.tau_disk = c.tau_disk;
  return s;
}

}  // namespace bdlab
