#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "bdlab/verifier.hpp"

namespace bdlab {

enum class ProblemKind {
  linear_disk,
  linear_halfspace,
  nonlinear_disk,
  verification_suite,
};

std::string kind_name(ProblemKind kind);

// Experiment description parsed from line-oriented "key = value" text with
// [section] headers.  Every key has a documented default; emit_config echoes
// the complete resolved state so no default stays silent, and
// parse_config(emit_config(c)) == c.
struct ExperimentConfig {
  // [problem]
  ProblemKind kind = ProblemKind::linear_disk;
  std::uint64_t seed = 1;
  int depth = 1;               // refinement ladder depth (converge / verify)
  std::string out_dir = ".";
  // [grid]
  int n_r = 64;                // disk kinds
  int n_theta = 256;
  double R = 1.0;              // halfspace kind
  double h = 1.0 / 64;
  // [time]
  double tau = 1.0 / 128;
  double T = 1.0;
  double t0 = 0.0;
  // [coeffs] — closed-form descriptors (see Expr); exact may be empty.
  std::string a = "1";
  std::string b = "0";
  std::string f = "0";
  std::string u0 = "cos(theta)";
  std::string wall = "0";
  std::string exact;
  std::string phi = "zero";
  double Lambda = 4.0;
  double tol = 1e-10;
  // [nonlinear]
  double p = 2.0;
  double band_lo = 0.125;
  double band_hi = 8.0;
  double fp_tol = 1e-10;
  int max_iters = 60;
  std::string sigma_schedule = "1";
  // [verify]
  std::string checks = "all";
  double rho = 0.5;
  double R_outer = 1.0;
  double alpha = 0.5;
  double h_mode = 1.0 / 64;
  double tau_mode = 1.0 / 256;
  double h_decay = 1.0 / 64;
  double tau_decay = 1.0 / 64;
  double h_nonhom = 1.0 / 32;
  double tau_nonhom = 1.0 / 64;
  int n_r_disk = 64;
  int n_theta_disk = 256;
  double tau_disk = 1.0 / 128;
  // [output]
  std::string csv_nodes = "boundary";  // boundary | all | none
  int csv_stride = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

// Parses and fully validates; throws Error naming the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical echo: every key present, numbers in shortest round-trip form.
std::string emit_config(const ExperimentConfig& cfg);

// Built-in default text per kind ("--config default").
std::string default_config_text(ProblemKind kind);

// Comma-separated sigma ladder; validated non-decreasing within [0, 1].
std::vector<double> parse_schedule(const std::string& text);

// "all" resolves to the full id set; otherwise a comma list of known ids.
std::vector<std::string> parse_check_list(const std::string& text);

SuiteConfig to_suite_config(const ExperimentConfig& cfg);

// Shortest decimal form that strtod round-trips to the same double.
std::string format_double(double v);

}  // namespace bdlab
