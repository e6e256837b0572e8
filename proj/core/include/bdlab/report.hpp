#pragma once
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bdlab/evolution.hpp"
#include "bdlab/verifier.hpp"

namespace bdlab {

inline constexpr const char* kToolVersion = "bdlab 1.0.0";

// One row of an error-vs-resolution table.
struct ErrorRow {
  double h = 0.0, tau = 0.0, err = 0.0;
};

// One row of the mode-decay table emitted by linear disk runs.
struct DecayRow {
  int k = 0;
  double b = 0.0, rate = 0.0, target = 0.0, rel_err = 0.0;
};

// Everything a run persists.  Rendered to JSON with insertion-ordered keys
// and shortest round-trip numbers, so identical data gives identical bytes.
// `timing` holds deterministic effort counters (step / iteration counts);
// wall-clock time goes to stderr only, keeping reports reproducible.
struct ReportData {
  std::string verb;
  std::string config_text;
  std::vector<InequalityReport> checks;
  std::vector<DecayRow> decay;
  std::vector<ErrorRow> errors;
  Vec orders;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, double>> timing;
  std::vector<std::pair<std::string, std::string>> info;
};

std::string render_report_json(const ReportData& data);

// CSV trajectory dump: header "t,x1,x2,on_boundary,value", one row per
// (stamp, node), %.17g values.  `nodes` selects boundary | all | none;
// `stride` keeps every stride-th stamp (stamp 0 and the final stamp always).
std::string trajectory_csv(const Trajectory& traj, const std::string& nodes,
                           int stride);

}  // namespace bdlab
