#include "bdlab/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace bdlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json check_json(const InequalityReport& r) {
  ordered_json j;
  j["id"] = r.id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["ratio_defined"] = r.ratio_defined;
  j["trivial"] = r.trivial;
  j["rho"] = r.rho;
  j["R"] = r.R;
  j["h"] = r.h;
  j["tau"] = r.tau;
  j["slope"] = r.slope;
  ordered_json extras = ordered_json::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  j["history"] = r.history;
  return j;
}

}  // namespace

std::string render_report_json(const ReportData& data) {
  ordered_json j;
  j["tool"] = kToolVersion;
  j["verb"] = data.verb;
  j["config"] = data.config_text;
  ordered_json checks = ordered_json::array();
  for (const auto& c : data.checks) checks.push_back(check_json(c));
  j["checks"] = checks;
  ordered_json decay = ordered_json::array();
  for (const auto& d : data.decay) {
    ordered_json row;
    row["k"] = d.k;
    row["b"] = d.b;
    row["rate"] = d.rate;
    row["target"] = d.target;
    row["rel_err"] = d.rel_err;
    decay.push_back(row);
  }
  j["decay"] = decay;
  ordered_json errors = ordered_json::array();
  for (const auto& e : data.errors) {
    ordered_json row;
    row["h"] = e.h;
    row["tau"] = e.tau;
    row["err"] = e.err;
    errors.push_back(row);
  }
  j["errors"] = errors;
  j["orders"] = data.orders;
  ordered_json scalars = ordered_json::object();
  for (const auto& [k, v] : data.scalars) scalars[k] = v;
  j["scalars"] = scalars;
  ordered_json timing = ordered_json::object();
  for (const auto& [k, v] : data.timing) timing[k] = v;
  j["timing"] = timing;
  ordered_json info = ordered_json::object();
  for (const auto& [k, v] : data.info) info[k] = v;
  j["info"] = info;
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& traj, const std::string& nodes,
                           int stride) {
  require(nodes == "boundary" || nodes == "all" || nodes == "none",
          "trajectory_csv: nodes must be boundary, all, or none");
  require(stride >= 1, "trajectory_csv: stride must be >= 1");
  std::string out = "t,x1,x2,on_boundary,value\n";
  if (nodes == "none") return out;
  const Grid& g = *traj.grid;
  std::vector<int> on_bnd(g.nnode(), 0);
  for (int i : g.boundary_idx) on_bnd[i] = 1;
  std::vector<int> keep;
  if (nodes == "boundary") {
    keep = g.boundary_idx;
  } else {
    keep.resize(g.nnode());
    for (int i = 0; i < g.nnode(); ++i) keep[i] = i;
  }
  char buf[128];
  int M = traj.M();
  for (int m = 0; m <= M; ++m) {
    if (m % stride != 0 && m != M) continue;
    double t = traj.time_of(m);
    for (int i : keep) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%.17g\n", t, g.x1[i],
                    g.x2[i], on_bnd[i], traj.stamps[m][i]);
      out += buf;
    }
  }
  return out;
}

}  // namespace bdlab
