#include "bdlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "bdlab/resample.hpp"

namespace bdlab {

namespace {

void finish(InequalityReport& r) {
  if (r.rhs > 0.0) {
    r.ratio = r.lhs / r.rhs;
  } else if (r.lhs > 0.0) {
    r.ratio_defined = false;  // falsifies the estimate's form; tested never to occur
  } else {
    r.trivial = true;
    r.ratio = 0.0;
  }
}

Stamps squared(const Stamps& U) {
  Stamps out(U.size(), Vec(U[0].size()));
  for (std::size_t m = 0; m < U.size(); ++m)
    for (std::size_t i = 0; i < U[m].size(); ++i) out[m][i] = U[m][i] * U[m][i];
  return out;
}

Stamps grad_sq(const TrajFields& f) {
  Stamps out(f.d1.size(), Vec(f.d1[0].size()));
  for (std::size_t m = 0; m < out.size(); ++m)
    for (std::size_t i = 0; i < out[m].size(); ++i)
      out[m][i] = f.d1[m][i] * f.d1[m][i] + f.d2[m][i] * f.d2[m][i];
  return out;
}

Stamps energy_sq(const Stamps& U, const TrajFields& f, bool with_u) {
  Stamps out(U.size(), Vec(U[0].size()));
  for (std::size_t m = 0; m < out.size(); ++m)
    for (std::size_t i = 0; i < out[m].size(); ++i) {
      double s = f.d1[m][i] * f.d1[m][i] + f.d2[m][i] * f.d2[m][i] +
                 f.dt[m][i] * f.dt[m][i];
      if (with_u) s += U[m][i] * U[m][i];
      out[m][i] = s;
    }
  return out;
}

Cylinder carve(const Trajectory& traj, double rho, double tc) {
  return cylinder_nodes(*traj.grid, traj.t0, traj.tau, traj.M(), rho, tc);
}

void stamp_meta(InequalityReport& r, const Trajectory& traj) {
  r.h = traj.grid->h;
  r.tau = traj.tau;
}

double sup_slice(const Cylinder& c, const Stamps& F, bool boundary) {
  double s = 0.0;
  bool first = true;
  for (int m : c.t_idx) {
    double v = boundary ? c.bnd_slice(F, m) : c.int_slice(F, m);
    s = first ? v : std::max(s, v);
    first = false;
  }
  return s;
}

}  // namespace

InequalityReport check_caccioppoli_I(const Trajectory& traj, double rho, double R,
                                     double tc) {
  require(rho <= 0.9 * R + 1e-12,
          "CACC1: precondition rho <= 0.9 R violated (degenerate gap R - rho)");
  Cylinder cr = carve(traj, rho, tc), cR = carve(traj, R, tc);
  const TrajFields& f = traj.fields();
  Stamps U2 = squared(traj.stamps), G2 = grad_sq(f);
  InequalityReport rep;
  rep.id = "CACC1";
  rep.rho = rho;
  rep.R = R;
  stamp_meta(rep, traj);
  rep.lhs = sup_slice(cr, U2, true) + cr.int_integral(G2);
  rep.rhs = cR.int_integral(U2) / ((R - rho) * (R - rho)) +
            cR.bnd_integral(U2) / (R - rho);
  finish(rep);
  return rep;
}

InequalityReport check_caccioppoli_II(const Trajectory& traj, double rho, double R,
                                      double tc) {
  require(rho <= 0.9 * R + 1e-12,
          "CACC2: precondition rho <= 0.9 R violated (degenerate gap R - rho)");
  Cylinder cr = carve(traj, rho, tc), cR = carve(traj, R, tc);
  const TrajFields& f = traj.fields();
  Stamps G2 = grad_sq(f), T2 = squared(f.dt);
  InequalityReport rep;
  rep.id = "CACC2";
  rep.rho = rho;
  rep.R = R;
  stamp_meta(rep, traj);
  rep.lhs = sup_slice(cr, G2, false) + cr.bnd_integral(G2);
  rep.rhs = (cR.int_integral(G2) + cR.int_integral(T2)) / (R - rho);
  finish(rep);
  return rep;
}

InequalityReport check_caccioppoli_III(const Trajectory& traj, double rho, double R,
                                       double tc) {
  require(rho <= 7.0 * R / 8.0 + 1e-12,
          "CACC3: precondition rho <= 7R/8 violated (stated radius range)");
  Cylinder cr = carve(traj, rho, tc), cR = carve(traj, R, tc);
  const TrajFields& f = traj.fields();
  Stamps G2 = grad_sq(f), T2 = squared(f.dt);
  InequalityReport rep;
  rep.id = "CACC3";
  rep.rho = rho;
  rep.R = R;
  stamp_meta(rep, traj);
  rep.lhs = sup_slice(cr, G2, false) + cr.bnd_integral(T2);
  rep.rhs = (cR.int_integral(G2) + cR.int_integral(T2)) / (R - rho);
  finish(rep);
  return rep;
}

double oscillation_excess(const Trajectory& traj, double rho, double tc) {
  Cylinder c = carve(traj, rho, tc);
  double bm = c.bnd_measure(), im = c.int_measure();
  double ub = c.bnd_integral(traj.stamps) / bm;
  double ui = c.int_integral(traj.stamps) / im;
  double E = 0.0;
  std::size_t nn = traj.stamps[0].size();
  Stamps dev(traj.stamps.size(), Vec(nn));
  for (double mean : {ub, ui}) {
    for (std::size_t m = 0; m < traj.stamps.size(); ++m)
      for (std::size_t i = 0; i < nn; ++i) {
        double d = traj.stamps[m][i] - mean;
        dev[m][i] = d * d;
      }
    E += c.bnd_integral(dev) / bm + c.int_integral(dev) / im;
  }
  return E;
}

double homogeneous_decay_ratio(const Trajectory& traj, double rho, double R,
                               double tc) {
  double Er = oscillation_excess(traj, rho, tc);
  double ER = oscillation_excess(traj, R, tc);
  double scale = (rho / R) * (rho / R) * ER;
  require(scale > 0.0, "decay ratio: excess at scale R vanishes");
  return Er / scale;
}

InequalityReport check_iteration_decay(const Trajectory& traj, const Vec& ladder,
                                       double R, double tc) {
  require(ladder.size() >= 3, "ITER_DECAY: ladder too short (need >= 3 radii)");
  InequalityReport rep;
  rep.id = "ITER_DECAY";
  rep.R = R;
  rep.rho = ladder.front();
  stamp_meta(rep, traj);
  Vec Es(ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i)
    Es[i] = oscillation_excess(traj, ladder[i], tc);
  double ER = oscillation_excess(traj, R, tc);
  rep.extras["E_R"] = ER;
  bool all_zero = ER == 0.0;
  for (double e : Es) all_zero = all_zero && e == 0.0;
  if (all_zero) {
    rep.trivial = true;  // slope undefined on identically-zero excess
    return rep;
  }
  Vec lr(ladder.size()), le(ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    lr[i] = std::log(ladder[i]);
    le[i] = std::log(Es[i]);
  }
  rep.slope = polyfit_slope(lr, le);
  std::size_t worst = 0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    double r = homogeneous_decay_ratio(traj, ladder[i], R, tc);
    rep.extras["ratio_" + std::to_string(i)] = r;
    rep.extras["E_" + std::to_string(i)] = Es[i];
    if (r > worst_ratio) {
      worst_ratio = r;
      worst = i;
    }
  }
  rep.rho = ladder[worst];
  rep.lhs = Es[worst];
  rep.rhs = (ladder[worst] / R) * (ladder[worst] / R) * ER;
  finish(rep);
  return rep;
}

double polynomial_excess(const Trajectory& traj, double rho, double tc) {
  Cylinder c = carve(traj, rho, tc);
  const TrajFields& f = traj.fields();
  double out = 0.0;
  for (Region variant : {Region::boundary, Region::interior}) {
    Polynomial p = fit_polynomial(c, f, variant);
    out += h1_excess_sq(c, f, p, Region::boundary) +
           h1_excess_sq(c, f, p, Region::interior) / rho;
  }
  return out;
}

InequalityReport check_nonhom_iteration(const Trajectory& traj, double rho, double R,
                                        const NonhomSources& src, double tc) {
  require(rho <= R + 1e-12, "NONHOM_ITER: requires rho <= R");
  InequalityReport rep;
  rep.id = "NONHOM_ITER";
  rep.rho = rho;
  rep.R = R;
  stamp_meta(rep, traj);
  rep.lhs = polynomial_excess(traj, rho, tc);
  double exR = polynomial_excess(traj, R, tc);
  Cylinder cR = carve(traj, R, tc);
  double fosc = 0.0, fterms = 0.0;
  if (src.f) {
    double fmean = cR.bnd_integral(*src.f) / cR.bnd_measure();
    std::size_t nn = (*src.f)[0].size();
    Stamps dev(src.f->size(), Vec(nn));
    for (std::size_t m = 0; m < dev.size(); ++m)
      for (std::size_t i = 0; i < nn; ++i) {
        double d = (*src.f)[m][i] - fmean;
        dev[m][i] = d * d;
      }
    fosc = cR.bnd_integral(dev);
  }
  if (src.F1) fterms += cR.int_integral(squared(*src.F1)) / R;
  if (src.Fn) {
    Stamps Fn2 = squared(*src.Fn);
    fterms += cR.int_integral(Fn2) / R + cR.bnd_integral(Fn2);
  }
  double pw = std::pow(rho / R, traj.grid->n + 2.0);
  rep.rhs = pw * exR + fosc + fterms;
  rep.extras["excess_R"] = exR;
  rep.extras["f_osc"] = fosc;
  rep.extras["F_terms"] = fterms;
  if (!src.f && !src.F1 && !src.Fn)
    rep.extras["hom_decay_ratio"] = homogeneous_decay_ratio(traj, rho, R, tc);
  finish(rep);
  return rep;
}

InequalityReport check_schauder_local(const Trajectory& traj, double R, double alpha,
                                      const Stamps* fB, double tc,
                                      std::uint64_t seed) {
  const Grid& g = *traj.grid;
  Cylinder ch = carve(traj, R / 2, tc), cR = carve(traj, R, tc);
  const TrajFields& f = traj.fields();
  InequalityReport rep;
  rep.id = "SCHAUDER_LOCAL";
  rep.rho = R / 2;
  rep.R = R;
  stamp_meta(rep, traj);
  double lb = c1alpha_seminorm(g, ch, Region::boundary, traj.tau, traj.t0, f, alpha, seed);
  double li = c1alpha_seminorm(g, ch, Region::interior, traj.tau, traj.t0, f, alpha, seed);
  rep.lhs = lb * lb + li * li;
  Stamps S = energy_sq(traj.stamps, f, true);
  double h1b = cR.bnd_integral(S), h1i = cR.int_integral(S);
  PointSet pts = region_points(g, cR, Region::boundary, traj.tau, traj.t0, traj.stamps);
  double ca = holder_seminorm(pts, alpha, seed);
  double sup = 0.0;
  for (double v : pts.vals) sup = std::max(sup, std::abs(v));
  rep.rhs = h1b + h1i + sup * sup + ca * ca;
  if (fB) {
    PointSet fp = region_points(g, cR, Region::boundary, traj.tau, traj.t0, *fB);
    double caf = holder_seminorm(fp, alpha, seed);
    double supf = 0.0;
    for (double v : fp.vals) supf = std::max(supf, std::abs(v));
    rep.rhs += supf * supf + caf * caf;
    rep.extras["f_holder"] = caf;
    rep.extras["f_sup"] = supf;
  }
  rep.extras["lhs_bnd"] = lb;
  rep.extras["lhs_int"] = li;
  rep.extras["u_holder"] = ca;
  rep.extras["u_sup"] = sup;
  rep.extras["h1_bnd"] = h1b;
  rep.extras["h1_int"] = h1i;
  finish(rep);
  return rep;
}

InequalityReport check_morrey_estimate(const Trajectory& traj, double R, double theta,
                                       int depth, double tc) {
  require(depth >= 1, "MORREY_EST: ladder depth must be >= 1");
  const Grid& g = *traj.grid;
  InequalityReport rep;
  rep.id = "MORREY_EST";
  rep.rho = R / 2;
  rep.R = R;
  stamp_meta(rep, traj);
  Vec ladder_h(depth), ladder_R(depth);
  for (int k = 0; k < depth; ++k) {
    ladder_h[k] = (R / 2) * std::pow(2.0, -k);
    ladder_R[k] = R * std::pow(2.0, -k);
  }
  const TrajFields& f = traj.fields();
  double lhs = 0.0;
  for (const Stamps* F : {&f.d1, &f.d2, &f.dt}) {
    double mb = morrey_norm(g, traj.t0, traj.tau, traj.M(), *F, theta, ladder_h,
                            Region::boundary);
    double mi = morrey_norm(g, traj.t0, traj.tau, traj.M(), *F, theta, ladder_h,
                            Region::interior);
    lhs += mb * mb + mi * mi;
  }
  rep.lhs = lhs;
  Cylinder cR = carve(traj, R, tc);
  Stamps S = energy_sq(traj.stamps, f, false);
  double h1b = cR.bnd_integral(S), h1i = cR.int_integral(S);
  double mu = morrey_norm(g, traj.t0, traj.tau, traj.M(), traj.stamps, theta, ladder_R,
                          Region::boundary);
  rep.rhs = h1b + h1i / R + mu * mu;
  rep.extras["h1_bnd"] = h1b;
  rep.extras["h1_int"] = h1i;
  rep.extras["u_morrey"] = mu;
  finish(rep);
  return rep;
}

InequalityReport check_compat_energy(const Trajectory& traj, double rho, double tc) {
  CompatReport c = check_compatibility(traj, rho, tc);
  InequalityReport rep;
  rep.id = "COMPAT_E";
  rep.rho = rho;
  rep.R = rho;
  stamp_meta(rep, traj);
  rep.lhs = c.numerator;
  rep.rhs = c.denominator;
  finish(rep);
  return rep;
}

InequalityReport check_schauder_global(const Trajectory& disk_traj, int n_arcs,
                                       double Rc, double hc, double t0_chart,
                                       double alpha, std::uint64_t seed) {
  const Grid& g = *disk_traj.grid;
  require(g.kind == GridKind::disk, "SCHAUDER_GLOBAL: needs a disk trajectory");
  require(n_arcs >= 1 && Rc > 0.0 && Rc < 1.0,
          "SCHAUDER_GLOBAL: need n_arcs >= 1 and chart radius in (0,1)");
  require(std::asin(Rc) + 1e-12 >= kPi / n_arcs,
          "SCHAUDER_GLOBAL: chart cover incomplete (arc spacing exceeds chart width)");
  InequalityReport rep;
  rep.id = "SCHAUDER_GLOBAL";
  rep.rho = Rc / 2;
  rep.R = Rc;
  stamp_meta(rep, disk_traj);
  rep.extras["n_arcs"] = n_arcs;
  rep.extras["hc"] = hc;
  rep.extras["t0_chart"] = t0_chart;

  int nh = static_cast<int>(std::round((Rc / 2) / disk_traj.tau)) + 2;
  double lhs = 0.0;
  for (int k = 0; k < n_arcs; ++k) {
    double theta0 = 2.0 * kPi * k / n_arcs;
    Trajectory loc = chart_resample(disk_traj, theta0, t0_chart, Rc, hc, nh);
    const TrajFields& lf = loc.fields();
    Cylinder c = cylinder_nodes(*loc.grid, loc.t0, loc.tau, loc.M(), Rc / 2);
    double lb = c1alpha_seminorm(*loc.grid, c, Region::boundary, loc.tau, loc.t0, lf,
                                 alpha, seed);
    double li = c1alpha_seminorm(*loc.grid, c, Region::interior, loc.tau, loc.t0, lf,
                                 alpha, seed);
    lhs = std::max(lhs, lb * lb + li * li);
  }
  rep.lhs = lhs;

  Cylinder all = disk_all_nodes(g, disk_traj.tau, disk_traj.M());
  const TrajFields& f = disk_traj.fields();
  Stamps S = energy_sq(disk_traj.stamps, f, true);
  double h1b = all.bnd_integral(S), h1i = all.int_integral(S);
  PointSet pts =
      region_points(g, all, Region::boundary, disk_traj.tau, disk_traj.t0, disk_traj.stamps);
  double ca = holder_seminorm(pts, alpha, seed);
  double sup = 0.0;
  for (double v : pts.vals) sup = std::max(sup, std::abs(v));
  rep.rhs = h1b + h1i + sup * sup + ca * ca;
  rep.extras["h1_bnd"] = h1b;
  rep.extras["h1_int"] = h1i;
  rep.extras["trace_holder"] = ca;
  rep.extras["trace_sup"] = sup;
  finish(rep);
  return rep;
}

std::vector<std::string> default_check_ids() {
  return {"CACC1",      "CACC2",      "CACC3",           "COMPAT_E",       "ITER_DECAY",
          "MORREY_EST", "NONHOM_ITER", "SCHAUDER_GLOBAL", "SCHAUDER_LOCAL"};
}

namespace {

double mode_value(double x1, double xn, double t) {
  return std::exp(-kPi * xn) * std::cos(kPi * x1) * std::exp(-kPi * t);
}

Trajectory mode_problem(double h, double tau) {
  auto g = std::make_shared<const Grid>(build_halfspace_grid(1.0, h));
  LinearProblem pb;
  pb.wall = ScalarField::of([](double x1, double xn, double t) {
    return mode_value(x1, xn, t);
  });
  Vec u0(g->dyn_idx.size());
  for (std::size_t i = 0; i < g->dyn_idx.size(); ++i)
    u0[i] = mode_value(g->x1[g->dyn_idx[i]], 0.0, -1.0);
  int M = static_cast<int>(std::round(2.0 / tau));
  return run_linear(g, pb, u0, -1.0, tau, M);
}

// Manufactured nonhomogeneous driver u* = mode + 0.3 x1 t  (so f = 0.3 x1).
Trajectory nonhom_problem(double h, double tau) {
  auto g = std::make_shared<const Grid>(build_halfspace_grid(1.0, h));
  auto ustar = [](double x1, double xn, double t) {
    return mode_value(x1, xn, t) + 0.3 * x1 * t;
  };
  LinearProblem pb;
  pb.wall = ScalarField::of(ustar);
  pb.f = ScalarField::of([](double x1, double, double) { return 0.3 * x1; });
  Vec u0(g->dyn_idx.size());
  for (std::size_t i = 0; i < g->dyn_idx.size(); ++i)
    u0[i] = ustar(g->x1[g->dyn_idx[i]], 0.0, -1.0);
  int M = static_cast<int>(std::round(2.0 / tau));
  return run_linear(g, pb, u0, -1.0, tau, M);
}

Trajectory disk_problem(int nr, int nth, double tau) {
  auto g = std::make_shared<const Grid>(build_disk_grid(nr, nth));
  LinearProblem pb;
  Vec v0(g->boundary_idx.size());
  for (std::size_t i = 0; i < g->boundary_idx.size(); ++i)
    v0[i] = std::cos(g->th_of[g->boundary_idx[i]]);
  int M = static_cast<int>(std::round(1.0 / tau));
  return run_linear(g, pb, v0, 0.0, tau, M);
}

Stamps boundary_source_stamps(const Trajectory& traj) {
  const Grid& g = *traj.grid;
  Stamps F(traj.stamps.size(), Vec(g.nnode()));
  for (std::size_t m = 0; m < F.size(); ++m)
    for (int i = 0; i < g.nnode(); ++i) F[m][i] = 0.3 * g.x1[i];
  return F;
}

}  // namespace

std::vector<InequalityReport> run_verification_suite(const SuiteConfig& cfg) {
  require(cfg.depth >= 1, "verification suite: refinement depth must be >= 1");
  std::vector<std::string> ids = cfg.checks;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::string> known = default_check_ids();
  for (const std::string& id : ids)
    require(std::find(known.begin(), known.end(), id) != known.end(),
            "verification suite: unknown check id '" + id + "'");
  if (ids.empty()) return {};

  std::map<std::string, InequalityReport> final_reports;
  std::map<std::string, Vec> histories;
  for (int level = 0; level < cfg.depth; ++level) {
    double s = static_cast<double>(1 << level);
    std::optional<Trajectory> t_mode, t_decay, t_nonhom, t_disk;
    auto mode_traj = [&]() -> const Trajectory& {
      if (!t_mode) t_mode = mode_problem(cfg.h_mode / s, cfg.tau_mode / s);
      return *t_mode;
    };
    auto decay_traj = [&]() -> const Trajectory& {
      if (!t_decay) t_decay = mode_problem(cfg.h_decay / s, cfg.tau_decay / s);
      return *t_decay;
    };
    auto nonhom_traj = [&]() -> const Trajectory& {
      if (!t_nonhom) t_nonhom = nonhom_problem(cfg.h_nonhom / s, cfg.tau_nonhom / s);
      return *t_nonhom;
    };
    auto disk_traj = [&]() -> const Trajectory& {
      if (!t_disk)
        t_disk = disk_problem(cfg.nr_disk * (1 << level), cfg.nth_disk * (1 << level),
                              cfg.tau_disk / s);
      return *t_disk;
    };

    for (const std::string& id : ids) {
      InequalityReport r;
      if (id == "CACC1") {
        r = check_caccioppoli_I(mode_traj(), cfg.rho, cfg.R);
      } else if (id == "CACC2") {
        r = check_caccioppoli_II(mode_traj(), cfg.rho, cfg.R);
      } else if (id == "CACC3") {
        r = check_caccioppoli_III(mode_traj(), cfg.rho, cfg.R);
      } else if (id == "COMPAT_E") {
        r = check_compat_energy(mode_traj(), cfg.R);
      } else if (id == "ITER_DECAY") {
        Vec ladder = {cfg.R / 2, cfg.R / 4, cfg.R / 8};
        r = check_iteration_decay(decay_traj(), ladder, cfg.R);
      } else if (id == "MORREY_EST") {
        r = check_morrey_estimate(decay_traj(), cfg.R, 1.0, 4);
      } else if (id == "SCHAUDER_LOCAL") {
        r = check_schauder_local(decay_traj(), cfg.R, cfg.alpha, nullptr, 0.0, cfg.seed);
      } else if (id == "NONHOM_ITER") {
        Stamps fs = boundary_source_stamps(nonhom_traj());
        NonhomSources src;
        src.f = &fs;
        r = check_nonhom_iteration(nonhom_traj(), cfg.rho, cfg.R, src);
      } else {  // SCHAUDER_GLOBAL
        r = check_schauder_global(disk_traj(), 8, 0.4, 0.025, 0.5, cfg.alpha, cfg.seed);
      }
      histories[id].push_back(r.ratio);
      final_reports[id] = std::move(r);
    }
  }
  std::vector<InequalityReport> out;
  out.reserve(ids.size());
  for (auto& kv : final_reports) {
    kv.second.history = histories[kv.first];
    out.push_back(std::move(kv.second));
  }
  return out;  // std::map iteration is already sorted by id
}

}  // namespace bdlab
