#include "bdlab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace bdlab {

PointSet region_points(const Grid& g, const Cylinder& c, Region region, double tau,
                       double t0, const Stamps& F) {
  const std::vector<int>& nodes =
      (region == Region::boundary) ? c.bnd_nodes : c.int_nodes;
  PointSet p;
  std::size_t total = nodes.size() * c.t_idx.size();
  p.vals.reserve(total);
  p.x1.reserve(total);
  p.x2.reserve(total);
  p.t.reserve(total);
  for (int m : c.t_idx) {
    double t = t0 + m * tau;
    for (int id : nodes) {
      p.vals.push_back(F[m][id]);
      p.x1.push_back(g.x1[id]);
      p.x2.push_back(g.x2[id]);
      p.t.push_back(t);
    }
  }
  return p;
}

double holder_seminorm(const PointSet& pts, double alpha, std::uint64_t seed,
                       std::size_t cap, std::size_t npairs) {
  std::size_t n = pts.size();
  require(n >= 2, "holder_seminorm: need at least two points");
  double best = 0.0;
  if (n <= cap) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = std::max(std::hypot(pts.x1[i] - pts.x1[j], pts.x2[i] - pts.x2[j]),
                            std::abs(pts.t[i] - pts.t[j]));
        if (d <= 0.0) continue;
        double q = std::abs(pts.vals[i] - pts.vals[j]) / std::pow(d, alpha);
        if (q > best) best = q;
      }
    return best;
  }
  std::uint64_t state = seed;
  for (std::size_t k = 0; k < npairs; ++k) {
    std::size_t i = static_cast<std::size_t>(splitmix64(state) % n);
    std::size_t j = static_cast<std::size_t>(splitmix64(state) % n);
    if (i == j) continue;
    double d = std::max(std::hypot(pts.x1[i] - pts.x1[j], pts.x2[i] - pts.x2[j]),
                        std::abs(pts.t[i] - pts.t[j]));
    double q = std::abs(pts.vals[i] - pts.vals[j]) / std::pow(d, alpha);
    if (q > best) best = q;
  }
  return best;
}

double c1alpha_seminorm(const Grid& g, const Cylinder& c, Region region, double tau,
                        double t0, const TrajFields& f, double alpha,
                        std::uint64_t seed) {
  double out = 0.0;
  for (const Stamps* F : {&f.d1, &f.d2, &f.dt}) {
    PointSet pts = region_points(g, c, region, tau, t0, *F);
    out = std::max(out, holder_seminorm(pts, alpha, seed));
  }
  return out;
}

namespace {

Stamps squared(const Stamps& F) {
  Stamps out(F.size());
  for (std::size_t m = 0; m < F.size(); ++m) {
    out[m].resize(F[m].size());
    for (std::size_t i = 0; i < F[m].size(); ++i) out[m][i] = F[m][i] * F[m][i];
  }
  return out;
}

Stamps shifted_squared(const Stamps& F, double mean) {
  Stamps out(F.size());
  for (std::size_t m = 0; m < F.size(); ++m) {
    out[m].resize(F[m].size());
    for (std::size_t i = 0; i < F[m].size(); ++i) {
      double v = F[m][i] - mean;
      out[m][i] = v * v;
    }
  }
  return out;
}

}  // namespace

double morrey_norm(const Grid& g, double t0, double tau, int M, const Stamps& F,
                   double theta, const Vec& ladder, Region region) {
  require(!ladder.empty(), "morrey_norm: empty radius ladder");
  Stamps F2 = squared(F);
  double best = 0.0;
  for (double rho : ladder) {
    Cylinder c = cylinder_nodes(g, t0, tau, M, rho);
    double v = (region == Region::boundary)
                   ? c.bnd_integral(F2) / std::pow(rho, theta)
                   : c.int_integral(F2) / std::pow(rho, theta + 1.0);
    best = std::max(best, v);
  }
  return std::sqrt(best);
}

double campanato_seminorm(const Grid& g, double t0, double tau, int M, const Stamps& F,
                          double theta, const Vec& ladder, Region region) {
  require(!ladder.empty(), "campanato_seminorm: empty radius ladder");
  double best = 0.0;
  for (double rho : ladder) {
    Cylinder c = cylinder_nodes(g, t0, tau, M, rho);
    double v;
    if (region == Region::boundary) {
      double mean = c.bnd_integral(F) / c.bnd_measure();
      v = c.bnd_integral(shifted_squared(F, mean)) / std::pow(rho, theta);
    } else {
      double mean = c.int_integral(F) / c.int_measure();
      v = c.int_integral(shifted_squared(F, mean)) / std::pow(rho, theta + 1.0);
    }
    best = std::max(best, v);
  }
  return std::sqrt(best);
}

Polynomial fit_polynomial(const Cylinder& c, const TrajFields& f, Region variant) {
  Polynomial p;
  if (variant == Region::boundary) {
    double m = c.bnd_measure();
    require(m > 0.0, "fit_polynomial: empty boundary cylinder");
    p.c1 = c.bnd_integral(f.d1) / m;
    p.cn = c.bnd_integral(f.d2) / m;
    p.ct = c.bnd_integral(f.dt) / m;
  } else {
    double m = c.int_measure();
    require(m > 0.0, "fit_polynomial: empty interior cylinder");
    p.c1 = c.int_integral(f.d1) / m;
    p.cn = c.int_integral(f.d2) / m;
    p.ct = c.int_integral(f.dt) / m;
  }
  return p;
}

double h1_seminorm_sq(const Cylinder& c, const TrajFields& f, Region region) {
  return h1_excess_sq(c, f, Polynomial{}, region);
}

double h1_excess_sq(const Cylinder& c, const TrajFields& f, const Polynomial& p,
                    Region region) {
  std::size_t M1 = f.d1.size();
  std::size_t nn = f.d1[0].size();
  Stamps S(M1, Vec(nn));
  for (std::size_t m = 0; m < M1; ++m)
    for (std::size_t i = 0; i < nn; ++i) {
      double a = f.d1[m][i] - p.c1;
      double b = f.d2[m][i] - p.cn;
      double t = f.dt[m][i] - p.ct;
      S[m][i] = a * a + b * b + t * t;
    }
  return (region == Region::boundary) ? c.bnd_integral(S) : c.int_integral(S);
}

}  // namespace bdlab
