#include "bdlab/chart.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bdlab {

namespace {

// Shortest decimal form that round-trips through strtod.
std::string coef_text(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

double PhiSpec::phi(double y1) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::linear:
      return c * y1;
    case Kind::quad:
      return c * y1 * y1;
    case Kind::arc:
      return 1.0 - std::sqrt(1.0 - y1 * y1);
  }
  return 0.0;
}

double PhiSpec::dphi(double y1) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::linear:
      return c;
    case Kind::quad:
      return 2.0 * c * y1;
    case Kind::arc:
      return y1 / std::sqrt(1.0 - y1 * y1);
  }
  return 0.0;
}

PhiSpec PhiSpec::parse(const std::string& text) {
  PhiSpec s;
  if (text == "zero" || text.empty()) {
    s.kind = Kind::zero;
    return s;
  }
  if (text == "arc") {
    s.kind = Kind::arc;
    return s;
  }
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  if (head == "linear" || head == "quad") {
    require(colon != std::string::npos, "phi spec '" + head + "' needs ':<coefficient>'");
    try {
      s.c = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      fail("phi spec: cannot parse coefficient in '" + text + "'");
    }
    s.kind = (head == "linear") ? Kind::linear : Kind::quad;
    return s;
  }
  fail("phi spec: unknown form '" + text + "' (want zero | linear:<c> | quad:<c> | arc)");
  return s;
}

std::string PhiSpec::text() const {
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::arc:
      return "arc";
    case Kind::linear:
      return "linear:" + coef_text(c);
    case Kind::quad:
      return "quad:" + coef_text(c);
  }
  return "zero";
}

std::array<double, 2> spd2x2_eig(double a, double b, double d) {
  double mean = 0.5 * (a + d);
  double rad = std::hypot(0.5 * (a - d), b);
  return {mean - rad, mean + rad};
}

FlattenedChart build_chart(const PhiSpec& spec, const Grid& grid, double Lambda) {
  require(grid.kind == GridKind::halfspace, "build_chart: halfspace grids only");
  require(Lambda > 1.0, "build_chart: need Lambda > 1");
  FlattenedChart ch;
  ch.spec = spec;
  int nn = grid.nnode();
  ch.phi.resize(nn);
  ch.dphi.resize(nn);
  ch.a11.resize(nn);
  ch.a12.resize(nn);
  ch.a22.resize(nn);
  ch.phitilde.resize(nn);
  // eigenvalues of [[1,-s],[-s,s^2+1]] are {lam, 1/lam}; lam <= Lambda iff
  // |s| <= (Lambda-1)/sqrt(Lambda) (det = 1, trace = s^2 + 2)
  double smax = (Lambda - 1.0) / std::sqrt(Lambda);
  for (int i = 0; i < nn; ++i) {
    double y1 = grid.x1[i];
    double s = spec.dphi(y1);
    if (std::abs(s) > smax + 1e-12) {
      fail("build_chart: |phi'| = " + std::to_string(std::abs(s)) +
           " exceeds the ellipticity bound (Lambda-1)/sqrt(Lambda) = " +
           std::to_string(smax) + " for Lambda = " + std::to_string(Lambda));
    }
    ch.phi[i] = spec.phi(y1);
    ch.dphi[i] = s;
    ch.a11[i] = 1.0;
    ch.a12[i] = -s;
    ch.a22[i] = s * s + 1.0;
    ch.phitilde[i] = 1.0 / std::sqrt(1.0 + s * s);
    auto ev = spd2x2_eig(ch.a11[i], ch.a12[i], ch.a22[i]);
    require(ev[0] >= 1.0 / Lambda - 1e-12 && ev[1] <= Lambda + 1e-12,
            "build_chart: sampled a_ij eigenvalue leaves [1/Lambda, Lambda]");
  }
  return ch;
}

}  // namespace bdlab
