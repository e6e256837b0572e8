#include <cmath>

#include "bdlab/chart.hpp"
#include "bdlab/common.hpp"
#include "bdlab/evolution.hpp"
#include "bdlab/grid.hpp"
#include "bdlab/resample.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bdlab;

TEST_CASE("phi spec: parse and round trip") {
  CHECK(PhiSpec::parse("zero").kind == PhiSpec::Kind::zero);
  PhiSpec lin = PhiSpec::parse("linear:0.5");
  CHECK(lin.kind == PhiSpec::Kind::linear);
  CHECK(lin.c == 0.5);
  CHECK(lin.text() == "linear:0.5");
  PhiSpec quad = PhiSpec::parse("quad:0.1");
  CHECK(quad.phi(2.0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(quad.dphi(2.0) == doctest::Approx(0.4).epsilon(1e-12));
  PhiSpec arc = PhiSpec::parse("arc");
  CHECK(arc.phi(0.0) == 0.0);
  CHECK(arc.phi(0.6) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(PhiSpec::parse("cubic:1"), Error);
  CHECK_THROWS_AS(PhiSpec::parse("linear"), Error);
}

TEST_CASE("flat chart phi = 0 reduces to the identity") {
  Grid g = build_halfspace_grid(1.0, 0.25);
  FlattenedChart ch = build_chart(PhiSpec::parse("zero"), g, 4.0);
  for (int id = 0; id < g.nnode(); ++id) {
    CHECK(ch.a11[id] == 1.0);
    CHECK(ch.a12[id] == 0.0);
    CHECK(ch.a22[id] == 1.0);
    CHECK(ch.phitilde[id] == 1.0);
  }
}

TEST_CASE("linear graph: constant flattened coefficients") {
  Grid g = build_halfspace_grid(1.0, 0.25);
  double c = 0.5;
  FlattenedChart ch = build_chart(PhiSpec::parse("linear:0.5"), g, 4.0);
  for (int id = 0; id < g.nnode(); ++id) {
    CHECK(ch.a11[id] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ch.a12[id] == doctest::Approx(-c).epsilon(1e-12));
    CHECK(ch.a22[id] == doctest::Approx(c * c + 1.0).epsilon(1e-12));
    CHECK(ch.phitilde[id] ==
          doctest::Approx(1.0 / std::sqrt(1.0 + c * c)).epsilon(1e-12));
  }
}

TEST_CASE("quadratic graph: ellipticity within [1/Lambda, Lambda]") {
  Grid g = build_halfspace_grid(1.0, 0.125);
  FlattenedChart ch = build_chart(PhiSpec::parse("quad:0.1"), g, 2.0);
  for (int id = 0; id < g.nnode(); ++id) {
    auto ev = spd2x2_eig(ch.a11[id], ch.a12[id], ch.a22[id]);
    CHECK(ev[0] >= 0.5 - 1e-12);
    CHECK(ev[1] <= 2.0 + 1e-12);
  }
  // eigenvalues at x1 = 1 by hand: a = [[1, -0.2], [-0.2, 1.04]]
  auto ev = spd2x2_eig(1.0, -0.2, 1.04);
  CHECK(ev[0] == doctest::Approx(1.02 - std::sqrt(0.2 * 0.2 + 0.02 * 0.02))
                     .epsilon(1e-12));
  CHECK(ev[0] * ev[1] == doctest::Approx(1.0).epsilon(1e-12));  // det = 1
}

TEST_CASE("steep graph rejected by the ellipticity guard") {
  Grid g = build_halfspace_grid(1.0, 0.25);
  CHECK_THROWS_WITH_AS(build_chart(PhiSpec::parse("linear:3"), g, 2.0),
                       doctest::Contains("|phi'|"), Error);
}

TEST_CASE("arc chart: elliptic over the chart radius 0.4") {
  Grid g = build_halfspace_grid(0.4, 0.025);
  FlattenedChart ch = build_chart(PhiSpec::parse("arc"), g, 4.0);
  for (int id = 0; id < g.nnode(); ++id) {
    auto ev = spd2x2_eig(ch.a11[id], ch.a12[id], ch.a22[id]);
    CHECK(ev[0] >= 0.25 - 1e-12);
    CHECK(ev[1] <= 4.0 + 1e-12);
  }
}

TEST_CASE("chart resample: constant disk trajectory stays constant") {
  auto g = std::make_shared<const Grid>(build_disk_grid(32, 128));
  Trajectory traj;
  traj.grid = g;
  traj.t0 = 0.0;
  traj.tau = 1.0 / 32;
  traj.stamps.assign(33, Vec(g->nnode(), 3.25));
  Trajectory local = chart_resample(traj, 0.7, 0.5, 0.4, 0.025, 4);
  CHECK(local.stamps.size() == 9);
  CHECK(local.grid->kind == GridKind::halfspace);
  for (const Vec& s : local.stamps)
    for (double v : s) CHECK(std::abs(v - 3.25) < 1e-12);
}

TEST_CASE("chart compatibility ratio tracks the fine-grid oracle") {
  // disk run v0 = cos(theta), then the chart cylinder at theta0 = 0,
  // t0_chart = 0.5; the pinned fine-grid oracle of the ratio is 0.03814.
  Trajectory disk = bdlab::test::disk_mode_traj(64, 256, 1.0 / 128, 128, {{1, 1.0}});
  int nh = static_cast<int>(std::lround(0.2 * 128)) + 2;
  Trajectory local = chart_resample(disk, 0.0, 0.5, 0.4, 0.0125, nh);
  CompatReport rep = check_compatibility(local, 0.2);
  CHECK(rep.ratio_defined);
  CHECK(rep.ratio == doctest::Approx(0.03783).epsilon(2e-3));
  CHECK(rep.ratio <= 1.1 * 0.03814);
}
