#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "forestlink/errors.hpp"
#include "forestlink/geometry.hpp"
#include "forestlink/rng.hpp"

using forestlink::ForestModel;
using forestlink::HeightDistribution;
using forestlink::LinkGeometry;
using forestlink::RngStream;
using forestlink::derive_line_density;

TEST_CASE("derive_line_density") {
  CHECK(derive_line_density(0.04, 0.5) == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(derive_line_density(12.3, 0.0) == 0.0);
  CHECK(derive_line_density(0.0, 1.0) == 0.0);
  CHECK_THROWS_AS((void)derive_line_density(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)derive_line_density(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("ForestModel validates lambda0") {
  CHECK_THROWS_AS(ForestModel(-0.01, HeightDistribution::uniform(29.0)), std::invalid_argument);
  const ForestModel ok(0.0, HeightDistribution::uniform(29.0));
  CHECK(ok.lambda0 == 0.0);
}

TEST_CASE("LinkGeometry construction invariants") {
  CHECK_THROWS_AS(LinkGeometry::ground_air(-1.0, 100.0, 60.0), std::invalid_argument);
  CHECK_THROWS_AS(LinkGeometry::ground_air(2.0, 1.0, 60.0), std::invalid_argument);
  CHECK_THROWS_AS(LinkGeometry::ground_air(2.0, 100.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LinkGeometry::ground_ground(2.0, -3.0), std::invalid_argument);

  const auto gg = LinkGeometry::ground_ground(2.0, 120.0);
  CHECK(gg.is_ground_ground());
  CHECK(gg.air_height() == 2.0);

  const auto ga = LinkGeometry::ground_air(2.0, 100.0, 60.0);
  CHECK_FALSE(ga.is_ground_ground());
}

TEST_CASE("critical_height endpoints and midpoint") {
  const auto geom = LinkGeometry::ground_air(2.0, 100.0, 60.0);
  CHECK(geom.critical_height(0.0) == 2.0);
  CHECK(geom.critical_height(60.0) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(geom.critical_height(30.0) == doctest::Approx(51.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)geom.critical_height(-0.001), std::domain_error);
  CHECK_THROWS_AS((void)geom.critical_height(60.001), std::domain_error);
}

TEST_CASE("critical_height is linear (property)") {
  const auto geom = LinkGeometry::ground_air(1.5, 310.0, 77.0);
  RngStream rng(3, 0);
  for (int i = 0; i < 500; ++i) {
    const double x1 = rng.next_unit() * 77.0;
    const double x2 = rng.next_unit() * 77.0;
    const double lhs = geom.critical_height(x1) + geom.critical_height(x2);
    const double rhs = 2.0 * geom.critical_height((x1 + x2) / 2.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("critical_height non-decreasing along the span") {
  const auto geom = LinkGeometry::ground_air(2.0, 100.0, 60.0);
  double prev = geom.critical_height(0.0);
  for (double x = 0.5; x <= 60.0; x += 0.5) {
    const double h = geom.critical_height(x);
    CHECK(h >= prev);
    prev = h;
  }
}

TEST_CASE("critical_distance") {
  const auto geom = LinkGeometry::ground_air(2.0, 100.0, 60.0);
  CHECK(geom.critical_distance(29.0) == doctest::Approx(27.0 / 98.0 * 60.0).epsilon(1e-14));
  CHECK(geom.critical_distance(2.0) == 0.0);
  CHECK(geom.critical_distance(1.0) == 0.0);  // below h_g
  CHECK(geom.critical_distance(100.0) == doctest::Approx(60.0).epsilon(1e-14));
  CHECK(geom.critical_distance(150.0) > 60.0);

  const auto gg = LinkGeometry::ground_ground(2.0, 120.0);
  CHECK_THROWS_AS((void)gg.critical_distance(29.0), forestlink::degenerate_geometry_error);
}

TEST_CASE("critical_distance and critical_height are consistent (property)") {
  RngStream rng(17, 0);
  for (int i = 0; i < 300; ++i) {
    const double h_g = rng.next_unit() * 5.0;
    const double h_a = h_g + 1.0 + rng.next_unit() * 400.0;
    const double span = 1.0 + rng.next_unit() * 400.0;
    const double h_max = rng.next_unit() * 60.0;
    const auto geom = LinkGeometry::ground_air(h_g, h_a, span);
    const double x_c = geom.critical_distance(h_max);
    if (x_c > 0.0 && x_c <= span) {
      CHECK(geom.critical_height(x_c) == doctest::Approx(h_max).epsilon(1e-12));
    }
  }
}
