#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "forestlink/errors.hpp"
#include "forestlink/link_budget.hpp"
#include "forestlink/rng.hpp"

using namespace forestlink;

namespace {

const LinkBudget kBudget{51.98, 2.3, 20e6, 1.0};
const ForestModel kGaussianForest(0.02, HeightDistribution::truncated_gaussian(19.0, 10.0));
const ForestModel kUniformForest(0.02, HeightDistribution::uniform(29.0));
const ForestModel kEmptyForest(0.0, HeightDistribution::uniform(29.0));

}  // namespace

TEST_CASE("snr_db") {
  CHECK(snr_db(kBudget, 1.0) == 51.98);
  CHECK(snr_db(kBudget, 10.0) == doctest::Approx(28.98).epsilon(1e-12));
  CHECK(snr_db(LinkBudget{30.0, 3.0, 1e6, 2.0}, 2.0) == 30.0);

  CHECK_THROWS_AS((void)snr_db(kBudget, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)snr_db(kBudget, -5.0), std::domain_error);
  CHECK_THROWS_AS((void)snr_db(LinkBudget{50.0, 0.0, 20e6, 1.0}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS((void)snr_db(LinkBudget{50.0, 2.0, 0.0, 1.0}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS((void)snr_db(LinkBudget{50.0, 2.0, 20e6, 0.0}, 10.0), std::invalid_argument);

  SUBCASE("strictly decreasing (property)") {
    RngStream rng(6, 0);
    for (int i = 0; i < 300; ++i) {
      double d1 = 0.5 + rng.next_unit() * 499.0;
      double d2 = 0.5 + rng.next_unit() * 499.0;
      if (d1 == d2) continue;
      if (d1 > d2) std::swap(d1, d2);
      CHECK(snr_db(kBudget, d1) > snr_db(kBudget, d2));
    }
  }
}

TEST_CASE("capacity_bps") {
  // frozen: 20e6 * log2(1 + 10^5.198)
  CHECK(capacity_bps(kBudget, 1.0) == doctest::Approx(345347827.640048).epsilon(1e-12));
  CHECK(capacity_bps(kBudget, 50.0) == doctest::Approx(87172172.4370732).epsilon(1e-12));

  // at the distance where the SNR crosses 0 dB the capacity is exactly B
  const double d_unity = std::pow(10.0, 51.98 / 23.0);
  CHECK(capacity_bps(kBudget, d_unity) == doctest::Approx(20e6).epsilon(1e-9));

  SUBCASE("strictly decreasing (property)") {
    RngStream rng(8, 0);
    for (int i = 0; i < 300; ++i) {
      double d1 = 0.5 + rng.next_unit() * 499.0;
      double d2 = 0.5 + rng.next_unit() * 499.0;
      if (d1 == d2) continue;
      if (d1 > d2) std::swap(d1, d2);
      CHECK(capacity_bps(kBudget, d1) > capacity_bps(kBudget, d2));
    }
  }
}

TEST_CASE("throughput_direct") {
  const auto r = throughput_direct(kUniformForest, kBudget, 120.0, 2.0);
  CHECK(r.p_los_end_to_end == doctest::Approx(0.1070474849246677).epsilon(1e-12));
  CHECK(r.capacity_bps == doctest::Approx(37003605.4651775).epsilon(1e-12));
  CHECK(r.throughput_bps == r.p_los_end_to_end * r.capacity_bps);
  CHECK(r.throughput_bps == doctest::Approx(3961142.89819194).epsilon(1e-10));
  CHECK_FALSE(r.per_hop.has_value());
  CHECK(r.throughput_bps <= r.capacity_bps);

  SUBCASE("no obstacles: throughput equals capacity") {
    const auto clear = throughput_direct(kEmptyForest, kBudget, 120.0, 2.0);
    CHECK(clear.throughput_bps == clear.capacity_bps);
    CHECK(clear.p_los_end_to_end == 1.0);
  }

  SUBCASE("at the reference distance with no obstacles") {
    const auto ref = throughput_direct(kEmptyForest, kBudget, 1.0, 2.0);
    CHECK(ref.throughput_bps == doctest::Approx(345347827.640048).epsilon(1e-12));
  }
}

TEST_CASE("throughput_relayed") {
  SUBCASE("midpoint relay is exactly symmetric") {
    const auto r = throughput_relayed(kGaussianForest, kBudget, 120.0, 2.0, 100.0, 60.0);
    REQUIRE(r.per_hop.has_value());
    const auto& hops = *r.per_hop;
    CHECK(hops[0].distance_m == hops[1].distance_m);
    CHECK(hops[0].capacity_bps == hops[1].capacity_bps);
    CHECK(hops[0].p_los == hops[1].p_los);
    CHECK(r.p_los_end_to_end == hops[0].p_los * hops[1].p_los);

    // frozen scenario value: 0.5 * 0.805233^2 * C(sqrt(60^2 + 98^2))
    CHECK(r.throughput_bps == doctest::Approx(12679824.9373920).epsilon(1e-9));
    CHECK(hops[0].distance_m == doctest::Approx(std::hypot(60.0, 98.0)).epsilon(1e-15));
  }

  SUBCASE("TDD halves the unblocked midpoint rate") {
    const auto r = throughput_relayed(kEmptyForest, kBudget, 120.0, 2.0, 100.0, 60.0);
    const double hop_capacity = capacity_bps(kBudget, std::hypot(60.0, 98.0));
    CHECK(r.throughput_bps == 0.5 * hop_capacity);
    CHECK(r.capacity_bps == hop_capacity);
    CHECK(r.p_los_end_to_end == 1.0);
  }

  SUBCASE("off-midpoint relay uses both spans") {
    const auto r = throughput_relayed(kUniformForest, kBudget, 120.0, 2.0, 100.0, 40.0);
    REQUIRE(r.per_hop.has_value());
    const auto& hops = *r.per_hop;
    CHECK(hops[0].distance_m == doctest::Approx(std::hypot(40.0, 98.0)).epsilon(1e-15));
    CHECK(hops[1].distance_m == doctest::Approx(std::hypot(80.0, 98.0)).epsilon(1e-15));
    CHECK(r.capacity_bps == std::min(hops[0].capacity_bps, hops[1].capacity_bps));
    CHECK(r.throughput_bps == 0.5 * (hops[0].p_los * hops[1].p_los) * r.capacity_bps);
    CHECK(r.throughput_bps <= r.capacity_bps);
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(
        (void)throughput_relayed(kUniformForest, kBudget, 120.0, 2.0, 100.0, 0.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)throughput_relayed(kUniformForest, kBudget, 120.0, 2.0, 100.0, 120.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)throughput_relayed(kUniformForest, kBudget, 120.0, 2.0, 2.0, 60.0),
        degenerate_geometry_error);
  }
}
