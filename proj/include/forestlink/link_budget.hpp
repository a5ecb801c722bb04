#pragma once

#include <array>
#include <optional>

#include "forestlink/los.hpp"

namespace forestlink {

// Log-distance link budget: reference SNR at d0, path-loss exponent,
// bandwidth.
struct LinkBudget {
  double snr0_db{};
  double alpha{};
  double bandwidth_hz{};
  double d0 = 1.0;

  bool operator==(const LinkBudget&) const = default;
};

// SNR in dB at distance d. The only dB-domain function; capacity_bps owns
// the single dB-to-linear conversion.
double snr_db(const LinkBudget& budget, double d);

// Shannon capacity B * log2(1 + SNR) at distance d.
double capacity_bps(const LinkBudget& budget, double d);

struct HopReport {
  double distance_m;
  double capacity_bps;
  double p_los;
};

struct ThroughputResult {
  double throughput_bps;
  double capacity_bps;  // bottleneck capacity for a two-hop link
  double p_los_end_to_end;
  std::optional<std::array<HopReport, 2>> per_hop;
};

// Single-hop expected throughput P_LoS * C over a ground-ground link.
ThroughputResult throughput_direct(const ForestModel& forest, const LinkBudget& budget,
                                   double x_g, double h_g);

// Two-hop TDD relay through an air asset at (x_a, h_a): half the bottleneck
// capacity, discounted by both hops' LoS probabilities. Hop distances are
// slant ranges.
ThroughputResult throughput_relayed(const ForestModel& forest, const LinkBudget& budget,
                                    double x_g, double h_g, double h_a, double x_a);

}  // namespace forestlink
