#pragma once

#include <utility>

#include "forestlink/link_budget.hpp"

namespace forestlink {

struct PlanResult {
  double optimum;  // h_a* or x_g*, meters
  double objective_bps;
  double bracket_lo;
  double bracket_hi;
  int iterations;
};

// Throughput-maximizing air-asset altitude for ground separation x_g, relay
// fixed at the midpoint. A coarse scan locates a unimodal bracket, then
// golden-section search refines to tol. If the scan peaks at the lower end
// of h_range the boundary is a legitimate optimum (altitude only costs path
// loss there); a peak at the upper end raises bracket_error since the range
// is too narrow to contain the peak.
PlanResult optimize_altitude(const ForestModel& forest, const LinkBudget& budget, double x_g,
                             double h_g, std::pair<double, double> h_range, double tol = 0.1);

// Ground separation where altitude-optimized relayed throughput overtakes
// the direct link, found by bisection on their difference. Throws
// no_sign_change_error when one mode dominates over the whole range.
PlanResult crossover_distance(const ForestModel& forest, const LinkBudget& budget, double h_g,
                              std::pair<double, double> h_range,
                              std::pair<double, double> x_range, double tol = 0.1);

// Default search ranges, generous around any scenario of interest.
inline std::pair<double, double> default_altitude_range(double h_g) {
  return {h_g + 1.0, 1000.0};
}
inline constexpr std::pair<double, double> kDefaultCrossoverRange{5.0, 500.0};

}  // namespace forestlink
