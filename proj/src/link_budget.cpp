#include "forestlink/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forestlink/errors.hpp"

namespace forestlink {

namespace {

void check_budget(const LinkBudget& budget) {
  if (!(budget.bandwidth_hz > 0.0)) {
    throw std::invalid_argument("LinkBudget: bandwidth_hz must be > 0");
  }
  if (!(budget.d0 > 0.0)) throw std::invalid_argument("LinkBudget: d0 must be > 0");
  if (!(budget.alpha > 0.0)) throw std::invalid_argument("LinkBudget: alpha must be > 0");
}

}  // namespace

double snr_db(const LinkBudget& budget, double d) {
  check_budget(budget);
  if (!(d > 0.0)) throw std::domain_error("snr_db: d must be > 0");
  return budget.snr0_db - 10.0 * budget.alpha * std::log10(d / budget.d0);
}

double capacity_bps(const LinkBudget& budget, double d) {
  const double snr_linear = std::pow(10.0, snr_db(budget, d) / 10.0);
  return budget.bandwidth_hz * std::log2(1.0 + snr_linear);
}

ThroughputResult throughput_direct(const ForestModel& forest, const LinkBudget& budget,
                                   double x_g, double h_g) {
  const LosResult los = p_los_ground_ground(forest, x_g, h_g);
  const double capacity = capacity_bps(budget, x_g);
  return ThroughputResult{los.p_los * capacity, capacity, los.p_los, std::nullopt};
}

ThroughputResult throughput_relayed(const ForestModel& forest, const LinkBudget& budget,
                                    double x_g, double h_g, double h_a, double x_a) {
  if (!(x_a > 0.0 && x_a < x_g)) {
    throw std::invalid_argument("throughput_relayed: x_a must be in (0, x_g)");
  }
  if (!(h_a > h_g)) {
    throw degenerate_geometry_error("throughput_relayed: h_a must be > h_g");
  }

  const double rise = h_a - h_g;
  const double span_ga = x_a;
  const double span_ag = x_g - x_a;

  const LosResult los_ga = p_los(forest, LinkGeometry::ground_air(h_g, h_a, span_ga));
  const LosResult los_ag = p_los(forest, LinkGeometry::ground_air(h_g, h_a, span_ag));
  const double cap_ga = capacity_bps(budget, std::hypot(span_ga, rise));
  const double cap_ag = capacity_bps(budget, std::hypot(span_ag, rise));

  const double p_end = los_ga.p_los * los_ag.p_los;
  const double bottleneck = std::min(cap_ga, cap_ag);

  ThroughputResult result{0.5 * p_end * bottleneck, bottleneck, p_end, std::nullopt};
  result.per_hop = {HopReport{std::hypot(span_ga, rise), cap_ga, los_ga.p_los},
                    HopReport{std::hypot(span_ag, rise), cap_ag, los_ag.p_los}};
  return result;
}

}  // namespace forestlink
