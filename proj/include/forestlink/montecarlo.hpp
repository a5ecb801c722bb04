#pragma once

#include <cstdint>

#include "forestlink/geometry.hpp"
#include "forestlink/rng.hpp"

namespace forestlink {

struct McConfig {
  std::int64_t trials = 500000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = hardware concurrency

  bool operator==(const McConfig&) const = default;
};

struct McEstimate {
  double p_hat;
  double std_err;
  std::int64_t trials;
  std::int64_t blocked_count;
};

// Poisson variate: inversion by sequential search for small means,
// transformed rejection for large ones.
std::int64_t poisson_draw(double mean, RngStream& rng);

// Estimates the LoS probability by repeatedly drawing a forest along the
// sightline: N ~ Poisson(lambda0 * span) obstacles placed uniformly, each
// with a height drawn from the height law; the trial is blocked iff some
// obstacle rises above the critical height at its position.
//
// Trial i draws from RngStream(seed, i), so blocked_count is identical for
// any worker count and across runs.
McEstimate simulate_los(const ForestModel& forest, const LinkGeometry& geom,
                        const McConfig& cfg);

}  // namespace forestlink
