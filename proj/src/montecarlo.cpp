#include "forestlink/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace forestlink {

namespace {

std::int64_t poisson_inversion(double mean, RngStream& rng) {
  const double u = rng.next_unit();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::int64_t k = 0;
  const auto k_cap = static_cast<std::int64_t>(mean + 60.0 * std::sqrt(mean) + 100.0);
  while (u > cdf && k < k_cap) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

// Hormann's PTRS transformed rejection, valid for mean >= 10; used above 30.
std::int64_t poisson_ptrs(double mean, RngStream& rng) {
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);

  for (;;) {
    double u = rng.next_unit() - 0.5;
    const double v = rng.next_unit();
    const double us = 0.5 - std::abs(u);
    const double k_real = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k_real);
    if (k_real < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::int64_t>(k_real);
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = k_real * log_mean - mean - std::lgamma(k_real + 1.0);
    if (lhs <= rhs) return k;
  }
}

bool trial_blocked(const ForestModel& forest, const LinkGeometry& geom, double mean,
                   RngStream& rng) {
  const std::int64_t n = poisson_draw(mean, rng);
  const double span = geom.span();
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = rng.next_unit() * span;
    const double h = forest.heights.sample(rng);
    if (h > geom.critical_height(x)) return true;
  }
  return false;
}

}  // namespace

std::int64_t poisson_draw(double mean, RngStream& rng) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson_draw: mean must be >= 0");
  if (mean == 0.0) return 0;
  return (mean < 30.0) ? poisson_inversion(mean, rng) : poisson_ptrs(mean, rng);
}

McEstimate simulate_los(const ForestModel& forest, const LinkGeometry& geom,
                        const McConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("simulate_los: trials must be >= 1");

  const double mean = forest.lambda0 * geom.span();
  auto count_range = [&](std::int64_t begin, std::int64_t end) {
    std::int64_t blocked = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(t));
      if (trial_blocked(forest, geom, mean, rng)) ++blocked;
    }
    return blocked;
  };

  int workers = cfg.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  if (static_cast<std::int64_t>(workers) > cfg.trials) {
    workers = static_cast<int>(cfg.trials);
  }

  std::int64_t blocked_total = 0;
  if (workers == 1) {
    blocked_total = count_range(0, cfg.trials);
  } else {
    std::vector<std::int64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (cfg.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = w * chunk;
      const std::int64_t end = std::min(cfg.trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] { partial[static_cast<std::size_t>(w)] = count_range(begin, end); });
    }
    for (auto& th : pool) th.join();
    for (std::int64_t c : partial) blocked_total += c;
  }

  const double p_hat =
      1.0 - static_cast<double>(blocked_total) / static_cast<double>(cfg.trials);
  const double std_err = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(cfg.trials));
  return McEstimate{p_hat, std_err, cfg.trials, blocked_total};
}

}  // namespace forestlink
