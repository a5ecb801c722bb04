#include "forestlink/planner.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "forestlink/errors.hpp"

namespace forestlink {

namespace {

constexpr int kCoarsePoints = 32;

struct GoldenResult {
  double x;
  int iterations;
};

// Golden-section search for a maximum on [a, b].
GoldenResult golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  int iterations = 0;
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
    ++iterations;
  }
  return {0.5 * (a + b), iterations};
}

}  // namespace

PlanResult optimize_altitude(const ForestModel& forest, const LinkBudget& budget, double x_g,
                             double h_g, std::pair<double, double> h_range, double tol) {
  const auto [lo, hi] = h_range;
  if (!(lo > h_g)) throw std::invalid_argument("optimize_altitude: h_range.lo must be > h_g");
  if (!(hi > lo)) throw std::invalid_argument("optimize_altitude: h_range.hi must be > lo");
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_altitude: tol must be > 0");

  const double x_a = x_g / 2.0;
  auto objective = [&](double h_a) {
    return throughput_relayed(forest, budget, x_g, h_g, h_a, x_a).throughput_bps;
  };

  std::array<double, kCoarsePoints> grid;
  std::array<double, kCoarsePoints> value;
  int best = 0;
  for (int i = 0; i < kCoarsePoints; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (kCoarsePoints - 1);
    value[i] = objective(grid[i]);
    if (value[i] > value[best]) best = i;
  }
  if (best == kCoarsePoints - 1) {
    throw bracket_error("optimize_altitude: maximum at the top of h_range; widen the range");
  }

  const double bracket_lo = (best == 0) ? grid[0] : grid[best - 1];
  const double bracket_hi = grid[best + 1];
  const GoldenResult refined = golden_max(objective, bracket_lo, bracket_hi, tol);

  // Keep whichever candidate the objective actually prefers; with no
  // blockage the boundary of the range wins.
  double optimum = refined.x;
  double best_value = objective(optimum);
  for (double candidate : {grid[best], bracket_lo}) {
    const double v = objective(candidate);
    if (v > best_value) {
      optimum = candidate;
      best_value = v;
    }
  }
  return PlanResult{optimum, best_value, bracket_lo, bracket_hi, refined.iterations};
}

PlanResult crossover_distance(const ForestModel& forest, const LinkBudget& budget, double h_g,
                              std::pair<double, double> h_range,
                              std::pair<double, double> x_range, double tol) {
  if (!(x_range.second > x_range.first)) {
    throw std::invalid_argument("crossover_distance: x_range.hi must be > lo");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("crossover_distance: tol must be > 0");

  auto gap = [&](double x_g) {
    const PlanResult relay = optimize_altitude(forest, budget, x_g, h_g, h_range, tol);
    return relay.objective_bps - throughput_direct(forest, budget, x_g, h_g).throughput_bps;
  };

  double lo = x_range.first;
  double hi = x_range.second;
  double f_lo = gap(lo);
  double f_hi = gap(hi);
  if (f_lo == 0.0) return PlanResult{lo, throughput_direct(forest, budget, lo, h_g).throughput_bps, lo, hi, 0};
  if (f_hi == 0.0) return PlanResult{hi, throughput_direct(forest, budget, hi, h_g).throughput_bps, lo, hi, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw no_sign_change_error(
        "crossover_distance: objective difference has the same sign at both ends of x_range");
  }

  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = gap(mid);
    ++iterations;
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }

  // Regula-falsi polish inside the final bracket pins the equal-throughput
  // point well below the bisection step size.
  double x_star = 0.5 * (lo + hi);
  double a = lo, b = hi, f_a = f_lo, f_b = f_hi;
  for (int i = 0; i < 6 && f_a != f_b; ++i) {
    const double x = a - f_a * (b - a) / (f_b - f_a);
    if (!(x > a && x < b)) break;
    const double f_x = gap(x);
    ++iterations;
    x_star = x;
    if (f_x == 0.0) break;
    if ((f_x > 0.0) == (f_a > 0.0)) {
      a = x;
      f_a = f_x;
    } else {
      b = x;
      f_b = f_x;
    }
  }

  return PlanResult{x_star, throughput_direct(forest, budget, x_star, h_g).throughput_bps,
                    lo, hi, iterations};
}

}  // namespace forestlink
