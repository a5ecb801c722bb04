#include "forestlink/los.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "forestlink/errors.hpp"
#include "forestlink/quadrature.hpp"

namespace forestlink {

namespace {

// erf saturates to +-1 well inside double range; the clamp keeps the
// closed form free of 1e-16 noise from the tails.
double erf_clamped(double z) {
  if (z > 7.0) return 1.0;
  if (z < -7.0) return -1.0;
  return std::erf(z);
}

LosResult from_exponent(double exponent, LosMethod method) {
  exponent = std::max(exponent, 0.0);
  return LosResult{std::exp(-exponent), exponent, method};
}

void require_ground_air(const LinkGeometry& geom, const char* where) {
  if (geom.is_ground_ground()) {
    throw degenerate_geometry_error(std::string(where) +
                                    ": h_a == h_g, use the ground-ground path");
  }
}

}  // namespace

const char* to_string(LosMethod method) {
  switch (method) {
    case LosMethod::homogeneous: return "homogeneous";
    case LosMethod::closed_form_gaussian: return "closed_form_gaussian";
    case LosMethod::closed_form_uniform: return "closed_form_uniform";
    case LosMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

double density_at(const ForestModel& forest, const LinkGeometry& geom, double x) {
  return forest.lambda0 * (1.0 - forest.heights.cdf(geom.critical_height(x)));
}

LosResult p_los_ground_ground(const ForestModel& forest, double x_g, double h_g) {
  if (!(x_g > 0.0)) throw std::invalid_argument("p_los_ground_ground: x_g must be > 0");
  if (!(h_g >= 0.0)) throw std::invalid_argument("p_los_ground_ground: h_g must be >= 0");
  const double exponent = forest.lambda0 * (1.0 - forest.heights.cdf(h_g)) * x_g;
  return from_exponent(exponent, LosMethod::homogeneous);
}

LosResult p_los_ground_air_gaussian(const ForestModel& forest, const LinkGeometry& geom) {
  if (!forest.heights.is_truncated_gaussian()) {
    throw std::invalid_argument("p_los_ground_air_gaussian: height law is not truncated Gaussian");
  }
  require_ground_air(geom, "p_los_ground_air_gaussian");

  const auto& tg = forest.heights.as_truncated_gaussian();
  const double h_g = geom.ground_height();
  const double h_a = geom.air_height();
  const double x_a = geom.span();

  const double a = (tg.mu - h_g) / (std::numbers::sqrt2 * tg.sigma);
  const double b = (h_a - h_g) / (std::numbers::sqrt2 * tg.sigma * x_a);
  const double c = forest.lambda0 / (2.0 * std_normal_cdf(tg.mu / tg.sigma));

  constexpr double sqrt_pi = 1.0 / std::numbers::inv_sqrtpi;

  double erf_integral;
  if (b * x_a < 1e-8) {
    // nearly-flat sightline: the antiderivative form loses all digits to
    // cancellation, the midpoint value is exact to O((b*x_a)^2)
    erf_integral = x_a * erf_clamped(a - 0.5 * b * x_a);
  } else {
    const double t = a - b * x_a;
    erf_integral =
        (std::exp(-a * a) + sqrt_pi * ((b * x_a - a) * erf_clamped(t) + a * erf_clamped(a)) -
         std::exp(-t * t)) /
        (sqrt_pi * b);
  }

  return from_exponent(c * (x_a + erf_integral), LosMethod::closed_form_gaussian);
}

LosResult p_los_ground_air_uniform(const ForestModel& forest, const LinkGeometry& geom) {
  if (!forest.heights.is_uniform()) {
    throw std::invalid_argument("p_los_ground_air_uniform: height law is not uniform");
  }
  require_ground_air(geom, "p_los_ground_air_uniform");

  const double h_max = forest.heights.as_uniform().h_max;
  const double h_g = geom.ground_height();
  const double h_a = geom.air_height();
  const double x_a = geom.span();

  const double x_c = geom.critical_distance(h_max);
  const double m = std::min(x_a, x_c);
  const double exponent =
      forest.lambda0 * m * (1.0 - h_g / h_max - (h_a - h_g) / (2.0 * x_a * h_max) * m);
  return from_exponent(exponent, LosMethod::closed_form_uniform);
}

LosResult p_los_ground_air_quadrature(const ForestModel& forest, const LinkGeometry& geom,
                                      double rel_tol) {
  const double span = geom.span();

  // Seed the subdivision where the thinned density changes character: the
  // critical distance for a uniform law, grid knot crossings for a tabulated
  // one, and the transition band of a Gaussian law. Without these a steep
  // sightline squeezes all the density into a spike the initial rule nodes
  // never see.
  std::vector<double> breakpoints;
  if (!geom.is_ground_ground()) {
    const double slope = (geom.air_height() - geom.ground_height()) / span;
    auto add_crossing = [&](double height) {
      const double x = (height - geom.ground_height()) / slope;
      if (x > 0.0 && x < span) breakpoints.push_back(x);
    };
    if (forest.heights.is_uniform()) {
      add_crossing(forest.heights.as_uniform().h_max);
    } else if (forest.heights.is_tabulated()) {
      for (double knot : forest.heights.as_tabulated().heights) add_crossing(knot);
    } else if (forest.heights.is_truncated_gaussian()) {
      const auto& tg = forest.heights.as_truncated_gaussian();
      for (double k : {-6.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 6.0}) {
        add_crossing(tg.mu + k * tg.sigma);
      }
    }
  }

  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  const auto quad = integrate_adaptive(
      [&](double x) { return density_at(forest, geom, x); }, 0.0, span, opt, breakpoints);
  return from_exponent(quad.value, LosMethod::quadrature);
}

LosResult p_los(const ForestModel& forest, const LinkGeometry& geom) {
  if (geom.is_ground_ground()) {
    return p_los_ground_ground(forest, geom.span(), geom.ground_height());
  }
  if (forest.heights.is_truncated_gaussian()) {
    return p_los_ground_air_gaussian(forest, geom);
  }
  if (forest.heights.is_uniform()) {
    return p_los_ground_air_uniform(forest, geom);
  }
  return p_los_ground_air_quadrature(forest, geom);
}

}  // namespace forestlink
