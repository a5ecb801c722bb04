#include "forestlink/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "forestlink/rng.hpp"

namespace forestlink {

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

// Wichura's AS 241 (PPND16) rational approximations, ~1e-16 relative.
double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-9) * r +
              1.84631831751005468180e-6) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    x = num / den;
  }
  return (q < 0.0) ? -x : x;
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

}  // namespace

double std_normal_quantile(double p) {
  if (p < 0.0 || p > 1.0 || std::isnan(p)) {
    throw std::domain_error("std_normal_quantile: p must be in [0, 1]");
  }
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  double x = ppnd16(p);
  // One Newton step against the erfc-based cdf keeps the two in lockstep.
  const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) x -= (std_normal_cdf(x) - p) / pdf;
  return x;
}

HeightDistribution::HeightDistribution(Law law) : law_(std::move(law)) {}

HeightDistribution HeightDistribution::truncated_gaussian(double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("HeightDistribution: sigma must be > 0");
  }
  return HeightDistribution(TruncatedGaussian{mu, sigma});
}

HeightDistribution HeightDistribution::uniform(double h_max) {
  if (!(h_max > 0.0)) {
    throw std::invalid_argument("HeightDistribution: h_max must be > 0");
  }
  return HeightDistribution(Uniform{h_max});
}

HeightDistribution HeightDistribution::tabulated(std::vector<double> heights,
                                                 std::vector<double> cdf) {
  if (heights.size() != cdf.size() || heights.size() < 2) {
    throw std::invalid_argument("HeightDistribution: table needs >= 2 (h, F) pairs");
  }
  for (std::size_t i = 1; i < heights.size(); ++i) {
    if (!(heights[i] > heights[i - 1])) {
      throw std::invalid_argument("HeightDistribution: table heights must be strictly increasing");
    }
    if (cdf[i] < cdf[i - 1]) {
      throw std::invalid_argument("HeightDistribution: table cdf must be non-decreasing");
    }
  }
  if (cdf.front() != 0.0 || cdf.back() != 1.0) {
    throw std::invalid_argument("HeightDistribution: table cdf must start at 0 and end at 1");
  }
  return HeightDistribution(Tabulated{std::move(heights), std::move(cdf)});
}

double HeightDistribution::cdf(double h) const {
  if (h < 0.0) return 0.0;
  if (const auto* tg = std::get_if<TruncatedGaussian>(&law_)) {
    const double lower = std_normal_cdf(-tg->mu / tg->sigma);
    const double norm = std_normal_cdf(tg->mu / tg->sigma);
    if (norm == 0.0) return 1.0;  // parent mass below zero underflowed; point mass at 0
    const double f = (std_normal_cdf((h - tg->mu) / tg->sigma) - lower) / norm;
    return std::clamp(f, 0.0, 1.0);
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    return (h >= u->h_max) ? 1.0 : h / u->h_max;
  }
  const auto& tab = std::get<Tabulated>(law_);
  if (h <= tab.heights.front()) return 0.0;
  if (h >= tab.heights.back()) return 1.0;
  const auto it = std::upper_bound(tab.heights.begin(), tab.heights.end(), h);
  const std::size_t i = static_cast<std::size_t>(it - tab.heights.begin()) - 1;
  const double t = (h - tab.heights[i]) / (tab.heights[i + 1] - tab.heights[i]);
  return tab.cdf[i] + t * (tab.cdf[i + 1] - tab.cdf[i]);
}

double HeightDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::domain_error("HeightDistribution::quantile: u must be in [0, 1)");
  }
  if (const auto* tg = std::get_if<TruncatedGaussian>(&law_)) {
    const double lower = std_normal_cdf(-tg->mu / tg->sigma);
    const double norm = std_normal_cdf(tg->mu / tg->sigma);
    double p = lower + u * norm;
    p = std::min(p, std::nextafter(1.0, 0.0));
    const double h = tg->mu + tg->sigma * std_normal_quantile(p);
    return std::max(h, 0.0);
  }
  if (const auto* uni = std::get_if<Uniform>(&law_)) {
    return u * uni->h_max;
  }
  const auto& tab = std::get<Tabulated>(law_);
  const auto it = std::upper_bound(tab.cdf.begin(), tab.cdf.end(), u);
  if (it == tab.cdf.begin()) return tab.heights.front();
  const std::size_t hi = static_cast<std::size_t>(it - tab.cdf.begin());
  if (hi >= tab.cdf.size()) return tab.heights.back();
  const std::size_t lo = hi - 1;
  const double span = tab.cdf[hi] - tab.cdf[lo];
  if (span <= 0.0) return tab.heights[lo];
  const double t = (u - tab.cdf[lo]) / span;
  return tab.heights[lo] + t * (tab.heights[hi] - tab.heights[lo]);
}

double HeightDistribution::sample(RngStream& rng) const {
  return quantile(rng.next_unit());
}

double HeightDistribution::support_max() const {
  if (std::holds_alternative<TruncatedGaussian>(law_)) {
    return std::numeric_limits<double>::infinity();
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) return u->h_max;
  return std::get<Tabulated>(law_).heights.back();
}

bool HeightDistribution::is_truncated_gaussian() const {
  return std::holds_alternative<TruncatedGaussian>(law_);
}
bool HeightDistribution::is_uniform() const {
  return std::holds_alternative<Uniform>(law_);
}
bool HeightDistribution::is_tabulated() const {
  return std::holds_alternative<Tabulated>(law_);
}

const TruncatedGaussian& HeightDistribution::as_truncated_gaussian() const {
  return std::get<TruncatedGaussian>(law_);
}
const Uniform& HeightDistribution::as_uniform() const {
  return std::get<Uniform>(law_);
}
const Tabulated& HeightDistribution::as_tabulated() const {
  return std::get<Tabulated>(law_);
}

}  // namespace forestlink
