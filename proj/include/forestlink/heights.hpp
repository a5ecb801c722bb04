#pragma once

#include <variant>
#include <vector>

namespace forestlink {

class RngStream;

// Standard normal cdf, accurate to a few ulp over the double range.
double std_normal_cdf(double z);

// Inverse of std_normal_cdf for p in (0, 1); returns +-inf at the endpoints.
double std_normal_quantile(double p);

// Gaussian(mu, sigma) conditioned on non-negative values.
struct TruncatedGaussian {
  double mu;
  double sigma;
  bool operator==(const TruncatedGaussian&) const = default;
};

struct Uniform {
  double h_max;
  bool operator==(const Uniform&) const = default;
};

// Piecewise-linear cdf on a strictly increasing height grid. Exists to feed
// arbitrary height laws through the quadrature path; the closed forms
// reject it.
struct Tabulated {
  std::vector<double> heights;
  std::vector<double> cdf;
  bool operator==(const Tabulated&) const = default;
};

// Obstacle-height law. Immutable after construction, safe to share across
// threads.
class HeightDistribution {
public:
  static HeightDistribution truncated_gaussian(double mu, double sigma);
  static HeightDistribution uniform(double h_max);
  static HeightDistribution tabulated(std::vector<double> heights, std::vector<double> cdf);

  // P{H <= h}. Zero for h < 0, one beyond the upper support edge.
  double cdf(double h) const;

  // Inverse cdf for u in [0, 1).
  double quantile(double u) const;

  // Inverse-transform draw; consumes exactly one uniform variate.
  double sample(RngStream& rng) const;

  // Upper edge of the support; +inf for the truncated Gaussian.
  double support_max() const;

  bool is_truncated_gaussian() const;
  bool is_uniform() const;
  bool is_tabulated() const;
  const TruncatedGaussian& as_truncated_gaussian() const;
  const Uniform& as_uniform() const;
  const Tabulated& as_tabulated() const;

  bool operator==(const HeightDistribution&) const = default;

private:
  using Law = std::variant<TruncatedGaussian, Uniform, Tabulated>;
  explicit HeightDistribution(Law law);
  Law law_;
};

}  // namespace forestlink
