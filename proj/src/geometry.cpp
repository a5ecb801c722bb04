#include "forestlink/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "forestlink/errors.hpp"

namespace forestlink {

double derive_line_density(double lambda_f, double mean_width) {
  if (!(lambda_f >= 0.0)) {
    throw std::invalid_argument("derive_line_density: lambda_f must be >= 0");
  }
  if (!(mean_width >= 0.0)) {
    throw std::invalid_argument("derive_line_density: mean_width must be >= 0");
  }
  return lambda_f * mean_width;
}

ForestModel::ForestModel(double lambda0_in, HeightDistribution heights_in)
    : lambda0(lambda0_in), heights(std::move(heights_in)) {
  if (!(lambda0 >= 0.0)) {
    throw std::invalid_argument("ForestModel: lambda0 must be >= 0");
  }
}

LinkGeometry::LinkGeometry(double h_g, double h_a, double x_span)
    : h_g_(h_g), h_a_(h_a), x_span_(x_span) {
  if (!(h_g >= 0.0)) {
    throw std::invalid_argument("LinkGeometry: h_g must be >= 0");
  }
  if (!(h_a >= h_g)) {
    throw std::invalid_argument("LinkGeometry: h_a must be >= h_g");
  }
  if (!(x_span > 0.0)) {
    throw std::invalid_argument("LinkGeometry: x_span must be > 0");
  }
}

LinkGeometry LinkGeometry::ground_ground(double h_g, double x_g) {
  return LinkGeometry(h_g, h_g, x_g);
}

LinkGeometry LinkGeometry::ground_air(double h_g, double h_a, double x_a) {
  return LinkGeometry(h_g, h_a, x_a);
}

double LinkGeometry::critical_height(double x) const {
  if (!(x >= 0.0 && x <= x_span_)) {
    throw std::domain_error("critical_height: x outside [0, x_span]");
  }
  return h_g_ + (h_a_ - h_g_) * (x / x_span_);
}

double LinkGeometry::critical_distance(double h_max) const {
  if (is_ground_ground()) {
    throw degenerate_geometry_error(
        "critical_distance: h_a == h_g, critical height is constant");
  }
  return std::max(0.0, (h_max - h_g_) / (h_a_ - h_g_) * x_span_);
}

}  // namespace forestlink
