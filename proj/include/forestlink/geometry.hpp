#pragma once

#include "forestlink/heights.hpp"

namespace forestlink {

// 1-D obstacle line density along a sightline, lambda0 = E(w) * lambda_f.
double derive_line_density(double lambda_f, double mean_width);

// Obstacles along a sightline: Poisson line density plus a height law.
struct ForestModel {
  ForestModel(double lambda0, HeightDistribution heights);

  double lambda0;  // expected obstacles per meter
  HeightDistribution heights;

  bool operator==(const ForestModel&) const = default;
};

// One link: device heights at both ends and the horizontal separation.
// Ground-ground links are represented with equal heights; LoS code
// dispatches on that equality instead of evaluating a flat sightline.
class LinkGeometry {
public:
  static LinkGeometry ground_ground(double h_g, double x_g);
  static LinkGeometry ground_air(double h_g, double h_a, double x_a);

  double ground_height() const { return h_g_; }
  double air_height() const { return h_a_; }
  double span() const { return x_span_; }
  bool is_ground_ground() const { return h_a_ == h_g_; }

  // Minimum obstacle height that intersects the sightline at horizontal
  // position x, linear from h_g at x=0 to h_a at x=span.
  double critical_height(double x) const;

  // Position beyond which no obstacle of height <= h_max can block.
  // Clamped to 0 when h_max <= h_g; may exceed span when h_max >= h_a.
  double critical_distance(double h_max) const;

  bool operator==(const LinkGeometry&) const = default;

private:
  LinkGeometry(double h_g, double h_a, double x_span);

  double h_g_;
  double h_a_;
  double x_span_;
};

}  // namespace forestlink
