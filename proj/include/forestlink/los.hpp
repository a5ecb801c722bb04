#pragma once

#include "forestlink/geometry.hpp"

namespace forestlink {

enum class LosMethod { homogeneous, closed_form_gaussian, closed_form_uniform, quadrature };

const char* to_string(LosMethod method);

// LoS probability plus the void-probability exponent, i.e. the expected
// number of obstacles tall enough to block. p_los == exp(-expected_blockers)
// by construction; the exponent is the better-conditioned quantity when
// p_los is near 1.
struct LosResult {
  double p_los;
  double expected_blockers;
  LosMethod method;
};

// Thinned obstacle density lambda0 * (1 - F_H(h_c(x))) at position x along
// the sightline.
double density_at(const ForestModel& forest, const LinkGeometry& geom, double x);

// Homogeneous void probability between two ground devices at height h_g
// separated by x_g.
LosResult p_los_ground_ground(const ForestModel& forest, double x_g, double h_g);

// Closed form for a truncated-Gaussian height law; requires h_a > h_g.
LosResult p_los_ground_air_gaussian(const ForestModel& forest, const LinkGeometry& geom);

// Closed form for a uniform height law; requires h_a > h_g.
LosResult p_los_ground_air_uniform(const ForestModel& forest, const LinkGeometry& geom);

// Numerical integration of the thinned density; works for any height law
// and serves as the cross-check for both closed forms.
LosResult p_los_ground_air_quadrature(const ForestModel& forest, const LinkGeometry& geom,
                                      double rel_tol = 1e-10);

// Dispatch: homogeneous for ground-ground geometry, a closed form where the
// height law has one, quadrature otherwise.
LosResult p_los(const ForestModel& forest, const LinkGeometry& geom);

}  // namespace forestlink
