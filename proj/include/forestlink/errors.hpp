#pragma once

#include <stdexcept>
#include <string>

namespace forestlink {

// Link geometry with h_a == h_g where a ground-air formula was requested;
// callers must use the homogeneous path instead.
struct degenerate_geometry_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Adaptive integration ran out of subdivisions before reaching tolerance.
struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coarse scan put the optimum at the edge of the search range.
struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root bracketing failed: objective has the same sign at both endpoints.
struct no_sign_change_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent scenario configuration; message names the field.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace forestlink
