#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "forestlink/los.hpp"
#include "forestlink/montecarlo.hpp"

namespace forestlink {

struct ValidationScenario {
  std::string name;
  ForestModel forest;
  LinkGeometry geometry;
};

struct ValidationRow {
  std::string name;
  double p_closed;
  double p_quadrature;
  double rel_err;
  bool closed_vs_quad_pass;
  double mc_p_hat;
  double mc_std_err;
  double mc_sigmas;
  bool mc_pass;

  bool pass() const { return closed_vs_quad_pass && mc_pass; }
};

// Planner output next to the tabulated reference value for that quantity.
struct ReferenceLine {
  std::string quantity;
  double computed;
  double reference;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::vector<ReferenceLine> references;

  bool all_pass() const;
};

using GroundAirSolver = std::function<LosResult(const ForestModel&, const LinkGeometry&)>;

struct ValidationOptions {
  McConfig mc{};
  double closed_vs_quad_rel_tol = 1e-9;
  double mc_sigma_limit = 3.9;
  double quadrature_rel_tol = 1e-12;
  bool with_references = true;
  // Analytic LoS evaluator under test; empty = the p_los dispatch. Swappable
  // so a deliberately corrupted evaluator can prove the checks have teeth.
  GroundAirSolver solver{};
};

// Canonical scenario grid: both height laws, ground-air spans
// {20, 60, 100, 200} x altitudes {50, 100, 200}, and ground-ground
// separations {30, 60, 120}.
std::vector<ValidationScenario> default_validation_grid();

// For every scenario: closed form vs quadrature at rel tol, then Monte
// Carlo agreement within mc_sigma_limit standard errors.
ValidationReport run_validation(const std::vector<ValidationScenario>& scenarios,
                                const ValidationOptions& options);

void print_validation(std::ostream& out, const ValidationReport& report);

}  // namespace forestlink
