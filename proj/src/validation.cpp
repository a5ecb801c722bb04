#include "forestlink/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "forestlink/planner.hpp"

namespace forestlink {

namespace {

constexpr double kCanonicalLambda0 = 0.02;
constexpr double kCanonicalHg = 2.0;

LinkBudget canonical_budget() { return LinkBudget{51.98, 2.3, 20e6, 1.0}; }

std::string scenario_name(const char* dist, const char* kind, double span, double h_a) {
  std::ostringstream name;
  name << dist << " " << kind << " span=" << span;
  if (h_a > 0.0) name << " ha=" << h_a;
  return name.str();
}

void add_reference_lines(ValidationReport& report) {
  const ForestModel forest(kCanonicalLambda0, HeightDistribution::truncated_gaussian(19.0, 10.0));
  const LinkBudget budget = canonical_budget();

  const double peak_reference_altitude[] = {77.0, 134.0, 230.0};
  const double peak_reference_mbps[] = {100.6, 82.7, 65.5};
  const double separations[] = {50.0, 100.0, 200.0};
  for (int i = 0; i < 3; ++i) {
    const PlanResult peak = optimize_altitude(forest, budget, separations[i], kCanonicalHg,
                                              default_altitude_range(kCanonicalHg));
    std::ostringstream label;
    label << "peak altitude (m), xg=" << separations[i];
    report.references.push_back({label.str(), peak.optimum, peak_reference_altitude[i]});
    std::ostringstream label2;
    label2 << "peak throughput (Mbps), xg=" << separations[i];
    report.references.push_back({label2.str(), peak.objective_bps / 1e6, peak_reference_mbps[i]});
  }

  const PlanResult cross =
      crossover_distance(forest, budget, kCanonicalHg, default_altitude_range(kCanonicalHg),
                         kDefaultCrossoverRange);
  report.references.push_back({"crossover distance (m)", cross.optimum, 52.9});
  report.references.push_back({"crossover throughput (Mbps)", cross.objective_bps / 1e6, 99.0});
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.pass(); });
}

std::vector<ValidationScenario> default_validation_grid() {
  std::vector<ValidationScenario> grid;
  const struct {
    const char* name;
    HeightDistribution heights;
  } laws[] = {
      {"gaussian", HeightDistribution::truncated_gaussian(19.0, 10.0)},
      {"uniform", HeightDistribution::uniform(29.0)},
  };

  for (const auto& law : laws) {
    const ForestModel forest(kCanonicalLambda0, law.heights);
    for (double x_a : {20.0, 60.0, 100.0, 200.0}) {
      for (double h_a : {50.0, 100.0, 200.0}) {
        grid.push_back({scenario_name(law.name, "ground-air", x_a, h_a), forest,
                        LinkGeometry::ground_air(kCanonicalHg, h_a, x_a)});
      }
    }
    for (double x_g : {30.0, 60.0, 120.0}) {
      grid.push_back({scenario_name(law.name, "ground-ground", x_g, 0.0), forest,
                      LinkGeometry::ground_ground(kCanonicalHg, x_g)});
    }
  }
  return grid;
}

ValidationReport run_validation(const std::vector<ValidationScenario>& scenarios,
                                const ValidationOptions& options) {
  const GroundAirSolver solver =
      options.solver ? options.solver
                     : [](const ForestModel& f, const LinkGeometry& g) { return p_los(f, g); };

  ValidationReport report;
  report.rows.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const ValidationScenario& sc = scenarios[i];
    ValidationRow row{};
    row.name = sc.name;

    const LosResult closed = solver(sc.forest, sc.geometry);
    const LosResult quad =
        p_los_ground_air_quadrature(sc.forest, sc.geometry, options.quadrature_rel_tol);
    row.p_closed = closed.p_los;
    row.p_quadrature = quad.p_los;
    const double scale = std::max(std::abs(quad.p_los), 1e-300);
    row.rel_err = std::abs(closed.p_los - quad.p_los) / scale;
    row.closed_vs_quad_pass = row.rel_err <= options.closed_vs_quad_rel_tol;

    McConfig mc = options.mc;
    mc.seed = derive_seed(options.mc.seed, i);
    const McEstimate est = simulate_los(sc.forest, sc.geometry, mc);
    row.mc_p_hat = est.p_hat;
    row.mc_std_err = est.std_err;
    const double err = std::abs(est.p_hat - closed.p_los);
    row.mc_sigmas = (est.std_err > 0.0) ? err / est.std_err : (err == 0.0 ? 0.0 : 1e9);
    row.mc_pass = err <= options.mc_sigma_limit * est.std_err + 1e-12;

    report.rows.push_back(std::move(row));
  }

  if (options.with_references) add_reference_lines(report);
  return report;
}

void print_validation(std::ostream& out, const ValidationReport& report) {
  char buf[256];
  out << "scenario | closed | quadrature | rel_err | mc_p_hat | mc_se | sigmas | status\n";
  for (const ValidationRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%-34s %.9f %.9f %.2e %.6f %.6f %5.2f %s",
                  row.name.c_str(), row.p_closed, row.p_quadrature, row.rel_err, row.mc_p_hat,
                  row.mc_std_err, row.mc_sigmas, row.pass() ? "PASS" : "FAIL");
    out << buf << "\n";
  }
  if (!report.references.empty()) {
    out << "\nplanner results vs tabulated reference values (informational):\n";
    for (const ReferenceLine& line : report.references) {
      std::snprintf(buf, sizeof(buf), "%-34s computed=%.4f reference=%.4f",
                    line.quantity.c_str(), line.computed, line.reference);
      out << buf << "\n";
    }
  }
  out << "\noverall: " << (report.all_pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace forestlink
