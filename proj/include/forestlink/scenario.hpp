#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forestlink/geometry.hpp"
#include "forestlink/link_budget.hpp"
#include "forestlink/montecarlo.hpp"

namespace forestlink {

enum class SweepVariable { x_g, x_a, h_a };

const char* to_string(SweepVariable v);

struct SweepSpec {
  SweepVariable variable = SweepVariable::x_a;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  bool with_mc = false;

  bool operator==(const SweepSpec&) const = default;
};

// One scenario: forest, link geometry, link budget, Monte Carlo settings,
// and an optional sweep. Defaults describe the canonical truncated-Gaussian
// forest this tool ships with.
//
// Geometry conventions:
//   xg absent   -> single ground-air link study (span = xa)
//   xa absent   -> relay at the midpoint of the two ground assets
//   ha absent   -> altitude chosen by the planner per evaluation
struct ScenarioConfig {
  double lambda0 = 0.02;
  HeightDistribution heights = HeightDistribution::truncated_gaussian(19.0, 10.0);

  double hg = 2.0;
  std::optional<double> ha = 100.0;
  std::optional<double> xg = 120.0;
  std::optional<double> xa;

  LinkBudget budget{51.98, 2.3, 20e6, 1.0};
  McConfig mc{};

  std::optional<SweepSpec> sweep;

  // Relay horizontal position for a two-asset scenario.
  double resolve_xa(double x_g) const { return xa ? *xa : x_g / 2.0; }

  ForestModel forest() const { return ForestModel(lambda0, heights); }

  bool operator==(const ScenarioConfig&) const = default;
};

// INI-style text with sections [forest], [geometry], [budget], [mc],
// [sweep]. Unknown sections or keys are config_errors naming the offender;
// keys omitted keep the defaults above. Keywords: "none" clears xg/ha,
// "midpoint" clears xa, "optimal" clears ha.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

// Applies "key = value" overrides to one section of an existing config
// with the same interpretation and validation as file parsing. This is how
// command-line flags override a loaded config.
void apply_config_overrides(ScenarioConfig& config, const std::string& section,
                            const std::vector<std::pair<std::string, std::string>>& pairs);

void write_config(std::ostream& out, const ScenarioConfig& config);
std::string config_to_string(const ScenarioConfig& config);

}  // namespace forestlink
