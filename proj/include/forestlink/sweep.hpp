#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "forestlink/scenario.hpp"

namespace forestlink {

// One sample of a sweep. For a two-asset scenario, "direct" is the
// ground-ground link and "relayed" the two-hop path through the air asset;
// for a ground-air-only scenario (xg = none) the direct columns describe
// the single ground-air hop and the relayed columns are NaN.
struct SweepRow {
  double sweep_value;
  double p_los_direct;
  double p_los_relayed;
  double capacity_bps;
  double throughput_direct_bps;
  double throughput_relayed_bps;
  std::optional<double> mc_p_hat;
  std::optional<double> mc_std_err;
};

struct SweepResult {
  bool has_mc = false;
  std::vector<SweepRow> rows;

  std::vector<std::string> column_names() const;
};

// Evaluates the configured sweep; requires config.sweep. When Monte Carlo
// columns are requested they estimate the relayed end-to-end LoS when a
// relay exists and the direct-link LoS otherwise, with per-row seeds
// derived from the configured seed.
SweepResult run_sweep(const ScenarioConfig& config);

// RFC-4180ish CSV with a '#' units comment ahead of the header; values at
// full precision so that parsing reproduces them bit for bit.
void write_csv(std::ostream& out, const SweepResult& result);
std::string csv_to_string(const SweepResult& result);
SweepResult read_csv(std::istream& in);

}  // namespace forestlink
