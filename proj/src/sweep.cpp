#include "forestlink/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "forestlink/errors.hpp"
#include "forestlink/planner.hpp"

namespace forestlink {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Product estimate for two independently simulated hops.
std::pair<double, double> combine_hops(const McEstimate& a, const McEstimate& b) {
  const double p = a.p_hat * b.p_hat;
  const double se = std::sqrt(b.p_hat * b.p_hat * a.std_err * a.std_err +
                              a.p_hat * a.p_hat * b.std_err * b.std_err);
  return {p, se};
}

SweepRow evaluate_row(const ScenarioConfig& cfg, const SweepSpec& spec, std::size_t row_index,
                      double value) {
  ScenarioConfig point = cfg;
  switch (spec.variable) {
    case SweepVariable::x_g: point.xg = value; break;
    case SweepVariable::x_a: point.xa = value; break;
    case SweepVariable::h_a: point.ha = value; break;
  }

  SweepRow row{};
  row.sweep_value = value;

  const ForestModel forest = point.forest();

  if (!point.xg) {
    // single ground-air link; span is xa
    if (!point.xa) {
      throw config_error("[sweep] xa: required when xg = none");
    }
    if (!point.ha) {
      throw config_error("[sweep] ha: 'optimal' needs a two-asset scenario (set xg)");
    }
    const double span = *point.xa;
    const LinkGeometry geom = LinkGeometry::ground_air(point.hg, *point.ha, span);
    const LosResult los = p_los(forest, geom);
    const double dist = std::hypot(span, *point.ha - point.hg);
    row.p_los_direct = los.p_los;
    row.capacity_bps = capacity_bps(point.budget, dist);
    row.throughput_direct_bps = los.p_los * row.capacity_bps;
    row.p_los_relayed = kNan;
    row.throughput_relayed_bps = kNan;
    if (spec.with_mc) {
      McConfig mc = point.mc;
      mc.seed = derive_seed(point.mc.seed, row_index);
      const McEstimate est = simulate_los(forest, geom, mc);
      row.mc_p_hat = est.p_hat;
      row.mc_std_err = est.std_err;
    }
    return row;
  }

  const double x_g = *point.xg;
  const ThroughputResult direct = throughput_direct(forest, point.budget, x_g, point.hg);
  row.p_los_direct = direct.p_los_end_to_end;
  row.capacity_bps = direct.capacity_bps;
  row.throughput_direct_bps = direct.throughput_bps;

  double h_a;
  if (point.ha) {
    h_a = *point.ha;
  } else {
    h_a = optimize_altitude(forest, point.budget, x_g, point.hg,
                            default_altitude_range(point.hg))
              .optimum;
  }
  const double x_a = point.ha ? point.resolve_xa(x_g) : x_g / 2.0;
  if (!(x_a > 0.0 && x_a < x_g)) {
    throw config_error("[sweep] xa: relay position " + fmt(x_a) + " outside (0, xg)");
  }
  const ThroughputResult relayed =
      throughput_relayed(forest, point.budget, x_g, point.hg, h_a, x_a);
  row.p_los_relayed = relayed.p_los_end_to_end;
  row.throughput_relayed_bps = relayed.throughput_bps;

  if (spec.with_mc) {
    McConfig mc = point.mc;
    const double rise_span_ga = x_a;
    const double rise_span_ag = x_g - x_a;
    mc.seed = derive_seed(point.mc.seed, 2 * row_index);
    const McEstimate hop1 =
        simulate_los(forest, LinkGeometry::ground_air(point.hg, h_a, rise_span_ga), mc);
    mc.seed = derive_seed(point.mc.seed, 2 * row_index + 1);
    const McEstimate hop2 =
        simulate_los(forest, LinkGeometry::ground_air(point.hg, h_a, rise_span_ag), mc);
    const auto [p, se] = combine_hops(hop1, hop2);
    row.mc_p_hat = p;
    row.mc_std_err = se;
  }
  return row;
}

}  // namespace

std::vector<std::string> SweepResult::column_names() const {
  std::vector<std::string> names = {"sweep_value",       "p_los_direct",
                                    "p_los_relayed",     "capacity",
                                    "throughput_direct", "throughput_relayed"};
  if (has_mc) {
    names.emplace_back("mc_p_hat");
    names.emplace_back("mc_std_err");
  }
  return names;
}

SweepResult run_sweep(const ScenarioConfig& config) {
  if (!config.sweep) throw config_error("[sweep] section required for a sweep run");
  const SweepSpec& spec = *config.sweep;

  SweepResult result;
  result.has_mc = spec.with_mc;
  const auto steps =
      static_cast<std::size_t>(std::floor((spec.stop - spec.start) / spec.step + 1e-9));
  result.rows.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double value = spec.start + static_cast<double>(i) * spec.step;
    result.rows.push_back(evaluate_row(config, spec, i, value));
  }
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "# sweep_value: m; p_los_*: probability; capacity, throughput_*: bit/s\n";
  const auto names = result.column_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ",";
    out << names[i];
  }
  out << "\n";
  for (const SweepRow& row : result.rows) {
    out << fmt(row.sweep_value) << "," << fmt(row.p_los_direct) << ","
        << fmt(row.p_los_relayed) << "," << fmt(row.capacity_bps) << ","
        << fmt(row.throughput_direct_bps) << "," << fmt(row.throughput_relayed_bps);
    if (result.has_mc) {
      out << "," << fmt(row.mc_p_hat.value_or(kNan)) << "," << fmt(row.mc_std_err.value_or(kNan));
    }
    out << "\n";
  }
}

std::string csv_to_string(const SweepResult& result) {
  std::ostringstream out;
  write_csv(out, result);
  return out.str();
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!header_seen) {
      header_seen = true;
      result.has_mc = fields.size() == 8;
      if (fields.size() != 6 && fields.size() != 8) {
        throw config_error("csv: expected 6 or 8 columns, got " + std::to_string(fields.size()));
      }
      continue;
    }
    if (fields.size() != (result.has_mc ? 8u : 6u)) {
      throw config_error("csv: row with wrong field count: '" + line + "'");
    }
    SweepRow row{};
    row.sweep_value = std::stod(fields[0]);
    row.p_los_direct = std::stod(fields[1]);
    row.p_los_relayed = std::stod(fields[2]);
    row.capacity_bps = std::stod(fields[3]);
    row.throughput_direct_bps = std::stod(fields[4]);
    row.throughput_relayed_bps = std::stod(fields[5]);
    if (result.has_mc) {
      row.mc_p_hat = std::stod(fields[6]);
      row.mc_std_err = std::stod(fields[7]);
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace forestlink
