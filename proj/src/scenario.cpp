#include "forestlink/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "forestlink/errors.hpp"

namespace forestlink {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& section, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw config_error("[" + section + "] " + key + ": not a number: '" + value + "'");
  }
}

std::int64_t parse_integer(const std::string& section, const std::string& key,
                           const std::string& value) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw config_error("[" + section + "] " + key + ": not an integer: '" + value + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& section, const std::string& key,
                             const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw config_error("[" + section + "] " + key + ": not an unsigned integer: '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw config_error("[" + section + "] " + key + ": expected true/false, got '" + value + "'");
}

// "h:F, h:F, ..." pairs for a tabulated height law.
void parse_table(const std::string& value, std::vector<double>& heights,
                 std::vector<double>& cdf) {
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw config_error("[forest] table: expected 'h:F' pairs, got '" + item + "'");
    }
    heights.push_back(parse_number("forest", "table", trim(item.substr(0, colon))));
    cdf.push_back(parse_number("forest", "table", trim(item.substr(colon + 1))));
  }
}

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Raw key/value text grouped by section, before interpretation.
using SectionMap = std::map<std::string, std::vector<std::pair<std::string, std::string>>>;

SectionMap read_sections(std::istream& in) {
  SectionMap sections;
  std::string line;
  std::string current;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw config_error("line " + std::to_string(line_no) + ": unterminated section header");
      }
      current = trim(line.substr(1, line.size() - 2));
      if (current != "forest" && current != "geometry" && current != "budget" &&
          current != "mc" && current != "sweep") {
        throw config_error("unknown section [" + current + "]");
      }
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (current.empty()) {
      throw config_error("line " + std::to_string(line_no) + ": key outside any section");
    }
    sections[current].emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return sections;
}

void apply_forest(ScenarioConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string dist;
  std::optional<double> mu, sigma, hmax;
  std::vector<double> table_h, table_f;
  for (const auto& [key, value] : kv) {
    if (key == "lambda0") {
      cfg.lambda0 = parse_number("forest", key, value);
    } else if (key == "dist") {
      dist = value;
    } else if (key == "mu") {
      mu = parse_number("forest", key, value);
    } else if (key == "sigma") {
      sigma = parse_number("forest", key, value);
    } else if (key == "hmax") {
      hmax = parse_number("forest", key, value);
    } else if (key == "table") {
      parse_table(value, table_h, table_f);
    } else {
      throw config_error("[forest] unknown key '" + key + "'");
    }
  }
  if (!(cfg.lambda0 >= 0.0)) throw config_error("[forest] lambda0: must be >= 0");
  try {
    if (dist.empty()) {
      // keep the current law, but honour parameter overrides for its kind
      if ((mu || sigma) && !cfg.heights.is_truncated_gaussian()) {
        throw config_error("[forest] mu/sigma: only meaningful for dist = gaussian");
      }
      if (hmax && !cfg.heights.is_uniform()) {
        throw config_error("[forest] hmax: only meaningful for dist = uniform");
      }
      if (cfg.heights.is_truncated_gaussian() && (mu || sigma)) {
        const auto& tg = cfg.heights.as_truncated_gaussian();
        cfg.heights = HeightDistribution::truncated_gaussian(mu.value_or(tg.mu),
                                                             sigma.value_or(tg.sigma));
      } else if (cfg.heights.is_uniform() && hmax) {
        cfg.heights = HeightDistribution::uniform(*hmax);
      } else if (!table_h.empty()) {
        cfg.heights = HeightDistribution::tabulated(table_h, table_f);
      }
    } else if (dist == "gaussian") {
      cfg.heights = HeightDistribution::truncated_gaussian(mu.value_or(19.0),
                                                           sigma.value_or(10.0));
    } else if (dist == "uniform") {
      if (!hmax) throw config_error("[forest] hmax: required for dist = uniform");
      cfg.heights = HeightDistribution::uniform(*hmax);
    } else if (dist == "tabulated") {
      if (table_h.empty()) throw config_error("[forest] table: required for dist = tabulated");
      cfg.heights = HeightDistribution::tabulated(table_h, table_f);
    } else {
      throw config_error("[forest] dist: expected gaussian|uniform|tabulated, got '" + dist + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("[forest] ") + e.what());
  }
}

void apply_geometry(ScenarioConfig& cfg,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "hg") {
      cfg.hg = parse_number("geometry", key, value);
    } else if (key == "ha") {
      if (value == "optimal") {
        cfg.ha.reset();
      } else {
        cfg.ha = parse_number("geometry", key, value);
      }
    } else if (key == "xg") {
      if (value == "none") {
        cfg.xg.reset();
      } else {
        cfg.xg = parse_number("geometry", key, value);
      }
    } else if (key == "xa") {
      if (value == "midpoint") {
        cfg.xa.reset();
      } else {
        cfg.xa = parse_number("geometry", key, value);
      }
    } else {
      throw config_error("[geometry] unknown key '" + key + "'");
    }
  }
  if (!(cfg.hg >= 0.0)) throw config_error("[geometry] hg: must be >= 0");
  if (cfg.xg && !(*cfg.xg > 0.0)) throw config_error("[geometry] xg: must be > 0");
  if (cfg.xa && !(*cfg.xa > 0.0)) throw config_error("[geometry] xa: must be > 0");
  if (cfg.ha && !(*cfg.ha >= cfg.hg)) throw config_error("[geometry] ha: must be >= hg");
}

void apply_budget(ScenarioConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "snr0_db") {
      cfg.budget.snr0_db = parse_number("budget", key, value);
    } else if (key == "alpha") {
      cfg.budget.alpha = parse_number("budget", key, value);
    } else if (key == "bandwidth_hz") {
      cfg.budget.bandwidth_hz = parse_number("budget", key, value);
    } else if (key == "d0") {
      cfg.budget.d0 = parse_number("budget", key, value);
    } else {
      throw config_error("[budget] unknown key '" + key + "'");
    }
  }
  if (!(cfg.budget.alpha > 0.0)) throw config_error("[budget] alpha: must be > 0");
  if (!(cfg.budget.bandwidth_hz > 0.0)) throw config_error("[budget] bandwidth_hz: must be > 0");
  if (!(cfg.budget.d0 > 0.0)) throw config_error("[budget] d0: must be > 0");
}

void apply_mc(ScenarioConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "trials") {
      cfg.mc.trials = parse_integer("mc", key, value);
    } else if (key == "seed") {
      cfg.mc.seed = parse_unsigned("mc", key, value);
    } else if (key == "workers") {
      cfg.mc.workers = static_cast<int>(parse_integer("mc", key, value));
    } else {
      throw config_error("[mc] unknown key '" + key + "'");
    }
  }
  if (cfg.mc.trials < 1) throw config_error("[mc] trials: must be >= 1");
}

void apply_sweep(ScenarioConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv) {
  SweepSpec spec = cfg.sweep.value_or(SweepSpec{});
  for (const auto& [key, value] : kv) {
    if (key == "variable") {
      if (value == "x_g") {
        spec.variable = SweepVariable::x_g;
      } else if (value == "x_a") {
        spec.variable = SweepVariable::x_a;
      } else if (value == "h_a") {
        spec.variable = SweepVariable::h_a;
      } else {
        throw config_error("[sweep] variable: expected x_g|x_a|h_a, got '" + value + "'");
      }
    } else if (key == "start") {
      spec.start = parse_number("sweep", key, value);
    } else if (key == "stop") {
      spec.stop = parse_number("sweep", key, value);
    } else if (key == "step") {
      spec.step = parse_number("sweep", key, value);
    } else if (key == "mc") {
      spec.with_mc = parse_bool("sweep", key, value);
    } else {
      throw config_error("[sweep] unknown key '" + key + "'");
    }
  }
  if (!(spec.step > 0.0)) throw config_error("[sweep] step: must be > 0");
  if (!(spec.start < spec.stop)) throw config_error("[sweep] start: must be < stop");
  cfg.sweep = spec;
}

}  // namespace

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::x_g: return "x_g";
    case SweepVariable::x_a: return "x_a";
    case SweepVariable::h_a: return "h_a";
  }
  return "unknown";
}

void apply_config_overrides(ScenarioConfig& config, const std::string& section,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (pairs.empty()) return;
  if (section == "forest") {
    apply_forest(config, pairs);
  } else if (section == "geometry") {
    apply_geometry(config, pairs);
  } else if (section == "budget") {
    apply_budget(config, pairs);
  } else if (section == "mc") {
    apply_mc(config, pairs);
  } else if (section == "sweep") {
    apply_sweep(config, pairs);
  } else {
    throw config_error("unknown section [" + section + "]");
  }
}

ScenarioConfig parse_config(std::istream& in) {
  const SectionMap sections = read_sections(in);
  ScenarioConfig cfg;
  if (auto it = sections.find("forest"); it != sections.end()) apply_forest(cfg, it->second);
  if (auto it = sections.find("geometry"); it != sections.end()) apply_geometry(cfg, it->second);
  if (auto it = sections.find("budget"); it != sections.end()) apply_budget(cfg, it->second);
  if (auto it = sections.find("mc"); it != sections.end()) apply_mc(cfg, it->second);
  if (auto it = sections.find("sweep"); it != sections.end()) apply_sweep(cfg, it->second);
  return cfg;
}

ScenarioConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

void write_config(std::ostream& out, const ScenarioConfig& config) {
  out << "[forest]\n";
  out << "lambda0 = " << format_full(config.lambda0) << "\n";
  if (config.heights.is_truncated_gaussian()) {
    const auto& tg = config.heights.as_truncated_gaussian();
    out << "dist = gaussian\n";
    out << "mu = " << format_full(tg.mu) << "\n";
    out << "sigma = " << format_full(tg.sigma) << "\n";
  } else if (config.heights.is_uniform()) {
    out << "dist = uniform\n";
    out << "hmax = " << format_full(config.heights.as_uniform().h_max) << "\n";
  } else {
    const auto& tab = config.heights.as_tabulated();
    out << "dist = tabulated\n";
    out << "table = ";
    for (std::size_t i = 0; i < tab.heights.size(); ++i) {
      if (i) out << ", ";
      out << format_full(tab.heights[i]) << ":" << format_full(tab.cdf[i]);
    }
    out << "\n";
  }
  out << "\n[geometry]\n";
  out << "hg = " << format_full(config.hg) << "\n";
  out << "ha = " << (config.ha ? format_full(*config.ha) : std::string("optimal")) << "\n";
  out << "xg = " << (config.xg ? format_full(*config.xg) : std::string("none")) << "\n";
  out << "xa = " << (config.xa ? format_full(*config.xa) : std::string("midpoint")) << "\n";
  out << "\n[budget]\n";
  out << "snr0_db = " << format_full(config.budget.snr0_db) << "\n";
  out << "alpha = " << format_full(config.budget.alpha) << "\n";
  out << "bandwidth_hz = " << format_full(config.budget.bandwidth_hz) << "\n";
  out << "d0 = " << format_full(config.budget.d0) << "\n";
  out << "\n[mc]\n";
  out << "trials = " << config.mc.trials << "\n";
  out << "seed = " << config.mc.seed << "\n";
  out << "workers = " << config.mc.workers << "\n";
  if (config.sweep) {
    out << "\n[sweep]\n";
    out << "variable = " << to_string(config.sweep->variable) << "\n";
    out << "start = " << format_full(config.sweep->start) << "\n";
    out << "stop = " << format_full(config.sweep->stop) << "\n";
    out << "step = " << format_full(config.sweep->step) << "\n";
    out << "mc = " << (config.sweep->with_mc ? "true" : "false") << "\n";
  }
}

std::string config_to_string(const ScenarioConfig& config) {
  std::ostringstream out;
  write_config(out, config);
  return out.str();
}

}  // namespace forestlink
