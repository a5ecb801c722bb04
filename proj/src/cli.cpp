#include "forestlink/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "forestlink/errors.hpp"
#include "forestlink/planner.hpp"
#include "forestlink/sweep.hpp"
#include "forestlink/validation.hpp"

namespace forestlink::cli {

namespace {

std::string fmt(double v, const char* spec) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// Probabilities print with 6 significant digits, throughput in Mbps with
// one decimal; --precision full switches everything to %.17g.
struct Printer {
  bool full = false;
  std::string prob(double v) const { return fmt(v, full ? "%.17g" : "%.6g"); }
  std::string num(double v) const { return fmt(v, full ? "%.17g" : "%.6g"); }
  std::string mbps(double bps) const { return fmt(bps / 1e6, full ? "%.17g" : "%.1f"); }
};

using KvList = std::vector<std::pair<std::string, std::string>>;

// Collects flag values as raw strings and funnels them through the same
// section appliers as config files, so flags override --config and share
// its validation and error wording.
struct ScenarioFlags {
  std::string config_path;
  std::string precision = "default";

  std::string lambda0, dist, mu, sigma, hmax, table;
  std::string hg, ha, xg, xa;
  std::string snr0_db, alpha, bandwidth_hz, d0;
  std::string trials, seed, workers;
  std::string var, start, stop, step, sweep_mc;

  CLI::Option* o_lambda0 = nullptr;
  CLI::Option* o_dist = nullptr;
  CLI::Option* o_mu = nullptr;
  CLI::Option* o_sigma = nullptr;
  CLI::Option* o_hmax = nullptr;
  CLI::Option* o_table = nullptr;
  CLI::Option* o_hg = nullptr;
  CLI::Option* o_ha = nullptr;
  CLI::Option* o_xg = nullptr;
  CLI::Option* o_xa = nullptr;
  CLI::Option* o_snr0 = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_bandwidth = nullptr;
  CLI::Option* o_d0 = nullptr;
  CLI::Option* o_trials = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_workers = nullptr;
  CLI::Option* o_var = nullptr;
  CLI::Option* o_start = nullptr;
  CLI::Option* o_stop = nullptr;
  CLI::Option* o_step = nullptr;
  CLI::Option* o_sweep_mc = nullptr;

  void attach_common(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "scenario config file (INI sections)");
    cmd->add_option("--precision", precision, "output precision")
        ->check(CLI::IsMember({"default", "full"}));
  }

  void attach_forest(CLI::App* cmd) {
    o_lambda0 = cmd->add_option("--lambda0", lambda0, "obstacle line density (1/m)");
    o_dist = cmd->add_option("--dist", dist, "height law: gaussian|uniform|tabulated");
    o_mu = cmd->add_option("--mu", mu, "gaussian mean height (m)");
    o_sigma = cmd->add_option("--sigma", sigma, "gaussian height std dev (m)");
    o_hmax = cmd->add_option("--hmax", hmax, "uniform maximum height (m)");
    o_table = cmd->add_option("--table", table, "tabulated cdf as 'h:F,h:F,...'");
  }

  void attach_geometry(CLI::App* cmd) {
    o_hg = cmd->add_option("--hg", hg, "ground device height (m)");
    o_ha = cmd->add_option("--ha", ha, "air device height (m), or 'optimal'");
    o_xg = cmd->add_option("--xg", xg, "ground separation (m), or 'none'");
    o_xa = cmd->add_option("--xa", xa, "air asset position (m), or 'midpoint'");
  }

  void attach_budget(CLI::App* cmd) {
    o_snr0 = cmd->add_option("--snr0", snr0_db, "reference SNR at d0 (dB)");
    o_alpha = cmd->add_option("--alpha", alpha, "path-loss exponent");
    o_bandwidth = cmd->add_option("--bandwidth", bandwidth_hz, "bandwidth (Hz)");
    o_d0 = cmd->add_option("--d0", d0, "reference distance (m)");
  }

  void attach_mc(CLI::App* cmd) {
    o_trials = cmd->add_option("--trials", trials, "Monte Carlo trials");
    o_seed = cmd->add_option("--seed", seed, "Monte Carlo seed");
    o_workers = cmd->add_option("--workers", workers, "worker threads (0 = auto)");
  }

  void attach_sweep(CLI::App* cmd) {
    o_var = cmd->add_option("--var", var, "sweep variable: x_g|x_a|h_a");
    o_start = cmd->add_option("--start", start, "sweep start");
    o_stop = cmd->add_option("--stop", stop, "sweep stop");
    o_step = cmd->add_option("--step", step, "sweep step");
    o_sweep_mc = cmd->add_option("--mc", sweep_mc, "add Monte Carlo columns: true|false");
  }

  ScenarioConfig build() const {
    ScenarioConfig cfg =
        config_path.empty() ? ScenarioConfig{} : parse_config_file(config_path);

    auto add = [](KvList& kv, const CLI::Option* opt, const char* key, const std::string& val) {
      if (opt != nullptr && opt->count() > 0) kv.emplace_back(key, val);
    };

    KvList forest;
    add(forest, o_lambda0, "lambda0", lambda0);
    add(forest, o_dist, "dist", dist);
    add(forest, o_mu, "mu", mu);
    add(forest, o_sigma, "sigma", sigma);
    add(forest, o_hmax, "hmax", hmax);
    add(forest, o_table, "table", table);
    apply_config_overrides(cfg, "forest", forest);

    KvList geometry;
    add(geometry, o_hg, "hg", hg);
    add(geometry, o_ha, "ha", ha);
    add(geometry, o_xg, "xg", xg);
    add(geometry, o_xa, "xa", xa);
    apply_config_overrides(cfg, "geometry", geometry);

    KvList budget;
    add(budget, o_snr0, "snr0_db", snr0_db);
    add(budget, o_alpha, "alpha", alpha);
    add(budget, o_bandwidth, "bandwidth_hz", bandwidth_hz);
    add(budget, o_d0, "d0", d0);
    apply_config_overrides(cfg, "budget", budget);

    KvList mc;
    add(mc, o_trials, "trials", trials);
    add(mc, o_seed, "seed", seed);
    add(mc, o_workers, "workers", workers);
    apply_config_overrides(cfg, "mc", mc);

    KvList sweep;
    add(sweep, o_var, "variable", var);
    add(sweep, o_start, "start", start);
    add(sweep, o_stop, "stop", stop);
    add(sweep, o_step, "step", step);
    add(sweep, o_sweep_mc, "mc", sweep_mc);
    apply_config_overrides(cfg, "sweep", sweep);

    return cfg;
  }

  Printer printer() const { return Printer{precision == "full"}; }
};

double require_xg(const ScenarioConfig& cfg) {
  if (!cfg.xg) throw config_error("[geometry] xg: required for this command");
  return *cfg.xg;
}

double require_ha(const ScenarioConfig& cfg) {
  if (!cfg.ha) throw config_error("[geometry] ha: a numeric value is required here");
  return *cfg.ha;
}

// Span of the ground-air link under study: explicit xa, or half of xg.
double ground_air_span(const ScenarioConfig& cfg) {
  if (cfg.xa) return *cfg.xa;
  if (cfg.xg) return *cfg.xg / 2.0;
  throw config_error("[geometry] xa: required when xg is not set");
}

void print_los(std::ostream& out, const Printer& p, const LosResult& r) {
  out << "p_los=" << p.prob(r.p_los) << " expected_blockers=" << p.num(r.expected_blockers)
      << " method=" << to_string(r.method) << "\n";
}

void cmd_los_gg(const ScenarioFlags& flags, std::ostream& out) {
  const ScenarioConfig cfg = flags.build();
  const LosResult r = p_los_ground_ground(cfg.forest(), require_xg(cfg), cfg.hg);
  print_los(out, flags.printer(), r);
}

void cmd_los_ga(const ScenarioFlags& flags, const std::string& method, double tol,
                std::ostream& out) {
  const ScenarioConfig cfg = flags.build();
  const ForestModel forest = cfg.forest();
  const LinkGeometry geom =
      LinkGeometry::ground_air(cfg.hg, require_ha(cfg), ground_air_span(cfg));
  LosResult r{};
  if (method == "quadrature") {
    r = p_los_ground_air_quadrature(forest, geom, tol);
  } else if (method == "closed") {
    if (forest.heights.is_truncated_gaussian()) {
      r = p_los_ground_air_gaussian(forest, geom);
    } else if (forest.heights.is_uniform()) {
      r = p_los_ground_air_uniform(forest, geom);
    } else {
      throw config_error("[forest] dist: no closed form for a tabulated height law");
    }
  } else {
    r = p_los(forest, geom);
  }
  print_los(out, flags.printer(), r);
}

void cmd_throughput(const ScenarioFlags& flags, const std::string& mode, std::ostream& out) {
  const ScenarioConfig cfg = flags.build();
  const ForestModel forest = cfg.forest();
  const Printer p = flags.printer();
  const double x_g = require_xg(cfg);
  if (mode == "direct") {
    const ThroughputResult r = throughput_direct(forest, cfg.budget, x_g, cfg.hg);
    out << "throughput_mbps=" << p.mbps(r.throughput_bps)
        << " capacity_mbps=" << p.mbps(r.capacity_bps)
        << " p_los=" << p.prob(r.p_los_end_to_end) << "\n";
    return;
  }
  const double x_a = cfg.resolve_xa(x_g);
  const ThroughputResult r =
      throughput_relayed(forest, cfg.budget, x_g, cfg.hg, require_ha(cfg), x_a);
  out << "throughput_mbps=" << p.mbps(r.throughput_bps)
      << " capacity_mbps=" << p.mbps(r.capacity_bps)
      << " p_los=" << p.prob(r.p_los_end_to_end);
  if (r.per_hop) {
    const auto& hops = *r.per_hop;
    for (int i = 0; i < 2; ++i) {
      out << " hop" << (i + 1) << "_distance_m=" << p.num(hops[i].distance_m) << " hop" << (i + 1)
          << "_capacity_mbps=" << p.mbps(hops[i].capacity_bps) << " hop" << (i + 1)
          << "_p_los=" << p.prob(hops[i].p_los);
    }
  }
  out << "\n";
}

void cmd_optimize_height(const ScenarioFlags& flags, double ha_min, double ha_max, bool range_set,
                         double tol, std::ostream& out) {
  const ScenarioConfig cfg = flags.build();
  const Printer p = flags.printer();
  const auto range = range_set ? std::pair{ha_min, ha_max} : default_altitude_range(cfg.hg);
  const PlanResult r =
      optimize_altitude(cfg.forest(), cfg.budget, require_xg(cfg), cfg.hg, range, tol);
  out << "ha_opt=" << p.num(r.optimum) << " throughput_mbps=" << p.mbps(r.objective_bps)
      << " bracket_lo=" << p.num(r.bracket_lo) << " bracket_hi=" << p.num(r.bracket_hi)
      << " iterations=" << r.iterations << "\n";
}

void cmd_crossover(const ScenarioFlags& flags, double ha_min, double ha_max, bool ha_range_set,
                   double xg_min, double xg_max, double tol, std::ostream& out) {
  const ScenarioConfig cfg = flags.build();
  const Printer p = flags.printer();
  const auto h_range = ha_range_set ? std::pair{ha_min, ha_max} : default_altitude_range(cfg.hg);
  const PlanResult r = crossover_distance(cfg.forest(), cfg.budget, cfg.hg, h_range,
                                          {xg_min, xg_max}, tol);
  out << "xg_cross=" << p.num(r.optimum) << " throughput_mbps=" << p.mbps(r.objective_bps)
      << " bracket_lo=" << p.num(r.bracket_lo) << " bracket_hi=" << p.num(r.bracket_hi)
      << " iterations=" << r.iterations << "\n";
}

void cmd_montecarlo(const ScenarioFlags& flags, const std::string& link, std::ostream& out) {
  const ScenarioConfig cfg = flags.build();
  const ForestModel forest = cfg.forest();
  const Printer p = flags.printer();
  const LinkGeometry geom =
      (link == "gg") ? LinkGeometry::ground_ground(cfg.hg, require_xg(cfg))
                     : LinkGeometry::ground_air(cfg.hg, require_ha(cfg), ground_air_span(cfg));
  const McEstimate est = simulate_los(forest, geom, cfg.mc);
  const LosResult analytic = p_los(forest, geom);
  out << "p_hat=" << p.prob(est.p_hat) << " std_err=" << p.prob(est.std_err)
      << " blocked=" << est.blocked_count << " trials=" << est.trials
      << " p_analytic=" << p.prob(analytic.p_los) << "\n";
}

void cmd_sweep(const ScenarioFlags& flags, const std::string& out_path, std::ostream& out) {
  const ScenarioConfig cfg = flags.build();
  const SweepResult result = run_sweep(cfg);
  if (out_path.empty()) {
    write_csv(out, result);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw config_error("cannot open output file '" + out_path + "'");
  write_csv(file, result);
}

void cmd_validate(const ScenarioFlags& flags, std::ostream& out, int& exit_code) {
  const ScenarioConfig cfg = flags.build();
  ValidationOptions options;
  options.mc = cfg.mc;
  const ValidationReport report = run_validation(default_validation_grid(), options);
  print_validation(out, report);
  exit_code = report.all_pass() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LoS probability and air-relay planning in random forests"};
  app.require_subcommand(1);

  int exit_code = 0;

  ScenarioFlags f_los_gg;
  auto* los_gg = app.add_subcommand("los-gg", "LoS probability between two ground assets");
  f_los_gg.attach_common(los_gg);
  f_los_gg.attach_forest(los_gg);
  f_los_gg.attach_geometry(los_gg);
  los_gg->callback([&] { cmd_los_gg(f_los_gg, out); });

  ScenarioFlags f_los_ga;
  std::string ga_method = "auto";
  double ga_tol = 1e-10;
  auto* los_ga = app.add_subcommand("los-ga", "LoS probability from a ground to an air asset");
  f_los_ga.attach_common(los_ga);
  f_los_ga.attach_forest(los_ga);
  f_los_ga.attach_geometry(los_ga);
  los_ga->add_option("--method", ga_method, "solver")
      ->check(CLI::IsMember({"auto", "closed", "quadrature"}));
  los_ga->add_option("--tol", ga_tol, "quadrature relative tolerance");
  los_ga->callback([&] { cmd_los_ga(f_los_ga, ga_method, ga_tol, out); });

  ScenarioFlags f_throughput;
  std::string mode = "direct";
  auto* throughput = app.add_subcommand("throughput", "expected throughput of one link");
  f_throughput.attach_common(throughput);
  f_throughput.attach_forest(throughput);
  f_throughput.attach_geometry(throughput);
  f_throughput.attach_budget(throughput);
  throughput->add_option("--mode", mode, "direct or relayed")
      ->check(CLI::IsMember({"direct", "relayed"}));
  throughput->callback([&] { cmd_throughput(f_throughput, mode, out); });

  ScenarioFlags f_optimize;
  double ha_min = 0.0, ha_max = 0.0, opt_tol = 0.1;
  auto* optimize = app.add_subcommand("optimize-height", "throughput-optimal air-asset altitude");
  f_optimize.attach_common(optimize);
  f_optimize.attach_forest(optimize);
  f_optimize.attach_geometry(optimize);
  f_optimize.attach_budget(optimize);
  auto* o_ha_min = optimize->add_option("--ha-min", ha_min, "altitude search lower bound (m)");
  auto* o_ha_max = optimize->add_option("--ha-max", ha_max, "altitude search upper bound (m)");
  optimize->add_option("--tol", opt_tol, "altitude tolerance (m)");
  optimize->callback([&] {
    cmd_optimize_height(f_optimize, ha_min, ha_max, o_ha_min->count() && o_ha_max->count(),
                        opt_tol, out);
  });

  ScenarioFlags f_crossover;
  double c_ha_min = 0.0, c_ha_max = 0.0, xg_min = 5.0, xg_max = 500.0, cross_tol = 0.1;
  auto* crossover = app.add_subcommand("crossover", "direct-vs-relayed break-even distance");
  f_crossover.attach_common(crossover);
  f_crossover.attach_forest(crossover);
  f_crossover.attach_geometry(crossover);
  f_crossover.attach_budget(crossover);
  auto* c_o_ha_min = crossover->add_option("--ha-min", c_ha_min, "altitude search lower bound (m)");
  auto* c_o_ha_max = crossover->add_option("--ha-max", c_ha_max, "altitude search upper bound (m)");
  crossover->add_option("--xg-min", xg_min, "separation search lower bound (m)");
  crossover->add_option("--xg-max", xg_max, "separation search upper bound (m)");
  crossover->add_option("--tol", cross_tol, "separation tolerance (m)");
  crossover->callback([&] {
    cmd_crossover(f_crossover, c_ha_min, c_ha_max, c_o_ha_min->count() && c_o_ha_max->count(),
                  xg_min, xg_max, cross_tol, out);
  });

  ScenarioFlags f_montecarlo;
  std::string link = "ga";
  auto* montecarlo = app.add_subcommand("montecarlo", "Monte Carlo LoS estimate");
  f_montecarlo.attach_common(montecarlo);
  f_montecarlo.attach_forest(montecarlo);
  f_montecarlo.attach_geometry(montecarlo);
  f_montecarlo.attach_mc(montecarlo);
  montecarlo->add_option("--link", link, "which link to simulate")
      ->check(CLI::IsMember({"ga", "gg"}));
  montecarlo->callback([&] { cmd_montecarlo(f_montecarlo, link, out); });

  ScenarioFlags f_sweep;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  f_sweep.attach_common(sweep);
  f_sweep.attach_forest(sweep);
  f_sweep.attach_geometry(sweep);
  f_sweep.attach_budget(sweep);
  f_sweep.attach_mc(sweep);
  f_sweep.attach_sweep(sweep);
  sweep->add_option("--out", out_path, "CSV output file (default: stdout)");
  sweep->callback([&] { cmd_sweep(f_sweep, out_path, out); });

  ScenarioFlags f_validate;
  auto* validate = app.add_subcommand(
      "validate", "closed form vs quadrature vs Monte Carlo over the canonical grid");
  f_validate.attach_common(validate);
  f_validate.attach_mc(validate);
  validate->callback([&] { cmd_validate(f_validate, out, exit_code); });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("forestlink");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace forestlink::cli
