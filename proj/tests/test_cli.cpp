#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "forestlink/cli.hpp"
#include "forestlink/sweep.hpp"
#include "forestlink/validation.hpp"

using namespace forestlink;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("los-gg prints the expected result line") {
  const auto r = run_cli({"los-gg", "--lambda0", "0.02", "--dist", "uniform", "--hmax", "29",
                          "--hg", "2", "--xg", "120"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "p_los=0.107047"));
  CHECK(contains(r.out, "method=homogeneous"));
  CHECK(r.err.empty());
}

TEST_CASE("los-ga with no obstacles reports certainty") {
  const auto r = run_cli({"los-ga", "--lambda0", "0"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "p_los=1 "));
}

TEST_CASE("los-ga closed form and quadrature agree") {
  const auto closed = run_cli({"los-ga", "--method", "closed", "--precision", "full"});
  const auto quad = run_cli({"los-ga", "--method", "quadrature", "--precision", "full"});
  CHECK(closed.code == 0);
  CHECK(quad.code == 0);
  CHECK(contains(closed.out, "method=closed_form_gaussian"));
  CHECK(contains(quad.out, "method=quadrature"));
  CHECK(contains(closed.out, "p_los=0.80523327457621"));
  CHECK(contains(quad.out, "p_los=0.80523327457621"));
}

TEST_CASE("throughput direct and relayed modes") {
  const auto direct = run_cli({"throughput", "--mode", "direct", "--dist", "uniform",
                               "--hmax", "29"});
  CHECK(direct.code == 0);
  CHECK(contains(direct.out, "throughput_mbps=4.0"));
  CHECK(contains(direct.out, "p_los=0.107047"));

  const auto relayed = run_cli({"throughput", "--mode", "relayed"});
  CHECK(relayed.code == 0);
  CHECK(contains(relayed.out, "throughput_mbps=12.7"));
  CHECK(contains(relayed.out, "hop1_p_los=0.805233"));
  CHECK(contains(relayed.out, "hop2_p_los=0.805233"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"no-such-command"}).code == 2);
  CHECK(run_cli({"los-gg", "--no-such-flag", "3"}).code == 2);
  CHECK(run_cli({"los-ga", "--method", "wrong"}).code == 2);
}

TEST_CASE("domain errors exit with 1 and name the field") {
  const auto bad_value = run_cli({"los-gg", "--xg", "-5"});
  CHECK(bad_value.code == 1);
  CHECK(contains(bad_value.err, "xg"));

  const auto bad_dist = run_cli({"los-gg", "--dist", "exponential"});
  CHECK(bad_dist.code == 1);
  CHECK(contains(bad_dist.err, "dist"));

  const auto missing_config = run_cli({"los-gg", "--config", "/no/such/file.cfg"});
  CHECK(missing_config.code == 1);

  const auto no_closed_form = run_cli(
      {"los-ga", "--dist", "tabulated", "--table", "0:0,29:1", "--method", "closed"});
  CHECK(no_closed_form.code == 1);

  // short range where the direct link dominates throughout
  const auto no_crossing = run_cli({"crossover", "--lambda0", "0", "--xg-max", "60"});
  CHECK(no_crossing.code == 1);
  CHECK(contains(no_crossing.err, "sign"));
}

TEST_CASE("help exits with 0") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"los-gg", "--help"}).code == 0);
}

TEST_CASE("config file plus flag overrides") {
  const std::string path = "test_cli_scenario.cfg";
  {
    std::ofstream f(path);
    f << "[forest]\nlambda0 = 0.02\ndist = uniform\nhmax = 29\n"
      << "[geometry]\nhg = 2\nxg = 120\n";
  }
  const auto from_config = run_cli({"los-gg", "--config", path});
  CHECK(from_config.code == 0);
  CHECK(contains(from_config.out, "p_los=0.107047"));

  // flag wins over the file
  const auto overridden = run_cli({"los-gg", "--config", path, "--xg", "60"});
  CHECK(overridden.code == 0);
  CHECK(contains(overridden.out, "p_los=0.327181"));
  std::remove(path.c_str());
}

TEST_CASE("montecarlo output is deterministic across runs and worker counts") {
  const std::vector<std::string> base = {"montecarlo", "--trials", "20000", "--seed", "77"};
  const auto first = run_cli(base);
  const auto second = run_cli(base);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);

  auto with_workers = [&](const char* n) {
    auto args = base;
    args.insert(args.end(), {"--workers", n});
    return run_cli(args);
  };
  const auto one = with_workers("1");
  const auto four = with_workers("4");
  CHECK(one.out == four.out);
  CHECK(one.out == first.out);  // default workers too
  CHECK(contains(first.out, "p_hat="));
  CHECK(contains(first.out, "p_analytic=0.805233"));
}

TEST_CASE("montecarlo against the ground-ground link") {
  const auto r = run_cli({"montecarlo", "--link", "gg", "--trials", "50000", "--seed", "3",
                          "--dist", "uniform", "--hmax", "29"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "p_analytic=0.107047"));
}

TEST_CASE("sweep writes CSV to stdout and to a file") {
  const std::vector<std::string> args = {"sweep", "--var", "x_a", "--start", "10",
                                         "--stop", "60",   "--step", "10"};
  const auto to_stdout = run_cli(args);
  CHECK(to_stdout.code == 0);
  CHECK(contains(to_stdout.out,
                 "sweep_value,p_los_direct,p_los_relayed,capacity,throughput_direct,"
                 "throughput_relayed"));
  CHECK(contains(to_stdout.out, "# sweep_value: m"));

  const std::string path = "test_cli_sweep.csv";
  auto file_args = args;
  file_args.insert(file_args.end(), {"--out", path});
  const auto to_file = run_cli(file_args);
  CHECK(to_file.code == 0);
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == to_stdout.out);
  std::remove(path.c_str());
}

TEST_CASE("sweep output is byte-identical across runs") {
  const std::vector<std::string> args = {"sweep",  "--var",  "x_a", "--start", "20",
                                         "--stop", "40",     "--step", "20",
                                         "--mc",   "true",   "--trials", "2000",
                                         "--seed", "5"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "mc_p_hat"));
}

TEST_CASE("validate passes on the canonical grid with a small trial budget") {
  const auto r = run_cli({"validate", "--trials", "20000", "--seed", "11"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "overall: PASS"));
  CHECK(contains(r.out, "reference"));
}

TEST_CASE("sweep reproduces the single-hop LoS curve family") {
  // one curve per altitude; each must decay with span and higher altitudes
  // must dominate pointwise
  std::vector<std::vector<double>> curves;
  for (const char* ha : {"50", "100", "200"}) {
    const auto r = run_cli({"sweep", "--xg", "none", "--xa", "1", "--ha", ha, "--var", "x_a",
                            "--start", "5", "--stop", "300", "--step", "5"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const SweepResult parsed = read_csv(in);
    REQUIRE(parsed.rows.size() == 60);
    std::vector<double> p;
    for (const auto& row : parsed.rows) p.push_back(row.p_los_direct);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] <= p[i - 1]);
    curves.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < curves[0].size(); ++i) {
    CHECK(curves[0][i] <= curves[1][i]);
    CHECK(curves[1][i] <= curves[2][i]);
  }
}

TEST_CASE("validation on an empty forest passes trivially") {
  const ForestModel empty(0.0, HeightDistribution::uniform(29.0));
  std::vector<ValidationScenario> grid;
  for (double x_a : {20.0, 60.0}) {
    grid.push_back({"empty ga", empty, LinkGeometry::ground_air(2.0, 100.0, x_a)});
  }
  grid.push_back({"empty gg", empty, LinkGeometry::ground_ground(2.0, 120.0)});
  ValidationOptions options;
  options.mc.trials = 1000;
  options.with_references = false;
  const ValidationReport report = run_validation(grid, options);
  CHECK(report.all_pass());
  for (const auto& row : report.rows) {
    CHECK(row.p_closed == 1.0);
    CHECK(row.p_quadrature == 1.0);
    CHECK(row.mc_p_hat == 1.0);
  }
}

TEST_CASE("a corrupted closed form fails validation on every ground-air scenario") {
  // same formula but with the sightline slope constant multiplied instead
  // of divided; validation must catch it everywhere it applies
  const GroundAirSolver corrupted = [](const ForestModel& forest, const LinkGeometry& geom) {
    if (!forest.heights.is_truncated_gaussian() || geom.is_ground_ground()) {
      return p_los(forest, geom);
    }
    const auto& tg = forest.heights.as_truncated_gaussian();
    const double h_g = geom.ground_height();
    const double x_a = geom.span();
    const double sqrt2 = 1.4142135623730951;
    const double sqrt_pi = 1.7724538509055159;
    const double a = (tg.mu - h_g) / (sqrt2 * tg.sigma);
    const double b = (geom.air_height() - h_g) * (sqrt2 * tg.sigma * x_a);
    const double c = forest.lambda0 / (2.0 * std_normal_cdf(tg.mu / tg.sigma));
    const double t = a - b * x_a;
    const double integral =
        (std::exp(-a * a) + sqrt_pi * ((b * x_a - a) * std::erf(t) + a * std::erf(a)) -
         std::exp(-t * t)) /
        (sqrt_pi * b);
    const double exponent = std::max(0.0, c * (x_a + integral));
    return LosResult{std::exp(-exponent), exponent, LosMethod::closed_form_gaussian};
  };

  std::vector<ValidationScenario> grid;
  const ForestModel forest(0.02, HeightDistribution::truncated_gaussian(19.0, 10.0));
  for (double x_a : {20.0, 60.0, 100.0, 200.0}) {
    for (double h_a : {50.0, 100.0, 200.0}) {
      grid.push_back({"ga", forest, LinkGeometry::ground_air(2.0, h_a, x_a)});
    }
  }

  ValidationOptions options;
  options.mc.trials = 1000;
  options.with_references = false;
  options.solver = corrupted;
  const ValidationReport report = run_validation(grid, options);
  CHECK_FALSE(report.all_pass());
  for (const auto& row : report.rows) {
    CHECK_FALSE(row.closed_vs_quad_pass);
  }
}
