#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "latcond/runner.hpp"

using namespace latcond;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(bool(f));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.half_side = 6;
  cfg.lambda = 1.0;
  cfg.beta = 1.0;
  cfg.seed = 42;
  cfg.n_realizations = 5;
  cfg.t_max = 3.0;
  cfg.n_times = 7;
  return cfg;
}

}  // namespace

TEST_CASE("experiment validation rejects bad parameters") {
  ExperimentConfig cfg;
  cfg.dim = 4;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.lambda = -0.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.beta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.axis = 1;  // dim = 1
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.jobs = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.n_times = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.n_realizations = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("padding rules") {
  ExperimentConfig cfg;
  cfg.bc = Bc::periodic;
  cfg.padding = 5;  // ignored for periodic boxes
  CHECK(resolved_padding(cfg) == 0);

  cfg.bc = Bc::open;
  cfg.padding = -1;
  cfg.t_max = 10.0;
  CHECK(resolved_padding(cfg) == 20);
  cfg.t_max = 2.0;
  CHECK(resolved_padding(cfg) == 8);  // floor of the automatic rule
  CHECK(resolved_padding(cfg, 12.0) == 12);  // pulse support overrides t_max
  cfg.padding = 16;
  CHECK(resolved_padding(cfg) == 16);
  CHECK(resolved_padding(cfg, 12.0) == 16);  // explicit padding wins

  cfg.padding = -1;
  cfg.half_side = 6;
  cfg.t_max = 3.0;
  const Box box = computation_box(cfg);
  CHECK(box.inner_half_side == 6);
  CHECK(box.half_side == 14);
  CHECK(box.bc == Bc::open);
}

TEST_CASE("canonical serialization ignores execution details") {
  ExperimentConfig a = small_config();
  ExperimentConfig b = a;
  b.jobs = 4;
  b.inject_failures = {2};
  CHECK(canonical_config_json(a) == canonical_config_json(b));
  CHECK(config_hash(a) == config_hash(b));

  ExperimentConfig c = a;
  c.seed = 43;
  CHECK(config_hash(a) != config_hash(c));

  // explicit padding equal to the automatic one hashes identically
  ExperimentConfig d = a;
  d.bc = Bc::open;
  d.padding = -1;  // auto: max(8, ceil(2 * 3)) = 8
  ExperimentConfig e = d;
  e.padding = 8;
  CHECK(canonical_config_json(d) == canonical_config_json(e));
  CHECK(config_hash(d) == config_hash(e));
}

TEST_CASE("disorder-averaged conductivity run") {
  const ExperimentConfig cfg = small_config();
  const ConductivityRun run = run_conductivity(cfg);
  CHECK(run.n_ok == 5);
  CHECK(run.n_failed == 0);
  CHECK(run.hash == config_hash(cfg));
  REQUIRE(run.times.size() == 7);
  CHECK(run.times[0] == 0.0);
  CHECK(run.times[6] == 3.0);
  CHECK(run.mean_sigma_p[0] == 0.0);
  for (long k = 0; k < 7; ++k) {
    CHECK(run.mean_sigma_p[k] <= 0.0);
    CHECK(run.stderr_sigma_p[k] >= 0.0);
  }
  CHECK(run.mean_sigma_d > 0.0);
  CHECK(run.measure.kind == MeasureKind::paramagnetic);
  CHECK(total_mass(run.measure) == doctest::Approx(run.mean_mass).epsilon(1e-12));
  CHECK(run.mean_abs_moment >= run.mean_mass);
}

TEST_CASE("results do not depend on the number of worker threads") {
  ExperimentConfig cfg = small_config();
  const ConductivityRun one = run_conductivity(cfg);
  cfg.jobs = 3;
  const ConductivityRun three = run_conductivity(cfg);
  CHECK(one.hash == three.hash);
  REQUIRE(one.times.size() == three.times.size());
  for (long k = 0; k < one.times.size(); ++k) {
    CHECK(one.mean_sigma_p[k] == three.mean_sigma_p[k]);
    CHECK(one.stderr_sigma_p[k] == three.stderr_sigma_p[k]);
  }
  CHECK(one.mean_sigma_d == three.mean_sigma_d);
  REQUIRE(one.measure.atoms.size() == three.measure.atoms.size());
  for (std::size_t k = 0; k < one.measure.atoms.size(); ++k) {
    CHECK(one.measure.atoms[k].nu == three.measure.atoms[k].nu);
    CHECK(one.measure.atoms[k].weight == three.measure.atoms[k].weight);
  }
}

TEST_CASE("failure policy: over 5% aborts, at most 5% is tolerated") {
  ExperimentConfig cfg = small_config();
  cfg.inject_failures = {1};  // 1 of 5 = 20%
  CHECK_THROWS_AS(run_conductivity(cfg), SolverError);

  cfg.n_realizations = 40;
  cfg.inject_failures = {3};  // 1 of 40 = 2.5%
  const ConductivityRun run = run_conductivity(cfg);
  CHECK(run.n_ok == 39);
  CHECK(run.n_failed == 1);
  CHECK(std::isfinite(run.mean_sigma_d));
}

TEST_CASE("output files are reproducible byte for byte") {
  const fs::path dir = fs::temp_directory_path() / "latcond_runner_test";
  fs::remove_all(dir);
  const ExperimentConfig cfg = small_config();
  const ConductivityRun run = run_conductivity(cfg);

  write_conductivity_outputs(dir.string(), cfg, run);
  const std::string csv1 = slurp(dir / "sigma_p.csv");
  const std::string mcsv1 = slurp(dir / "measure.csv");
  const std::string json1 = slurp(dir / "summary.json");
  CHECK(csv1.rfind("t,mean,stderr\n", 0) == 0);
  CHECK(mcsv1.rfind("nu,weight,kind\n", 0) == 0);
  CHECK(json1.find("config_hash") != std::string::npos);
  const long lines = std::count(csv1.begin(), csv1.end(), '\n');
  CHECK(lines == cfg.n_times + 1);

  write_conductivity_outputs(dir.string(), cfg, run);
  CHECK(slurp(dir / "sigma_p.csv") == csv1);
  CHECK(slurp(dir / "measure.csv") == mcsv1);
  CHECK(slurp(dir / "summary.json") == json1);
  fs::remove_all(dir);
}

TEST_CASE("disorder-averaged heat run") {
  ExperimentConfig cfg;
  cfg.half_side = 6;
  cfg.bc = Bc::open;
  cfg.lambda = 0.5;
  cfg.beta = 0.5;
  cfg.seed = 7;
  cfg.n_realizations = 3;
  const Pulse pulse;  // support span 12 -> padding 12
  const HeatRun run = run_heat(cfg, pulse, 257, 385);
  CHECK(run.n_ok == 3);
  CHECK(run.n_failed == 0);
  CHECK(run.hash == config_hash(cfg, pulse.support_hi() - pulse.support_lo()));
  CHECK(run.mean_q_time > 0.0);
  CHECK(run.max_rel_mismatch < 1e-6);
  CHECK(run.mean_q_dia < 1e-15);

  const fs::path dir = fs::temp_directory_path() / "latcond_heat_test";
  fs::remove_all(dir);
  write_heat_outputs(dir.string(), cfg, pulse, run);
  const std::string j1 = slurp(dir / "heat.json");
  CHECK(j1.find("q_time_mean") != std::string::npos);
  write_heat_outputs(dir.string(), cfg, pulse, run);
  CHECK(slurp(dir / "heat.json") == j1);
  fs::remove_all(dir);
}
