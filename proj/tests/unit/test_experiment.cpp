#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "rising_bai/bandit.hpp"
#include "rising_bai/config.hpp"
#include "rising_bai/experiment.hpp"
#include "rising_bai/theory.hpp"

using namespace rbai;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("rising_bai_test_" + tag);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// summary.csv with the wall-time column blanked (it is the one
// non-deterministic field)
std::string strip_mean_ms(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto cut = line.rfind(',');
    out << line.substr(0, cut) << '\n';
  }
  return out.str();
}

ExperimentSpec tiny_spec() {
  ExperimentSpec spec = builtin_setting_a();
  spec.budgets = {100, 200};
  spec.runs = 8;
  spec.policies.resize(2);  // r_ucbe + r_sr
  return spec;
}

}  // namespace

TEST_CASE("seed mixing is stable and sensitive to every input") {
  const std::uint64_t base = mix_seed(42, "r_ucbe", 3200, 0);
  CHECK(base == mix_seed(42, "r_ucbe", 3200, 0));
  CHECK(base != mix_seed(43, "r_ucbe", 3200, 0));
  CHECK(base != mix_seed(42, "r_sr", 3200, 0));
  CHECK(base != mix_seed(42, "r_ucbe", 1600, 0));
  CHECK(base != mix_seed(42, "r_ucbe", 3200, 1));
}

TEST_CASE("wilson interval") {
  SUBCASE("0 errors out of 100") {
    const WilsonInterval ci = wilson_interval(0, 100);
    CHECK(ci.low == 0.0);
    CHECK(ci.high == doctest::Approx(0.0369948).epsilon(1e-5));
  }
  SUBCASE("50 out of 100 is symmetric") {
    const WilsonInterval ci = wilson_interval(50, 100);
    CHECK(ci.low == doctest::Approx(0.403830).epsilon(1e-5));
    CHECK(ci.high == doctest::Approx(0.596170).epsilon(1e-5));
  }
  SUBCASE("single run is nearly vacuous") {
    const WilsonInterval ci = wilson_interval(0, 1);
    CHECK(ci.low == 0.0);
    CHECK(ci.high > 0.7);
    const WilsonInterval hi = wilson_interval(1, 1);
    CHECK(hi.high == 1.0);
    CHECK(hi.low < 0.3);
  }
  CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
}

TEST_CASE("summarize") {
  std::vector<RunRecord> records;
  for (std::size_t r = 0; r < 4; ++r) {
    RunRecord rec;
    rec.policy = "uniform";
    rec.budget = 100;
    rec.run = r;
    rec.correct = r != 1;
    rec.wall_ms = 2.0;
    records.push_back(rec);
  }
  const CellSummary s = summarize(records);
  CHECK(s.error_rate == doctest::Approx(0.25));
  CHECK(s.runs == 4);
  CHECK(s.ci_low <= s.error_rate);
  CHECK(s.ci_high >= s.error_rate);
  CHECK(s.mean_ms == doctest::Approx(2.0));
  CHECK_THROWS_AS((summarize(std::vector<RunRecord>{})), std::invalid_argument);
}

TEST_CASE("run_cell is deterministic") {
  const ExperimentSpec spec = tiny_spec();
  const auto first = run_cell(spec, spec.policies[0], 200);
  const auto second = run_cell(spec, spec.policies[0], 200);
  REQUIRE(first.size() == spec.runs);
  for (std::size_t r = 0; r < first.size(); ++r) {
    CHECK(first[r].seed == second[r].seed);
    CHECK(first[r].recommended == second[r].recommended);
    CHECK(first[r].correct == second[r].correct);
  }
}

TEST_CASE("correctness labels come from the ground truth") {
  ExperimentSpec spec = builtin_setting_a();
  spec.runs = 1;
  spec.setting.sigma = 0.0;
  PolicyConfig plain;
  plain.id = plain.name = "uniform";
  // deterministic miss: the full-sample mean still ranks the fast riser first
  // at T = 1600 while the ground truth argmax is arm 0
  const auto records = run_cell(spec, plain, 1600);
  REQUIRE(records.size() == 1);
  CHECK(records[0].recommended == 1);
  CHECK_FALSE(records[0].correct);
}

TEST_CASE("parallel and serial grids produce identical outputs") {
  const ExperimentSpec spec = tiny_spec();
  const ExperimentResult serial = run_experiment(spec, 1);
  const ExperimentResult parallel = run_experiment(spec, 4);

  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].policy == parallel.records[i].policy);
    CHECK(serial.records[i].seed == parallel.records[i].seed);
    CHECK(serial.records[i].recommended == parallel.records[i].recommended);
  }

  const auto dir = temp_dir("parallel");
  write_summary_csv(serial.summaries, dir / "serial.csv");
  write_summary_csv(parallel.summaries, dir / "parallel.csv");
  CHECK(strip_mean_ms(slurp(dir / "serial.csv")) == strip_mean_ms(slurp(dir / "parallel.csv")));

  write_runs_csv(serial.records, dir / "serial_runs.csv");
  write_runs_csv(parallel.records, dir / "parallel_runs.csv");
  CHECK(slurp(dir / "serial_runs.csv") == slurp(dir / "parallel_runs.csv"));
}

TEST_CASE("csv and json emission") {
  const ExperimentSpec spec = tiny_spec();
  const ExperimentResult result = run_experiment(spec, 2);
  const auto dir = temp_dir("emit");

  SUBCASE("csv header and row count") {
    write_summary_csv(result.summaries, dir / "summary.csv");
    const std::string text = slurp(dir / "summary.csv");
    CHECK(text.rfind("policy,T,runs,error_rate,ci_low,ci_high,mean_ms\n", 0) == 0);
    std::size_t rows = 0;
    for (char c : text) rows += c == '\n';
    CHECK(rows == 1 + spec.policies.size() * spec.budgets.size());
  }
  SUBCASE("empty summary list is a bare header") {
    write_summary_csv({}, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") == "policy,T,runs,error_rate,ci_low,ci_high,mean_ms\n");
  }
  SUBCASE("json round-trip") {
    write_summary_json(result.summaries, dir / "summary.json");
    const auto loaded = read_summary_json(dir / "summary.json");
    REQUIRE(loaded.size() == result.summaries.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      CHECK(loaded[i].policy == result.summaries[i].policy);
      CHECK(loaded[i].budget == result.summaries[i].budget);
      CHECK(loaded[i].runs == result.summaries[i].runs);
      // values were rounded to 10 significant digits at emission
      CHECK(loaded[i].error_rate == doctest::Approx(result.summaries[i].error_rate).epsilon(1e-9));
      const auto reloaded = (write_summary_json(loaded, dir / "again.json"),
                             read_summary_json(dir / "again.json"));
      CHECK(reloaded[i].error_rate == loaded[i].error_rate);
      CHECK(reloaded[i].ci_high == loaded[i].ci_high);
      CHECK(reloaded[i].mean_ms == loaded[i].mean_ms);
    }
  }
  SUBCASE("floats are printed with 10 significant digits") {
    CellSummary s;
    s.policy = "uniform";
    s.budget = 10;
    s.runs = 3;
    s.error_rate = 1.0 / 3.0;
    s.ci_low = 0.0;
    s.ci_high = 2.0 / 3.0;
    s.mean_ms = 1.5;
    write_summary_csv(std::vector<CellSummary>{s}, dir / "digits.csv");
    CHECK(slurp(dir / "digits.csv").find("0.3333333333") != std::string::npos);
  }
}

TEST_CASE("exploration parameter resolution") {
  const ExperimentSpec spec = builtin_setting_a();

  SUBCASE("literal passes through") {
    PolicyConfig p;
    p.id = p.name = "r_ucbe";
    p.a_mode = PolicyConfig::ExplorationMode::Literal;
    p.a_literal = 7.5;
    CHECK(resolve_exploration_param(p, spec.setting, 3200, 0.25, 0.01) == 7.5);
  }
  SUBCASE("auto matches the closed-form expression; scale multiplies it") {
    PolicyConfig p = spec.policies[0];  // r_ucbe, auto, beta = 1.3
    const double base = resolve_exploration_param(p, spec.setting, 3200, 0.25, 0.01);
    CHECK(base == doctest::Approx(166.3551).epsilon(1e-4));
    p.a_mode = PolicyConfig::ExplorationMode::ScaledAuto;
    p.a_scale = 50.0;
    CHECK(resolve_exploration_param(p, spec.setting, 3200, 0.25, 0.01) ==
          doctest::Approx(50.0 * base));
  }
  SUBCASE("ucb_e oracle value counts the smallest gap twice") {
    PolicyConfig p;
    p.id = p.name = "ucb_e";
    const double a = resolve_exploration_param(p, spec.setting, 3200, 0.25, 0.01);
    CHECK(a == doctest::Approx(11.07611).epsilon(1e-5));
  }
}

TEST_CASE("builtin synthetic benchmark") {
  const ExperimentSpec spec = builtin_setting_a();
  CHECK(spec.setting.arms.size() == 5);
  CHECK(spec.setting.sigma == 0.01);
  CHECK(spec.epsilon == 0.25);
  CHECK(spec.runs == 100);
  CHECK(spec.budgets.front() == 100);
  CHECK(spec.budgets.back() == 3200);
  CHECK(spec.policies.size() == 6);
  CHECK(spec.policies[0].beta == 1.3);
  // the slow riser overtakes by the largest budget
  const Bandit probe(spec.setting.arms, 0.0, 1);
  CHECK(probe.best_arm_at(3200) == 0);
}

TEST_CASE("experiment config parsing") {
  const std::string text = R"({
    "setting": {"arms": [{"kind":"parametric","c":1.0,"b":37.0,"psi":1.0},
                          {"kind":"parametric","c":0.88,"b":10.0,"psi":1.0}],
                 "sigma": 0.01},
    "policies": [{"id":"r_ucbe","a":"auto","epsilon":0.25},
                  {"id":"r_ucbe","name":"r_ucbe_x50","a":{"scale":50},"beta":1.3},
                  {"id":"r_ucbe","name":"r_ucbe_a5","a":5.0},
                  {"id":"r_sr"}],
    "budgets": [100, 200],
    "runs": 3,
    "master_seed": 7,
    "epsilon": 0.25,
    "sigma_override": [0.1, 0.5]
  })";
  const ExperimentSpec spec = parse_experiment(text);
  CHECK(spec.setting.arms.size() == 2);
  REQUIRE(spec.policies.size() == 4);
  CHECK(spec.policies[0].a_mode == PolicyConfig::ExplorationMode::Auto);
  CHECK(spec.policies[1].a_mode == PolicyConfig::ExplorationMode::ScaledAuto);
  CHECK(spec.policies[1].a_scale == 50.0);
  CHECK(spec.policies[1].beta == 1.3);
  CHECK(spec.policies[2].a_mode == PolicyConfig::ExplorationMode::Literal);
  CHECK(spec.policies[2].a_literal == 5.0);
  CHECK(spec.sigma_override == std::vector<double>{0.1, 0.5});

  SUBCASE("duplicate names are rejected") {
    const std::string bad = R"({
      "setting": {"arms": [{"kind":"parametric","c":1.0,"b":37.0,"psi":1.0}], "sigma": 0.0},
      "policies": [{"id":"uniform"}, {"id":"uniform"}],
      "budgets": [10], "runs": 1, "master_seed": 1})";
    CHECK_THROWS_AS(parse_experiment(bad), std::invalid_argument);
  }
  SUBCASE("non-increasing budgets are rejected") {
    std::string bad = text;
    const auto pos = bad.find("[100, 200]");
    bad.replace(pos, 10, "[200, 200]");
    CHECK_THROWS_AS(parse_experiment(bad), std::invalid_argument);
  }
}
