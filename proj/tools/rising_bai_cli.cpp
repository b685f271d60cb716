// Benchmark harness CLI for best arm identification in rising rested bandits.
//
//   rising_bai run      --config <file> [--out-dir DIR] [--threads N] [--seed S]
//   rising_bai theory   --config <file> --budget T --beta B [--epsilon E] [--sigma S]
//   rising_bai validate --config <file> [--horizon H]
//
// --config also accepts the literal "builtin:setting_a" for the embedded
// synthetic benchmark. Exit codes: 0 success, 1 config error, 2 runtime error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rising_bai/config.hpp"
#include "rising_bai/experiment.hpp"
#include "rising_bai/policies.hpp"
#include "rising_bai/theory.hpp"

namespace {

using nlohmann::json;

rbai::ExperimentSpec load_spec(const std::string& config_ref) {
  if (config_ref == "builtin:setting_a") return rbai::builtin_setting_a();
  std::ifstream in(config_ref, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + config_ref);
  std::ostringstream text;
  text << in.rdbuf();
  return rbai::parse_experiment_or_setting(text.str());
}

unsigned effective_threads(unsigned cli_threads) {
  if (const char* env = std::getenv("RISING_BAI_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
    std::cerr << "warning: ignoring invalid RISING_BAI_THREADS='" << env << "'\n";
  }
  if (cli_threads >= 1) return cli_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void run_grid_into(const rbai::ExperimentSpec& spec, const std::filesystem::path& out_dir,
                   unsigned threads) {
  std::filesystem::create_directories(out_dir);
  const rbai::ExperimentResult result = rbai::run_experiment(spec, threads);
  rbai::write_summary_csv(result.summaries, out_dir / "summary.csv");
  rbai::write_summary_json(result.summaries, out_dir / "summary.json");
  rbai::write_runs_csv(result.records, out_dir / "runs.csv");
  std::cout << "wrote " << result.summaries.size() << " cells (" << result.records.size()
            << " runs) to " << out_dir.string() << '\n';
}

int cmd_run(const std::string& config_ref, const std::string& out_dir, unsigned cli_threads,
            std::optional<std::uint64_t> seed) {
  rbai::ExperimentSpec spec = load_spec(config_ref);
  if (seed.has_value()) spec.master_seed = *seed;
  const unsigned threads = effective_threads(cli_threads);

  run_grid_into(spec, out_dir, threads);
  for (double sigma : spec.sigma_override) {
    rbai::ExperimentSpec sweep = spec;
    sweep.setting.sigma = sigma;
    sweep.sigma_override.clear();
    std::ostringstream sub;
    sub << "sigma_" << sigma;
    run_grid_into(sweep, std::filesystem::path(out_dir) / sub.str(), threads);
  }
  return 0;
}

int cmd_theory(const std::string& config_ref, std::size_t budget, double beta,
               std::optional<double> epsilon_flag, std::optional<double> sigma_flag) {
  const rbai::ExperimentSpec spec = load_spec(config_ref);
  const double epsilon = epsilon_flag.value_or(spec.epsilon);
  const double sigma = sigma_flag.value_or(spec.setting.sigma);
  const std::size_t num_arms = spec.setting.arms.size();

  const rbai::GapProfile profile = rbai::gap_profile(spec.setting.arms, budget);
  const double eta = beta < 1.5 ? 1.0 / beta : 2.0 / 3.0;
  const rbai::BudgetCheck budget_check = rbai::rsr_budget_ok(profile, beta, num_arms, budget);

  json report;
  report["T"] = budget;
  report["K"] = num_arms;
  report["beta"] = beta;
  report["epsilon"] = epsilon;
  report["sigma"] = sigma;
  report["optimal_arm"] = profile.optimal_arm;
  report["gaps"] = profile.sorted_gaps;
  report["H1_eta"] = eta;
  report["H1"] = rbai::complexity_h1(profile, eta);
  report["H2"] = rbai::complexity_h2(profile);
  report["C_beta"] = rbai::rsr_budget_constant(beta, num_arms);
  report["Psi_beta"] = rbai::psi_beta(profile, beta);
  report["budget_ok"] = budget_check.ok;
  report["budget_margin"] = budget_check.margin;

  double a_used = 0.0;
  if (sigma > 0.0) {
    const auto closed =
        rbai::exploration_limit_closed(profile, beta, budget, num_arms, epsilon, sigma);
    report["a_star_closed"] = closed.has_value() ? json(*closed) : json(nullptr);
    a_used = rbai::closed_form_exploration_value(profile, beta, budget, num_arms, epsilon, sigma);
  } else {
    report["a_star_closed"] = nullptr;
  }
  report["a_star"] = a_used;  // the value "a":"auto" resolves to

  const auto implicit = rbai::exploration_limit(spec.setting.arms, budget, epsilon, sigma);
  report["a_star_implicit"] = implicit.has_value() ? json(*implicit) : json(nullptr);

  report["bounds"] = {
      {"r_ucbe", rbai::rucbe_error_bound(a_used, budget, num_arms)},
      {"r_sr", rbai::rsr_error_bound(profile, budget, num_arms, epsilon, sigma)},
  };

  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_validate(const std::string& config_ref, std::optional<std::size_t> horizon_flag) {
  const rbai::ExperimentSpec spec = load_spec(config_ref);

  std::size_t horizon = 3200;
  if (!spec.budgets.empty()) horizon = spec.budgets.back();
  if (horizon_flag.has_value()) horizon = *horizon_flag;

  json arms = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < spec.setting.arms.size(); ++i) {
    const rbai::AssumptionCheck check = rbai::validate_assumptions(spec.setting.arms[i], horizon);
    all_ok = all_ok && check.monotone && check.concave;
    arms.push_back({{"index", i}, {"monotone", check.monotone}, {"concave", check.concave}});
  }

  json report;
  report["horizon"] = horizon;
  report["sigma"] = spec.setting.sigma;
  report["arms"] = arms;
  report["assumptions_ok"] = all_ok;

  const auto beta = rbai::max_feasible_beta(spec.setting.arms, horizon);
  if (!beta.has_value()) {
    report["beta_status"] = "infeasible";
    report["max_feasible_beta"] = nullptr;
  } else if (!std::isfinite(*beta)) {
    report["beta_status"] = "unbounded";
    report["max_feasible_beta"] = nullptr;
  } else {
    report["beta_status"] = "finite";
    report["max_feasible_beta"] = *beta;
  }

  std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-budget best arm identification for stochastic rising rested bandits"};
  app.require_subcommand(1);

  std::string config_ref;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;

  CLI::App* run = app.add_subcommand("run", "Run the Monte Carlo experiment grid");
  run->add_option("--config", config_ref, "config file or builtin:setting_a")->required();
  run->add_option("--out-dir", out_dir, "output directory (default: .)");
  run->add_option("--threads", threads, "worker threads (default: hardware concurrency)");
  run->add_option("--seed", seed, "override the config's master_seed");

  std::size_t budget = 0;
  double beta = 0.0;
  std::optional<double> epsilon_flag, sigma_flag;
  CLI::App* theory = app.add_subcommand("theory", "Print the theoretical quantities as JSON");
  theory->add_option("--config", config_ref, "config file or builtin:setting_a")->required();
  theory->add_option("--budget", budget, "target budget T")->required();
  theory->add_option("--beta", beta, "increment-decay exponent, > 1")->required();
  theory->add_option("--epsilon", epsilon_flag, "window fraction (default: config)");
  theory->add_option("--sigma", sigma_flag, "noise scale (default: setting)");

  std::optional<std::size_t> horizon_flag;
  CLI::App* validate = app.add_subcommand("validate", "Check assumptions and report feasible beta");
  validate->add_option("--config", config_ref, "config file or builtin:setting_a")->required();
  validate->add_option("--horizon", horizon_flag, "check horizon (default: largest budget)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are config errors
  }

  try {
    if (run->parsed()) return cmd_run(config_ref, out_dir, threads, seed);
    if (theory->parsed()) return cmd_theory(config_ref, budget, beta, epsilon_flag, sigma_flag);
    if (validate->parsed()) return cmd_validate(config_ref, horizon_flag);
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
}
