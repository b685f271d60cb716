#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rising_bai/config.hpp"
#include "rising_bai/policies.hpp"

namespace rbai {

/// Per-run seed derivation: FNV-1a over the policy id folded with the master
/// seed, budget and run index through a splitmix64-style avalanche. Fixed for
/// reproducibility across machines and thread counts.
std::uint64_t mix_seed(std::uint64_t master_seed, std::string_view policy_id, std::uint64_t budget,
                       std::uint64_t run_index);

/// Outcome of one Monte Carlo run.
struct RunRecord {
  std::string policy;  ///< policy name (row label)
  std::size_t budget = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::size_t recommended = 0;  ///< 0-based arm index
  bool correct = false;         ///< recommended == argmax_i mu_i(T), ground truth
  double wall_ms = 0.0;         ///< excluded from determinism guarantees
};

/// Aggregated cell: empirical error rate with a 95% Wilson interval.
struct CellSummary {
  std::string policy;
  std::size_t budget = 0;
  std::size_t runs = 0;
  double error_rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_ms = 0.0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval for `errors` failures out of `runs` trials.
WilsonInterval wilson_interval(std::size_t errors, std::size_t runs);

/// Resolves the exploration parameter of "r_ucbe"/"ucb_e" for one cell:
/// r_ucbe "auto" evaluates the closed-form threshold at the cell's budget
/// (beta from the config, else the setting's max feasible beta); ucb_e's
/// oracle value is 25 (T - K) / (36 H1) with the classic H1 = sum gap^-2
/// counting the smallest gap twice. Literal and scaled modes apply on top.
double resolve_exploration_param(const PolicyConfig& policy, const Setting& setting,
                                 std::size_t budget, double epsilon, double sigma);

/// Builds a fresh policy instance for one run. `exploration_param` is the
/// value from resolve_exploration_param (ignored by the other policies).
std::unique_ptr<Policy> make_policy(const PolicyConfig& policy, std::size_t num_arms,
                                    std::size_t budget, double epsilon, double sigma,
                                    double exploration_param);

/// One simulation: drives the policy against a freshly seeded bandit for at
/// most `budget` rounds (phase policies may finish early) and audits the
/// budget accounting.
RunRecord simulate_run(const Setting& setting, const PolicyConfig& policy, std::size_t budget,
                       double epsilon, std::uint64_t seed, std::size_t run_index,
                       double exploration_param);

/// All runs of one (policy, budget) cell, serially.
std::vector<RunRecord> run_cell(const ExperimentSpec& spec, const PolicyConfig& policy,
                                std::size_t budget);

/// Aggregate one cell's records (all must share policy and budget).
CellSummary summarize(std::span<const RunRecord> records);

struct ExperimentResult {
  std::vector<RunRecord> records;      ///< sorted by (policy, budget, run)
  std::vector<CellSummary> summaries;  ///< sorted by (policy, budget)
};

/// Runs the whole (policy x budget x run) grid. Runs are embarrassingly
/// parallel; records land in preassigned slots and are summarized by a
/// deterministic fold, so any thread count produces identical numbers.
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads = 1);

/// summary.csv: header policy,T,runs,error_rate,ci_low,ci_high,mean_ms;
/// floats carry 10 significant digits.
void write_summary_csv(std::span<const CellSummary> summaries, const std::filesystem::path& path);
void write_summary_json(std::span<const CellSummary> summaries, const std::filesystem::path& path);
std::vector<CellSummary> read_summary_json(const std::filesystem::path& path);

/// runs.csv: policy,T,run,seed,recommended,correct (no wall time, so the file
/// is byte-deterministic).
void write_runs_csv(std::span<const RunRecord> records, const std::filesystem::path& path);

}  // namespace rbai
