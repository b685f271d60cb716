#include "rising_bai/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "rising_bai/bandit.hpp"
#include "rising_bai/theory.hpp"

namespace rbai {

using nlohmann::json;

namespace {

std::uint64_t avalanche(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// %.10g, the pinned float format of the CSV/JSON outputs
std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double round10(double v) { return std::strtod(fmt10(v).c_str(), nullptr); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t master_seed, std::string_view policy_id, std::uint64_t budget,
                       std::uint64_t run_index) {
  std::uint64_t h = 14695981039346656037ULL;  // FNV-1a offset basis
  for (unsigned char c : policy_id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h = avalanche(h ^ master_seed);
  h = avalanche(h ^ budget);
  h = avalanche(h ^ run_index);
  return h;
}

WilsonInterval wilson_interval(std::size_t errors, std::size_t runs) {
  if (runs == 0) throw std::invalid_argument("wilson_interval: runs must be >= 1");
  constexpr double z = 1.96;
  const double n = static_cast<double>(runs);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

double resolve_exploration_param(const PolicyConfig& policy, const Setting& setting,
                                 std::size_t budget, double epsilon, double sigma) {
  if (policy.a_mode == PolicyConfig::ExplorationMode::Literal) return policy.a_literal;

  double auto_value = 0.0;
  if (policy.id == "ucb_e") {
    // Audibert's prescription 25 (T - K) / (36 H1); the optimal arm enters H1
    // with the smallest positive gap.
    const GapProfile profile = gap_profile(setting.arms, budget);
    const double h1 = complexity_h1(profile, 2.0) +
                      1.0 / (profile.sorted_gaps.front() * profile.sorted_gaps.front());
    auto_value = 25.0 * (static_cast<double>(budget) - static_cast<double>(setting.arms.size())) /
                 (36.0 * h1);
  } else if (policy.id == "r_ucbe") {
    double beta;
    if (policy.beta.has_value()) {
      beta = *policy.beta;
    } else {
      const auto feasible = max_feasible_beta(setting.arms, budget);
      if (!feasible.has_value() || !std::isfinite(*feasible))
        throw std::invalid_argument(
            "r_ucbe: no finite feasible beta for this setting; set \"beta\" explicitly");
      beta = *feasible;
    }
    // Evaluated unconditionally: the sign precondition of the closed-form
    // threshold fails on moderate budgets, while the squared expression is
    // still the standard operating value for the exploration parameter.
    const GapProfile profile = gap_profile(setting.arms, budget);
    auto_value = closed_form_exploration_value(profile, beta, budget, setting.arms.size(), epsilon,
                                             sigma);
  } else {
    return 0.0;  // policies without an exploration parameter
  }

  if (policy.a_mode == PolicyConfig::ExplorationMode::ScaledAuto)
    return policy.a_scale * auto_value;
  return auto_value;
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& policy, std::size_t num_arms,
                                    std::size_t budget, double epsilon, double sigma,
                                    double exploration_param) {
  const double eps = policy.epsilon.value_or(epsilon);
  if (policy.id == "r_ucbe") {
    return std::make_unique<RucbePolicy>(
        RucbeParams{exploration_param, eps, sigma, budget, num_arms});
  }
  if (policy.id == "r_sr") {
    return std::make_unique<RsrPolicy>(RsrParams{budget, num_arms, eps}, true);
  }
  if (policy.id == "sr") {
    return std::make_unique<RsrPolicy>(RsrParams{budget, num_arms, eps}, false);
  }
  if (policy.id == "uniform") {
    return std::make_unique<UniformPolicy>(budget, num_arms, false);
  }
  if (policy.id == "uniform_window") {
    return std::make_unique<UniformPolicy>(budget, num_arms, true);
  }
  if (policy.id == "ucb_e") {
    return std::make_unique<UcbePolicy>(budget, num_arms, exploration_param);
  }
  throw std::invalid_argument("make_policy: unknown id '" + policy.id + "'");
}

RunRecord simulate_run(const Setting& setting, const PolicyConfig& policy, std::size_t budget,
                       double epsilon, std::uint64_t seed, std::size_t run_index,
                       double exploration_param) {
  const auto start = std::chrono::steady_clock::now();

  Bandit bandit(setting.arms, setting.sigma, seed);
  auto instance =
      make_policy(policy, setting.arms.size(), budget, epsilon, setting.sigma, exploration_param);

  std::size_t rounds = 0;
  while (rounds < budget && !instance->finished()) {
    ++rounds;
    const std::size_t arm = instance->choose(rounds);
    const double reward = bandit.pull(arm);
    instance->observe(arm, reward);
  }
  if (bandit.total_pulls() != rounds || (!instance->finished() && rounds != budget))
    throw std::logic_error("simulate_run: budget accounting violated");

  RunRecord record;
  record.policy = policy.name;
  record.budget = budget;
  record.run = run_index;
  record.seed = seed;
  record.recommended = instance->recommend();
  record.correct = record.recommended == bandit.best_arm_at(budget);
  record.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return record;
}

std::vector<RunRecord> run_cell(const ExperimentSpec& spec, const PolicyConfig& policy,
                                std::size_t budget) {
  const double a =
      resolve_exploration_param(policy, spec.setting, budget, spec.epsilon, spec.setting.sigma);
  std::vector<RunRecord> records;
  records.reserve(spec.runs);
  for (std::size_t r = 0; r < spec.runs; ++r) {
    const std::uint64_t seed = mix_seed(spec.master_seed, policy.id, budget, r);
    records.push_back(simulate_run(spec.setting, policy, budget, spec.epsilon, seed, r, a));
  }
  return records;
}

CellSummary summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: empty cell");
  CellSummary out;
  out.policy = records.front().policy;
  out.budget = records.front().budget;
  out.runs = records.size();
  std::size_t errors = 0;
  double ms = 0.0;
  for (const RunRecord& r : records) {
    if (r.policy != out.policy || r.budget != out.budget)
      throw std::invalid_argument("summarize: records span multiple cells");
    errors += r.correct ? 0 : 1;
    ms += r.wall_ms;
  }
  out.error_rate = static_cast<double>(errors) / static_cast<double>(out.runs);
  const WilsonInterval ci = wilson_interval(errors, out.runs);
  out.ci_low = ci.low;
  out.ci_high = ci.high;
  out.mean_ms = ms / static_cast<double>(out.runs);
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads) {
  struct Cell {
    const PolicyConfig* policy;
    std::size_t budget;
    double exploration_param;
  };
  std::vector<Cell> cells;
  cells.reserve(spec.policies.size() * spec.budgets.size());
  for (const PolicyConfig& p : spec.policies) {
    for (std::size_t budget : spec.budgets) {
      cells.push_back(
          {&p, budget,
           resolve_exploration_param(p, spec.setting, budget, spec.epsilon, spec.setting.sigma)});
    }
  }

  const std::size_t total_runs = cells.size() * spec.runs;
  std::vector<RunRecord> records(total_runs);

  // Flat task list; workers claim indices and write into preassigned slots,
  // so scheduling cannot change any output.
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total_runs || failed.load()) return;
      const Cell& cell = cells[task / spec.runs];
      const std::size_t run_index = task % spec.runs;
      const std::uint64_t seed = mix_seed(spec.master_seed, cell.policy->id, cell.budget,
                                          run_index);
      try {
        records[task] = simulate_run(spec.setting, *cell.policy, cell.budget, spec.epsilon, seed,
                                     run_index, cell.exploration_param);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = e.what();
        failed.store(true);
        return;
      }
    }
  };

  const unsigned worker_count = std::max(1u, threads);
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("run_experiment: " + error_message);

  ExperimentResult result;
  result.records = std::move(records);
  std::sort(result.records.begin(), result.records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return std::tie(a.policy, a.budget, a.run) < std::tie(b.policy, b.budget, b.run);
            });
  const std::span<const RunRecord> all(result.records);
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i + 1;
    while (j < all.size() && all[j].policy == all[i].policy && all[j].budget == all[i].budget) ++j;
    result.summaries.push_back(summarize(all.subspan(i, j - i)));
    i = j;
  }
  return result;
}

void write_summary_csv(std::span<const CellSummary> summaries, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "policy,T,runs,error_rate,ci_low,ci_high,mean_ms\n";
  for (const CellSummary& s : summaries) {
    out << s.policy << ',' << s.budget << ',' << s.runs << ',' << fmt10(s.error_rate) << ','
        << fmt10(s.ci_low) << ',' << fmt10(s.ci_high) << ',' << fmt10(s.mean_ms) << '\n';
  }
}

void write_summary_json(std::span<const CellSummary> summaries,
                        const std::filesystem::path& path) {
  json rows = json::array();
  for (const CellSummary& s : summaries) {
    rows.push_back({{"policy", s.policy},
                    {"T", s.budget},
                    {"runs", s.runs},
                    {"error_rate", round10(s.error_rate)},
                    {"ci_low", round10(s.ci_low)},
                    {"ci_high", round10(s.ci_high)},
                    {"mean_ms", round10(s.mean_ms)}});
  }
  open_out(path) << rows.dump(2) << '\n';
}

std::vector<CellSummary> read_summary_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  json rows = json::parse(in);
  std::vector<CellSummary> out;
  for (const json& row : rows) {
    CellSummary s;
    s.policy = row.at("policy").get<std::string>();
    s.budget = row.at("T").get<std::size_t>();
    s.runs = row.at("runs").get<std::size_t>();
    s.error_rate = row.at("error_rate").get<double>();
    s.ci_low = row.at("ci_low").get<double>();
    s.ci_high = row.at("ci_high").get<double>();
    s.mean_ms = row.at("mean_ms").get<double>();
    out.push_back(std::move(s));
  }
  return out;
}

void write_runs_csv(std::span<const RunRecord> records, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "policy,T,run,seed,recommended,correct\n";
  for (const RunRecord& r : records) {
    out << r.policy << ',' << r.budget << ',' << r.run << ',' << r.seed << ',' << r.recommended
        << ',' << (r.correct ? 1 : 0) << '\n';
  }
}

}  // namespace rbai
