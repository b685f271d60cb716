#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rising_bai/bandit.hpp"
#include "rising_bai/config.hpp"
#include "rising_bai/estimator.hpp"
#include "rising_bai/experiment.hpp"
#include "rising_bai/policies.hpp"

namespace {

std::vector<double> random_trace(std::size_t length) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> out(length);
  for (double& x : out) x = unif(rng);
  return out;
}

// constant-time accumulator path
void BM_estimator_incremental(benchmark::State& state) {
  const auto trace = random_trace(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    rbai::WindowEstimator est(0.25, trace.size());
    for (double x : trace) est.add(x);
    benchmark::DoNotOptimize(est.optimistic());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_estimator_incremental)->Arg(1000)->Arg(10000);

// O(h) recomputation from the defining sums, for contrast
void BM_estimator_naive(benchmark::State& state) {
  const auto trace = random_trace(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::vector<double> history;
    history.reserve(trace.size());
    rbai::Estimate last;
    for (double x : trace) {
      history.push_back(x);
      last = rbai::naive_optimistic(history, 0.25, trace.size());
    }
    benchmark::DoNotOptimize(last);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_estimator_naive)->Arg(1000)->Arg(10000);

// one full r_ucbe run on the synthetic setting (the paper-scale workload)
void BM_rucbe_run(benchmark::State& state) {
  const rbai::ExperimentSpec spec = rbai::builtin_setting_a();
  const std::size_t budget = static_cast<std::size_t>(state.range(0));
  const double a =
      rbai::resolve_exploration_param(spec.policies[0], spec.setting, budget, 0.25, 0.01);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    rbai::Bandit bandit(spec.setting.arms, spec.setting.sigma, seed++);
    rbai::RucbePolicy policy({a, 0.25, spec.setting.sigma, budget, 5});
    for (std::size_t t = 1; t <= budget; ++t) {
      const std::size_t arm = policy.choose(t);
      policy.observe(arm, bandit.pull(arm));
    }
    benchmark::DoNotOptimize(policy.recommend());
  }
  state.SetItemsProcessed(state.iterations() * budget);
}
BENCHMARK(BM_rucbe_run)->Arg(800)->Arg(3200);

void BM_rsr_run(benchmark::State& state) {
  const rbai::ExperimentSpec spec = rbai::builtin_setting_a();
  const std::size_t budget = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    rbai::Bandit bandit(spec.setting.arms, spec.setting.sigma, seed++);
    rbai::RsrPolicy policy({budget, 5, 0.25}, true);
    std::size_t t = 0;
    while (t < budget && !policy.finished()) {
      ++t;
      const std::size_t arm = policy.choose(t);
      policy.observe(arm, bandit.pull(arm));
    }
    benchmark::DoNotOptimize(policy.recommend());
  }
  state.SetItemsProcessed(state.iterations() * budget);
}
BENCHMARK(BM_rsr_run)->Arg(800)->Arg(3200);

}  // namespace

BENCHMARK_MAIN();
