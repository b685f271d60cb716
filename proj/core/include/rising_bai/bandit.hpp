#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rising_bai/arms.hpp"

namespace rbai {

/// Deterministic N(0,1) stream: splitmix-seeded mt19937_64 with an explicit
/// Box-Muller transform, so reward sequences are bit-identical for equal seeds
/// regardless of the standard library's distribution implementation.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : state_(seed) {}

  double next();

 private:
  double uniform01();  // in (0, 1]

  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// A rested rising bandit instance: pulling arm i for the n-th time observes
/// mean_reward(arm_i, n) plus zero-mean Gaussian noise of scale sigma.
/// Single-owner state machine; use one instance per simulation run.
class Bandit {
 public:
  Bandit(std::vector<ArmModel> arms, double sigma, std::uint64_t seed);

  std::size_t num_arms() const { return arms_.size(); }
  double sigma() const { return sigma_; }
  const ArmModel& arm(std::size_t i) const { return arms_.at(i); }

  /// Observe the next reward of the given arm and advance its pull count.
  double pull(std::size_t arm_index);

  std::size_t pulls(std::size_t arm_index) const { return counts_.at(arm_index); }
  std::size_t total_pulls() const { return total_; }

  /// Ground truth argmax_i mu_i(T); lowest index wins exact ties.
  std::size_t best_arm_at(std::size_t target_budget) const;

 private:
  std::vector<ArmModel> arms_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
  double sigma_;
  GaussianStream noise_;
};

}  // namespace rbai
