#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rising_bai/estimator.hpp"

namespace rbai {

/// Fixed-budget BAI strategy as a state machine: choose / observe exactly once
/// per round, then recommend after the budget is spent. Policies never see the
/// ground-truth curves at decision time; oracle-derived parameters (if any)
/// are fixed at construction.
class Policy {
 public:
  virtual ~Policy() = default;

  /// Arm to pull this round (rounds are 1-based).
  virtual std::size_t choose(std::size_t round) = 0;
  virtual void observe(std::size_t arm, double reward) = 0;

  /// Final recommendation; throws std::logic_error before the run is complete.
  virtual std::size_t recommend() const = 0;

  /// Phase-based policies stop early when their schedule is exhausted;
  /// remaining budget is left unused.
  virtual bool finished() const { return false; }

  virtual std::string_view id() const = 0;
};

struct RucbeParams {
  double a = 0.0;        ///< exploration parameter, >= 0
  double epsilon = 0.25; ///< window fraction, in (0, 1/2)
  double sigma = 0.0;    ///< noise scale used in the exploration bonus
  std::size_t budget = 0;
  std::size_t num_arms = 0;
};

/// Optimistic algorithm: pulls the arm with the largest upper confidence bound
/// B = optimistic estimate + exploration bonus; unpulled (and under-windowed)
/// arms carry the +infinity sentinel, so the warmup emerges from the sentinel
/// ordering rather than a forced round-robin. The final recommendation is the
/// arm with the largest optimistic estimate at its terminal pull count.
class RucbePolicy final : public Policy {
 public:
  explicit RucbePolicy(const RucbeParams& params);

  std::size_t choose(std::size_t round) override;
  void observe(std::size_t arm, double reward) override;
  std::size_t recommend() const override;
  std::string_view id() const override { return "r_ucbe"; }

  std::size_t pulls(std::size_t arm) const { return estimators_.at(arm).pulls(); }
  Estimate bound(std::size_t arm) const { return bounds_.at(arm); }

 private:
  RucbeParams params_;
  std::vector<WindowEstimator> estimators_;
  std::vector<Estimate> bounds_;
  std::size_t rounds_done_ = 0;
};

/// Per-phase pull quotas N_1 <= ... <= N_{K-1} of the successive-rejects
/// schedule; quotas[j-1] is the per-arm count reached during phase j.
struct PhaseSchedule {
  std::vector<std::size_t> quotas;
  std::size_t total_pulls = 0;
};

/// log-bar(K) = 1/2 + sum_{i=2..K} 1/i.
double log_bar(std::size_t num_arms);

/// N_j = ceil((T - K) / (log_bar(K) * (K + 1 - j))) for phases j = 1..K-1.
/// Requires T > K >= 2; the induced total never exceeds T.
PhaseSchedule rsr_schedule(std::size_t budget, std::size_t num_arms);

struct RsrParams {
  std::size_t budget = 0;
  std::size_t num_arms = 0;
  double epsilon = 0.25;  ///< window fraction of the rejection-time pessimistic estimator
};

/// Rising successive rejects: K-1 phases on the rsr_schedule quotas; at each
/// phase end the active arm with the smallest pessimistic (trailing-window)
/// estimate is discarded, ties discarding the highest index. Rounds beyond the
/// schedule total are left unused.
class RsrPolicy final : public Policy {
 public:
  RsrPolicy(const RsrParams& params, bool windowed_rejection = true);

  std::size_t choose(std::size_t round) override;
  void observe(std::size_t arm, double reward) override;
  std::size_t recommend() const override;
  bool finished() const override;
  std::string_view id() const override { return windowed_ ? "r_sr" : "sr"; }

  std::size_t active_count() const { return active_.size(); }

 private:
  Estimate rejection_statistic(std::size_t arm) const;
  void finish_phase();
  void advance();

  RsrParams params_;
  bool windowed_;  // false: stationary SR baseline, full-history means
  PhaseSchedule schedule_;
  std::vector<WindowEstimator> estimators_;  // windowed statistic
  std::vector<double> sums_;                 // full-history statistic
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> active_;
  std::size_t phase_ = 1;
  std::size_t cursor_ = 0;  // position in active_ of the arm being filled
};

/// Round-robin baseline; recommends the best full-sample mean, or the best
/// mean over the last max(1, floor(T / 4K)) samples per arm when windowed.
class UniformPolicy final : public Policy {
 public:
  UniformPolicy(std::size_t budget, std::size_t num_arms, bool windowed);

  std::size_t choose(std::size_t round) override;
  void observe(std::size_t arm, double reward) override;
  std::size_t recommend() const override;
  std::string_view id() const override { return windowed_ ? "uniform_window" : "uniform"; }

  std::size_t window() const { return window_; }

 private:
  std::size_t budget_;
  bool windowed_;
  std::size_t window_;
  std::vector<std::vector<double>> rewards_;
  std::size_t rounds_done_ = 0;
};

/// Stationary UCB-E baseline: pulls argmax of empirical mean + sqrt(a / N_i)
/// and recommends the argmax of that same index at the end.
class UcbePolicy final : public Policy {
 public:
  UcbePolicy(std::size_t budget, std::size_t num_arms, double a);

  std::size_t choose(std::size_t round) override;
  void observe(std::size_t arm, double reward) override;
  std::size_t recommend() const override;
  std::string_view id() const override { return "ucb_e"; }

 private:
  Estimate index(std::size_t arm) const;

  std::size_t budget_;
  double a_;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  std::size_t rounds_done_ = 0;
};

}  // namespace rbai
