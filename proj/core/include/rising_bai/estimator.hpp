#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rising_bai/arms.hpp"

namespace rbai {

/// An estimate that may be the +infinity sentinel (undefined-window regime).
/// nullopt is the sentinel; it compares greater than every finite value.
using Estimate = std::optional<double>;

/// true iff a < b under the sentinel ordering (sentinel == +infinity).
bool estimate_less(const Estimate& a, const Estimate& b);

/// Index of the largest estimate; sentinels beat finite values and ties
/// (including ties among sentinels) go to the lowest index.
std::size_t argmax_estimate(std::span<const Estimate> values);

/// Index of the smallest estimate; ties go to the HIGHEST index (the
/// conservative choice when the caller is about to discard the argmin).
std::size_t argmin_estimate(std::span<const Estimate> values);

Estimate estimate_sum(const Estimate& a, const Estimate& b);

/// h(n) = floor(epsilon * n). Requires epsilon in (0, 1/2), which guarantees
/// 2 h(n) <= n so the two comparison windows always fit in the history.
std::size_t window_width(std::size_t n, double epsilon);

struct ConcentrationParams {
  double a = 0.0;      ///< exploration exponent, >= 0
  double sigma = 0.0;  ///< subgaussian noise scale, >= 0
};

/// Confidence half-width of the pessimistic estimate: sigma * sqrt(a / h(n)).
Estimate pessimistic_radius(std::size_t n, double epsilon, const ConcentrationParams& p);

/// Exploration bonus of the optimistic estimate:
/// sigma * (T - n + h(n) - 1) * sqrt(a / h(n)^3). Requires n <= T.
Estimate optimistic_radius(std::size_t n, double epsilon, const ConcentrationParams& p,
                           std::size_t target_budget);

/// Sliding-window estimators of mu(T) over one arm's reward history, with
/// constant-time updates.
///
/// With n pulls observed and h = floor(epsilon * n), the estimators are built
/// from the last two h-wide windows of the pull-indexed rewards x(1..n):
///
///   pessimistic = (1/h) sum_{l=n-h+1}^{n} x(l)
///   optimistic  = (1/h) sum_{l=n-h+1}^{n} [ x(l) + (T-l) * (x(l) - x(l-h)) / h ]
///
/// Both are the +infinity sentinel while h = 0. The running accumulators keep
///   sum_last       = sum x(l)           over l in (n-h,    n]
///   sum_prev       = sum x(l)           over l in (n-2h,   n-h]
///   weighted_last  = sum l * x(l)       over l in (n-h,    n]
///   weighted_prev  = sum (l+h) * x(l)   over l in (n-2h,   n-h]
/// so each add() costs O(1); the full history is retained because a window
/// growth step reaches back to x(n - 2h + 1).
class WindowEstimator {
 public:
  WindowEstimator(double epsilon, std::size_t target_budget);

  void add(double reward);

  std::size_t pulls() const { return history_.size(); }
  std::size_t width() const { return width_; }
  std::size_t target_budget() const { return target_; }
  double epsilon() const { return epsilon_; }

  Estimate pessimistic() const;
  Estimate optimistic() const;
  Estimate pessimistic_radius(const ConcentrationParams& p) const;
  Estimate optimistic_radius(const ConcentrationParams& p) const;
  /// optimistic() + optimistic_radius(): the upper confidence bound B.
  Estimate upper_bound(const ConcentrationParams& p) const;

  std::span<const double> history() const { return history_; }

  double sum_last_window() const { return sum_last_; }
  double sum_prev_window() const { return sum_prev_; }
  double weighted_last_window() const { return weighted_last_; }
  double weighted_prev_window() const { return weighted_prev_; }

 private:
  double x(std::size_t l) const { return history_[l - 1]; }  // pull-indexed, 1-based

  double epsilon_;
  std::size_t target_;
  std::size_t width_ = 0;
  std::vector<double> history_;
  double sum_last_ = 0.0;
  double sum_prev_ = 0.0;
  double weighted_last_ = 0.0;
  double weighted_prev_ = 0.0;
};

/// Reference implementations computing the defining sums directly from the
/// history; the accumulator path is tested against these.
Estimate naive_pessimistic(std::span<const double> rewards, double epsilon);
Estimate naive_optimistic(std::span<const double> rewards, double epsilon,
                          std::size_t target_budget);

/// Ground-truth bias bounds of the two estimators (diagnostic only: they need
/// the increments gamma, which the learner never sees):
///   pessimistic bias <= 0.5 * (2T - 2n + h - 1) * gamma(n - h + 1)
///   optimistic bias  <= 0.5 * (2T - 2n + h - 1) * gamma(n - 2h + 1)
struct BiasBounds {
  double pessimistic = 0.0;
  double optimistic = 0.0;
};
BiasBounds bias_bounds(const ArmModel& arm, std::size_t n, double epsilon,
                       std::size_t target_budget);

}  // namespace rbai
