#include "rising_bai/estimator.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace rbai {

bool estimate_less(const Estimate& a, const Estimate& b) {
  if (!b.has_value()) return a.has_value();  // finite < sentinel; sentinel == sentinel
  if (!a.has_value()) return false;
  return *a < *b;
}

std::size_t argmax_estimate(std::span<const Estimate> values) {
  assert(!values.empty());
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (estimate_less(values[best], values[i])) best = i;
  }
  return best;
}

std::size_t argmin_estimate(std::span<const Estimate> values) {
  assert(!values.empty());
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!estimate_less(values[best], values[i])) best = i;  // ties move to higher index
  }
  return best;
}

Estimate estimate_sum(const Estimate& a, const Estimate& b) {
  if (!a.has_value() || !b.has_value()) return std::nullopt;
  return *a + *b;
}

std::size_t window_width(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("window_width: epsilon must be in (0, 1/2)");
  return static_cast<std::size_t>(epsilon * static_cast<double>(n));
}

Estimate pessimistic_radius(std::size_t n, double epsilon, const ConcentrationParams& p) {
  const std::size_t h = window_width(n, epsilon);
  if (h == 0) return std::nullopt;
  return p.sigma * std::sqrt(p.a / static_cast<double>(h));
}

Estimate optimistic_radius(std::size_t n, double epsilon, const ConcentrationParams& p,
                           std::size_t target_budget) {
  const std::size_t h = window_width(n, epsilon);
  if (h == 0) return std::nullopt;
  const double hd = static_cast<double>(h);
  const double lead = static_cast<double>(target_budget) - static_cast<double>(n) + hd - 1.0;
  return p.sigma * lead * std::sqrt(p.a / (hd * hd * hd));
}

WindowEstimator::WindowEstimator(double epsilon, std::size_t target_budget)
    : epsilon_(epsilon), target_(target_budget) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("WindowEstimator: epsilon must be in (0, 1/2)");
}

void WindowEstimator::add(double reward) {
  history_.push_back(reward);
  const std::size_t n = history_.size();
  const std::size_t h = window_width(n, epsilon_);
  assert(h == width_ || h == width_ + 1);  // epsilon < 1 so h grows by at most 1

  if (h == 0) return;
  const double nd = static_cast<double>(n);
  const double hd = static_cast<double>(h);

  if (h == width_) {
    // Window slid by one: drop x(n-h) from the last window, enter x(n);
    // the previous window slides accordingly.
    sum_last_ += x(n) - x(n - h);
    sum_prev_ += x(n - h) - x(n - 2 * h);
    weighted_last_ += nd * x(n) - (nd - hd) * x(n - h);
    weighted_prev_ += nd * x(n - h) - (nd - hd) * x(n - 2 * h);
  } else {
    // Window grew: both windows gain one element at their old left edge and
    // every previous-window weight (l + h) shifts by the new h.
    width_ = h;
    sum_last_ += x(n);
    const double entering = x(n - 2 * h + 1);
    weighted_last_ += nd * x(n);
    weighted_prev_ += sum_prev_ + (nd - hd + 1.0) * entering;
    sum_prev_ += entering;
  }
}

Estimate WindowEstimator::pessimistic() const {
  if (width_ == 0) return std::nullopt;
  return sum_last_ / static_cast<double>(width_);
}

Estimate WindowEstimator::optimistic() const {
  if (width_ == 0) return std::nullopt;
  const double h = static_cast<double>(width_);
  const double trend = static_cast<double>(target_) * (sum_last_ - sum_prev_) / h;
  const double drift = (weighted_last_ - weighted_prev_) / h;
  return (sum_last_ + trend - drift) / h;
}

Estimate WindowEstimator::pessimistic_radius(const ConcentrationParams& p) const {
  if (width_ == 0) return std::nullopt;
  return rbai::pessimistic_radius(pulls(), epsilon_, p);
}

Estimate WindowEstimator::optimistic_radius(const ConcentrationParams& p) const {
  if (width_ == 0) return std::nullopt;
  return rbai::optimistic_radius(pulls(), epsilon_, p, target_);
}

Estimate WindowEstimator::upper_bound(const ConcentrationParams& p) const {
  return estimate_sum(optimistic(), optimistic_radius(p));
}

Estimate naive_pessimistic(std::span<const double> rewards, double epsilon) {
  const std::size_t n = rewards.size();
  const std::size_t h = window_width(n, epsilon);
  if (h == 0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t l = n - h + 1; l <= n; ++l) sum += rewards[l - 1];
  return sum / static_cast<double>(h);
}

Estimate naive_optimistic(std::span<const double> rewards, double epsilon,
                          std::size_t target_budget) {
  const std::size_t n = rewards.size();
  const std::size_t h = window_width(n, epsilon);
  if (h == 0) return std::nullopt;
  const double hd = static_cast<double>(h);
  double sum = 0.0;
  for (std::size_t l = n - h + 1; l <= n; ++l) {
    const double slope = (rewards[l - 1] - rewards[l - h - 1]) / hd;
    sum += rewards[l - 1] + (static_cast<double>(target_budget) - static_cast<double>(l)) * slope;
  }
  return sum / hd;
}

BiasBounds bias_bounds(const ArmModel& arm, std::size_t n, double epsilon,
                       std::size_t target_budget) {
  const std::size_t h = window_width(n, epsilon);
  if (h == 0) throw std::out_of_range("bias_bounds: undefined while h(n) = 0");
  if (n > target_budget) throw std::out_of_range("bias_bounds: n must not exceed the budget");
  const double coeff = 0.5 * (2.0 * static_cast<double>(target_budget) -
                              2.0 * static_cast<double>(n) + static_cast<double>(h) - 1.0);
  return BiasBounds{
      coeff * increment(arm, n - h + 1),
      coeff * increment(arm, n - 2 * h + 1),
  };
}

}  // namespace rbai
