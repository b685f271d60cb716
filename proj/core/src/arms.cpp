#include "rising_bai/arms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rbai {

namespace {
constexpr double kAssumptionTol = 1e-12;
}

double ParametricArm::value(double x) const {
  if (b == 0.0) return x > 0.0 ? c : 0.0;
  return c * (1.0 - b / std::pow(std::pow(b, 1.0 / psi) + x, psi));
}

ArmModel::ArmModel(ParametricArm arm) : curve_(arm) {
  if (!(arm.c > 0.0 && arm.c <= 1.0))
    throw std::invalid_argument("parametric arm: c must be in (0, 1], got " + std::to_string(arm.c));
  if (!(arm.b >= 0.0))
    throw std::invalid_argument("parametric arm: b must be >= 0, got " + std::to_string(arm.b));
  if (!(arm.psi > 0.0 && arm.psi <= 1.0))
    throw std::invalid_argument("parametric arm: psi must be in (0, 1], got " + std::to_string(arm.psi));
}

ArmModel::ArmModel(TabulatedArm arm) : curve_(std::move(arm)) {
  const auto& values = std::get<TabulatedArm>(curve_).values;
  if (values.empty()) throw std::invalid_argument("tabulated arm: values must be nonempty");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("tabulated arm: expected rewards must lie in [0, 1], got " +
                                  std::to_string(v));
  }
}

std::size_t ArmModel::max_pull() const {
  if (const auto* tab = as_tabulated()) return tab->values.size();
  return std::numeric_limits<std::size_t>::max();
}

double mean_reward(const ArmModel& arm, std::size_t n) {
  if (n < 1) throw std::out_of_range("mean_reward: pull count must be >= 1");
  if (const auto* tab = arm.as_tabulated()) {
    if (n > tab->values.size())
      throw std::out_of_range("mean_reward: pull " + std::to_string(n) +
                              " beyond table of length " + std::to_string(tab->values.size()));
    return tab->values[n - 1];
  }
  return arm.as_parametric()->value(static_cast<double>(n));
}

double increment(const ArmModel& arm, std::size_t n) {
  return mean_reward(arm, n + 1) - mean_reward(arm, n);
}

AssumptionCheck validate_assumptions(const ArmModel& arm, std::size_t horizon) {
  if (horizon < 2) throw std::invalid_argument("validate_assumptions: horizon must be >= 2");
  const std::size_t last = std::min(horizon, arm.max_pull());

  AssumptionCheck out{true, true};
  double prev_gamma = 0.0;
  for (std::size_t n = 1; n + 1 <= last; ++n) {
    const double g = increment(arm, n);
    if (g < -kAssumptionTol) out.monotone = false;
    if (n > 1 && g > prev_gamma + kAssumptionTol) out.concave = false;
    prev_gamma = g;
  }
  return out;
}

std::optional<double> max_feasible_beta(std::span<const ArmModel> arms, std::size_t horizon) {
  if (horizon < 2) throw std::invalid_argument("max_feasible_beta: horizon must be >= 2");

  double bound = std::numeric_limits<double>::infinity();
  for (const ArmModel& arm : arms) {
    const std::size_t last = std::min(horizon, arm.max_pull() - 1);
    for (std::size_t n = 1; n <= last; ++n) {
      const double g = increment(arm, n);
      if (n == 1) {
        if (g > 1.0) return std::nullopt;  // n^-beta = 1 at n = 1, no beta works
        continue;
      }
      if (g > 0.0) bound = std::min(bound, -std::log(g) / std::log(static_cast<double>(n)));
    }
  }
  if (bound <= 1.0) return std::nullopt;
  return bound;
}

}  // namespace rbai
