#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace rbai {

/// Parametric reward curve f(x) = c * (1 - b / (b^(1/psi) + x)^psi).
/// Non-decreasing and concave on x >= 0, with f(0) = 0 and sup f = c.
struct ParametricArm {
  double c = 1.0;    ///< saturation level, in (0, 1]
  double b = 0.0;    ///< shift, in [0, inf); b = 0 gives a constant curve
  double psi = 1.0;  ///< exponent, in (0, 1]

  double value(double x) const;
};

/// Expected rewards tabulated per pull: values[n-1] is the mean of the n-th pull.
/// Queries beyond the table are an error, never an extrapolation.
struct TabulatedArm {
  std::vector<double> values;
};

/// Ground-truth expected-reward curve of one arm. Immutable once constructed;
/// construction validates parameter ranges and that all means lie in [0, 1].
class ArmModel {
 public:
  ArmModel(ParametricArm arm);   // NOLINT(google-explicit-constructor)
  ArmModel(TabulatedArm arm);    // NOLINT(google-explicit-constructor)

  const ParametricArm* as_parametric() const { return std::get_if<ParametricArm>(&curve_); }
  const TabulatedArm* as_tabulated() const { return std::get_if<TabulatedArm>(&curve_); }

  /// Largest pull count with a defined mean (unbounded for parametric arms).
  std::size_t max_pull() const;

 private:
  std::variant<ParametricArm, TabulatedArm> curve_;
};

/// mu(n): expected reward of the n-th pull, n >= 1. Convention: the n-th pull
/// of a parametric arm observes f(n).
double mean_reward(const ArmModel& arm, std::size_t n);

/// gamma(n) = mu(n+1) - mu(n); non-negative for arms satisfying the rising assumption.
double increment(const ArmModel& arm, std::size_t n);

struct AssumptionCheck {
  bool monotone = false;  ///< gamma(n) >= 0 for all checked n
  bool concave = false;   ///< gamma(n+1) <= gamma(n) for all checked n
};

/// Checks the rising-and-concave assumption over n in [1, horizon), within a
/// 1e-12 tolerance to absorb floating-point rounding of parametric curves.
/// Tabulated arms are checked up to their table length.
AssumptionCheck validate_assumptions(const ArmModel& arm, std::size_t horizon);

/// Largest beta > 1 such that gamma_i(n) <= n^-beta for every arm and every
/// n in [1, horizon]; the exact pointwise bound min over (i, n >= 2) with
/// gamma > 0 of -ln(gamma_i(n)) / ln(n).
/// Returns nullopt when infeasible (gamma_i(1) > 1 or the bound is <= 1) and
/// +infinity when no pull constrains beta (all increments zero).
std::optional<double> max_feasible_beta(std::span<const ArmModel> arms, std::size_t horizon);

}  // namespace rbai
