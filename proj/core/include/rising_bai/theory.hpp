#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rising_bai/arms.hpp"

namespace rbai {

/// Suboptimality gaps at a target budget. The optimal arm must be unique.
struct GapProfile {
  std::size_t budget = 0;
  std::size_t optimal_arm = 0;       ///< 0-based index of argmax_i mu_i(T)
  std::vector<double> gaps;          ///< per arm, gaps[optimal_arm] == 0
  std::vector<double> sorted_gaps;   ///< the K-1 positive gaps, ascending
};

/// Throws std::domain_error on a tied optimum (degenerate instance).
GapProfile gap_profile(std::span<const ArmModel> arms, std::size_t target_budget);

/// H_1^eta(T) = sum over suboptimal arms of gap^-eta.
double complexity_h1(const GapProfile& profile, double eta);

/// H_2(T) = max_{i in 2..K} i * sorted_gap_i^-2 (Audibert indexing: the i-th
/// smallest gap carries index i, starting at 2).
double complexity_h2(const GapProfile& profile);

/// Psi_beta(T) = max_{i in 2..K} i^(beta/(beta-1)) * sorted_gap_i^(-1/(beta-1)).
double psi_beta(const GapProfile& profile, double beta);

/// C(beta) = 2^(-(1+beta)/(1-beta)) * log_bar(K)^(-beta/(1-beta)).
double rsr_budget_constant(double beta, std::size_t num_arms);

struct BudgetCheck {
  bool ok = false;
  double margin = 0.0;  ///< T - C(beta) * Psi_beta(T)
};

/// Budget condition T >= C(beta) * Psi_beta(T) under which R-SR's error
/// bound holds.
BudgetCheck rsr_budget_ok(const GapProfile& profile, double beta, std::size_t num_arms,
                          std::size_t budget);

/// min(1, 2 T K exp(-a / 10)).
double rucbe_error_bound(double a, std::size_t budget, std::size_t num_arms);

/// min(1, K(K-1)/2 * exp(-(eps / 8 sigma^2) * (T - K) / (log_bar(K) H_2(T)))).
/// sigma == 0 gives 0 for T > K.
double rsr_error_bound(const GapProfile& profile, std::size_t budget, std::size_t num_arms,
                       double epsilon, double sigma);

/// Smallest budget guaranteeing every gap at T is at least half its asymptotic
/// value: ceil(1 + ((beta-1)/2 * min_gap_at_infinity)^(1/(1-beta))).
std::size_t min_budget_for_stable_gaps(double beta, double min_asymptotic_gap);

inline constexpr std::int64_t kDefaultPullCap = 100'000'000;
inline constexpr double kDefaultExplorationCap = 1e12;

/// Largest integer y in [y_min, pull_cap] satisfying
///   T * gamma(floor((1-2e) y)) + 2 T sigma sqrt(a / floor(e y)^3) >= gap,
/// where y_min is the smallest y making both floored arguments >= 1. The left
/// side is non-increasing in y, so the largest solution is found by bisection.
/// Returns y_min - 1 when the inequality never holds and nullopt (unbounded)
/// when it still holds at pull_cap.
std::optional<std::int64_t> suboptimal_pull_bound(
    const std::function<double(std::int64_t)>& increment_fn, double gap, std::size_t budget,
    double epsilon, double sigma, double a, std::int64_t pull_cap = kDefaultPullCap);

std::optional<std::int64_t> suboptimal_pull_bound(const ArmModel& arm, double gap,
                                                  std::size_t budget, double epsilon, double sigma,
                                                  double a,
                                                  std::int64_t pull_cap = kDefaultPullCap);

/// Implicit exploration threshold a*: the largest a in [0, a_cap] with
/// T - sum over suboptimal arms of suboptimal_pull_bound(a) >= 1, found by
/// bisection (the sum is non-decreasing in a). nullopt when the condition
/// already fails at a = 0; returns a_cap itself when it still holds there.
/// Evaluates the true increments, so this is an oracle-mode quantity.
std::optional<double> exploration_limit(std::span<const ArmModel> arms, std::size_t budget,
                                        double epsilon, double sigma,
                                        double a_cap = kDefaultExplorationCap);

/// The closed-form threshold expression for a*, branch-selected on beta:
///   ratio = (T-(K-1))^(beta-1) / H_1^(1/beta)^beta          for beta in (1, 3/2)
///   ratio = (T-(K-1))^(1/2)    / H_1^(2/3)^(3/2)            for beta >= 3/2
///   value = eps^3 / (4 sigma^2) * (ratio - (1-2 eps)^-beta)^2
/// Sign of (ratio - offset) is NOT checked here; exploration_limit_closed
/// applies the validity precondition on top of this raw value.
double closed_form_exploration_value(const GapProfile& profile, double beta, std::size_t budget,
                                   std::size_t num_arms, double epsilon, double sigma);

/// Closed-form threshold with its precondition enforced: nullopt when
/// ratio - (1-2 eps)^-beta < 0. Throws std::domain_error when sigma == 0
/// (the expression divides by sigma^2; use exploration_limit instead).
std::optional<double> exploration_limit_closed(const GapProfile& profile, double beta,
                                               std::size_t budget, std::size_t num_arms,
                                               double epsilon, double sigma);

}  // namespace rbai
