#include "rising_bai/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rising_bai/policies.hpp"  // log_bar

namespace rbai {

GapProfile gap_profile(std::span<const ArmModel> arms, std::size_t target_budget) {
  if (arms.empty()) throw std::invalid_argument("gap_profile: no arms");
  std::vector<double> means(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) means[i] = mean_reward(arms[i], target_budget);

  std::size_t best = 0;
  for (std::size_t i = 1; i < arms.size(); ++i)
    if (means[i] > means[best]) best = i;
  for (std::size_t i = 0; i < arms.size(); ++i)
    if (i != best && means[i] == means[best])
      throw std::domain_error("gap_profile: tied optimum at the target budget");

  GapProfile out;
  out.budget = target_budget;
  out.optimal_arm = best;
  out.gaps.resize(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) out.gaps[i] = means[best] - means[i];
  out.sorted_gaps.reserve(arms.size() - 1);
  for (std::size_t i = 0; i < arms.size(); ++i)
    if (i != best) out.sorted_gaps.push_back(out.gaps[i]);
  std::sort(out.sorted_gaps.begin(), out.sorted_gaps.end());
  return out;
}

double complexity_h1(const GapProfile& profile, double eta) {
  double sum = 0.0;
  for (double gap : profile.sorted_gaps) sum += std::pow(gap, -eta);
  return sum;
}

double complexity_h2(const GapProfile& profile) {
  double best = 0.0;
  for (std::size_t k = 0; k < profile.sorted_gaps.size(); ++k) {
    const double idx = static_cast<double>(k + 2);  // smallest gap has Audibert index 2
    best = std::max(best, idx / (profile.sorted_gaps[k] * profile.sorted_gaps[k]));
  }
  return best;
}

double psi_beta(const GapProfile& profile, double beta) {
  if (!(beta > 1.0)) throw std::domain_error("psi_beta: beta must exceed 1");
  double best = 0.0;
  for (std::size_t k = 0; k < profile.sorted_gaps.size(); ++k) {
    const double idx = static_cast<double>(k + 2);
    best = std::max(best, std::pow(idx, beta / (beta - 1.0)) *
                              std::pow(profile.sorted_gaps[k], -1.0 / (beta - 1.0)));
  }
  return best;
}

double rsr_budget_constant(double beta, std::size_t num_arms) {
  if (!(beta > 1.0)) throw std::domain_error("rsr_budget_constant: beta must exceed 1");
  return std::pow(2.0, -(1.0 + beta) / (1.0 - beta)) *
         std::pow(log_bar(num_arms), -beta / (1.0 - beta));
}

BudgetCheck rsr_budget_ok(const GapProfile& profile, double beta, std::size_t num_arms,
                          std::size_t budget) {
  const double required = rsr_budget_constant(beta, num_arms) * psi_beta(profile, beta);
  const double margin = static_cast<double>(budget) - required;
  return BudgetCheck{margin >= 0.0, margin};
}

double rucbe_error_bound(double a, std::size_t budget, std::size_t num_arms) {
  if (!(a >= 0.0)) throw std::domain_error("rucbe_error_bound: a must be >= 0");
  const double raw = 2.0 * static_cast<double>(budget) * static_cast<double>(num_arms) *
                     std::exp(-a / 10.0);
  return std::min(1.0, raw);
}

double rsr_error_bound(const GapProfile& profile, std::size_t budget, std::size_t num_arms,
                       double epsilon, double sigma) {
  if (budget <= num_arms) throw std::invalid_argument("rsr_error_bound: budget must exceed K");
  if (sigma == 0.0) return 0.0;
  const double kd = static_cast<double>(num_arms);
  const double exponent = -(epsilon / (8.0 * sigma * sigma)) *
                          (static_cast<double>(budget) - kd) /
                          (log_bar(num_arms) * complexity_h2(profile));
  return std::min(1.0, 0.5 * kd * (kd - 1.0) * std::exp(exponent));
}

std::size_t min_budget_for_stable_gaps(double beta, double min_asymptotic_gap) {
  if (!(beta > 1.0)) throw std::domain_error("min_budget_for_stable_gaps: beta must exceed 1");
  if (!(min_asymptotic_gap > 0.0))
    throw std::domain_error("min_budget_for_stable_gaps: the gap must be positive");
  const double raw =
      1.0 + std::pow(0.5 * (beta - 1.0) * min_asymptotic_gap, 1.0 / (1.0 - beta));
  return static_cast<std::size_t>(std::ceil(raw));
}

namespace {

// Left side of the pull-bound inequality; non-increasing in y.
double pull_bound_lhs(const std::function<double(std::int64_t)>& increment_fn, std::int64_t y,
                      std::size_t budget, double epsilon, double sigma, double a) {
  const double yd = static_cast<double>(y);
  const auto grown = static_cast<std::int64_t>((1.0 - 2.0 * epsilon) * yd);
  const auto h = static_cast<std::int64_t>(epsilon * yd);
  const double td = static_cast<double>(budget);
  const double hd = static_cast<double>(h);
  return td * increment_fn(grown) + 2.0 * td * sigma * std::sqrt(a / (hd * hd * hd));
}

}  // namespace

std::optional<std::int64_t> suboptimal_pull_bound(
    const std::function<double(std::int64_t)>& increment_fn, double gap, std::size_t budget,
    double epsilon, double sigma, double a, std::int64_t pull_cap) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("suboptimal_pull_bound: epsilon must be in (0, 1/2)");
  if (!(gap > 0.0)) throw std::invalid_argument("suboptimal_pull_bound: gap must be positive");

  // Smallest y making both floor(eps*y) and floor((1-2eps)*y) at least 1.
  std::int64_t y_min = static_cast<std::int64_t>(std::ceil(1.0 / epsilon));
  while (static_cast<std::int64_t>((1.0 - 2.0 * epsilon) * static_cast<double>(y_min)) < 1)
    ++y_min;

  const auto holds = [&](std::int64_t y) {
    return pull_bound_lhs(increment_fn, y, budget, epsilon, sigma, a) >= gap;
  };
  if (!holds(y_min)) return y_min - 1;
  if (holds(pull_cap)) return std::nullopt;

  std::int64_t lo = y_min, hi = pull_cap;  // holds(lo), !holds(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (holds(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::optional<std::int64_t> suboptimal_pull_bound(const ArmModel& arm, double gap,
                                                  std::size_t budget, double epsilon, double sigma,
                                                  double a, std::int64_t pull_cap) {
  return suboptimal_pull_bound(
      [&arm](std::int64_t n) { return increment(arm, static_cast<std::size_t>(n)); }, gap, budget,
      epsilon, sigma, a, pull_cap);
}

std::optional<double> exploration_limit(std::span<const ArmModel> arms, std::size_t budget,
                                        double epsilon, double sigma, double a_cap) {
  const GapProfile profile = gap_profile(arms, budget);

  const auto condition_holds = [&](double a) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < arms.size(); ++i) {
      if (i == profile.optimal_arm) continue;
      const auto y = suboptimal_pull_bound(arms[i], profile.gaps[i], budget, epsilon, sigma, a);
      if (!y.has_value()) return false;  // unbounded pulls, condition cannot hold
      total += *y;
      if (total > static_cast<std::int64_t>(budget)) return false;
    }
    return static_cast<std::int64_t>(budget) - total >= 1;
  };

  if (!condition_holds(0.0)) return std::nullopt;
  if (condition_holds(a_cap)) return a_cap;

  double lo = 0.0, hi = a_cap;  // holds(lo), !holds(hi)
  while (hi - lo > 1e-9 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    (condition_holds(mid) ? lo : hi) = mid;
  }
  return lo;
}

double closed_form_exploration_value(const GapProfile& profile, double beta, std::size_t budget,
                                   std::size_t num_arms, double epsilon, double sigma) {
  if (!(beta > 1.0)) throw std::domain_error("closed_form_exploration_value: beta must exceed 1");
  if (sigma == 0.0)
    throw std::domain_error(
        "closed_form_exploration_value: undefined at sigma = 0; use exploration_limit");
  const double spendable = static_cast<double>(budget) - static_cast<double>(num_arms - 1);
  double ratio;
  if (beta < 1.5) {
    ratio = std::pow(spendable, beta - 1.0) / std::pow(complexity_h1(profile, 1.0 / beta), beta);
  } else {
    ratio = std::sqrt(spendable) / std::pow(complexity_h1(profile, 2.0 / 3.0), 1.5);
  }
  const double offset = std::pow(1.0 - 2.0 * epsilon, -beta);
  const double diff = ratio - offset;
  return std::pow(epsilon, 3.0) / (4.0 * sigma * sigma) * diff * diff;
}

std::optional<double> exploration_limit_closed(const GapProfile& profile, double beta,
                                               std::size_t budget, std::size_t num_arms,
                                               double epsilon, double sigma) {
  if (!(beta > 1.0)) throw std::domain_error("exploration_limit_closed: beta must exceed 1");
  if (sigma == 0.0)
    throw std::domain_error(
        "exploration_limit_closed: undefined at sigma = 0; use exploration_limit");
  const double spendable = static_cast<double>(budget) - static_cast<double>(num_arms - 1);
  double ratio;
  if (beta < 1.5) {
    ratio = std::pow(spendable, beta - 1.0) / std::pow(complexity_h1(profile, 1.0 / beta), beta);
  } else {
    ratio = std::sqrt(spendable) / std::pow(complexity_h1(profile, 2.0 / 3.0), 1.5);
  }
  if (ratio - std::pow(1.0 - 2.0 * epsilon, -beta) < 0.0) return std::nullopt;
  return closed_form_exploration_value(profile, beta, budget, num_arms, epsilon, sigma);
}

}  // namespace rbai
