#include "rising_bai/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbai {

RucbePolicy::RucbePolicy(const RucbeParams& params) : params_(params) {
  if (params.num_arms < 1) throw std::invalid_argument("r_ucbe: at least one arm required");
  if (!(params.a >= 0.0)) throw std::invalid_argument("r_ucbe: a must be >= 0");
  estimators_.reserve(params.num_arms);
  for (std::size_t i = 0; i < params.num_arms; ++i)
    estimators_.emplace_back(params.epsilon, params.budget);
  bounds_.assign(params.num_arms, std::nullopt);  // B_i(0) = +infinity
}

std::size_t RucbePolicy::choose(std::size_t) {
  return argmax_estimate(bounds_);
}

void RucbePolicy::observe(std::size_t arm, double reward) {
  WindowEstimator& est = estimators_.at(arm);
  est.add(reward);
  bounds_[arm] = est.upper_bound({params_.a, params_.sigma});
  ++rounds_done_;
}

std::size_t RucbePolicy::recommend() const {
  if (rounds_done_ < params_.budget)
    throw std::logic_error("r_ucbe: recommend called before the budget was spent");
  // Recommend by the optimistic estimate alone: the pull rule drives every
  // B_i toward a common envelope, so the final argmax over B is a near-tie.
  std::vector<Estimate> estimates(estimators_.size());
  for (std::size_t i = 0; i < estimators_.size(); ++i) estimates[i] = estimators_[i].optimistic();
  return argmax_estimate(estimates);
}

double log_bar(std::size_t num_arms) {
  double sum = 0.5;
  for (std::size_t i = 2; i <= num_arms; ++i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

PhaseSchedule rsr_schedule(std::size_t budget, std::size_t num_arms) {
  if (num_arms < 2) throw std::invalid_argument("rsr_schedule: need at least two arms");
  if (budget <= num_arms) throw std::invalid_argument("rsr_schedule: budget must exceed the arm count");

  const double lb = log_bar(num_arms);
  const double spendable = static_cast<double>(budget - num_arms);
  PhaseSchedule out;
  out.quotas.resize(num_arms - 1);
  std::size_t prev = 0;
  for (std::size_t j = 1; j + 1 <= num_arms; ++j) {
    const double raw = spendable / (lb * static_cast<double>(num_arms + 1 - j));
    const auto quota = static_cast<std::size_t>(std::ceil(raw));
    out.quotas[j - 1] = quota;
    out.total_pulls += (num_arms + 1 - j) * (quota - prev);
    prev = quota;
  }
  return out;
}

RsrPolicy::RsrPolicy(const RsrParams& params, bool windowed_rejection)
    : params_(params),
      windowed_(windowed_rejection),
      schedule_(rsr_schedule(params.budget, params.num_arms)),
      sums_(params.num_arms, 0.0),
      counts_(params.num_arms, 0) {
  estimators_.reserve(params.num_arms);
  for (std::size_t i = 0; i < params.num_arms; ++i)
    estimators_.emplace_back(params.epsilon, params.budget);
  active_.resize(params.num_arms);
  for (std::size_t i = 0; i < params.num_arms; ++i) active_[i] = i;
}

bool RsrPolicy::finished() const { return active_.size() == 1; }

std::size_t RsrPolicy::choose(std::size_t) {
  if (finished()) throw std::logic_error("r_sr: schedule exhausted");
  return active_[cursor_];
}

void RsrPolicy::observe(std::size_t arm, double reward) {
  estimators_.at(arm).add(reward);
  sums_[arm] += reward;
  ++counts_[arm];
  advance();
}

// Move the cursor past arms that already meet the phase quota; consecutive
// phases can share a quota at small budgets, in which case rejections fire
// back-to-back without further pulls.
void RsrPolicy::advance() {
  while (!finished()) {
    if (cursor_ == active_.size()) {
      finish_phase();
      continue;
    }
    if (counts_[active_[cursor_]] >= schedule_.quotas[phase_ - 1]) {
      ++cursor_;
      continue;
    }
    break;
  }
}

Estimate RsrPolicy::rejection_statistic(std::size_t arm) const {
  if (windowed_) return estimators_[arm].pessimistic();
  if (counts_[arm] == 0) return std::nullopt;
  return sums_[arm] / static_cast<double>(counts_[arm]);
}

void RsrPolicy::finish_phase() {
  std::vector<Estimate> stats(active_.size());
  for (std::size_t k = 0; k < active_.size(); ++k) stats[k] = rejection_statistic(active_[k]);
  active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(argmin_estimate(stats)));
  ++phase_;
  cursor_ = 0;
}

std::size_t RsrPolicy::recommend() const {
  if (!finished()) throw std::logic_error("r_sr: recommend called before the last phase");
  return active_.front();
}

UniformPolicy::UniformPolicy(std::size_t budget, std::size_t num_arms, bool windowed)
    : budget_(budget), windowed_(windowed), rewards_(num_arms) {
  if (num_arms < 1) throw std::invalid_argument("uniform: at least one arm required");
  if (budget < num_arms) throw std::invalid_argument("uniform: budget must cover one round-robin pass");
  window_ = std::max<std::size_t>(1, budget / (4 * num_arms));
}

std::size_t UniformPolicy::choose(std::size_t round) {
  return (round - 1) % rewards_.size();
}

void UniformPolicy::observe(std::size_t arm, double reward) {
  rewards_.at(arm).push_back(reward);
  ++rounds_done_;
}

std::size_t UniformPolicy::recommend() const {
  if (rounds_done_ < budget_) throw std::logic_error("uniform: recommend called early");
  std::size_t best = 0;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rewards_.size(); ++i) {
    const auto& xs = rewards_[i];
    const std::size_t take = windowed_ ? std::min(window_, xs.size()) : xs.size();
    double sum = 0.0;
    for (std::size_t k = xs.size() - take; k < xs.size(); ++k) sum += xs[k];
    const double mean = sum / static_cast<double>(take);
    if (mean > best_mean) {
      best_mean = mean;
      best = i;
    }
  }
  return best;
}

UcbePolicy::UcbePolicy(std::size_t budget, std::size_t num_arms, double a)
    : budget_(budget), a_(a), sums_(num_arms, 0.0), counts_(num_arms, 0) {
  if (num_arms < 1) throw std::invalid_argument("ucb_e: at least one arm required");
  if (!(a >= 0.0)) throw std::invalid_argument("ucb_e: a must be >= 0");
}

Estimate UcbePolicy::index(std::size_t arm) const {
  if (counts_[arm] == 0) return std::nullopt;
  const double n = static_cast<double>(counts_[arm]);
  return sums_[arm] / n + std::sqrt(a_ / n);
}

std::size_t UcbePolicy::choose(std::size_t) {
  std::size_t best = 0;
  Estimate best_index = index(0);
  for (std::size_t i = 1; i < counts_.size(); ++i) {
    Estimate v = index(i);
    if (estimate_less(best_index, v)) {
      best = i;
      best_index = v;
    }
  }
  return best;
}

void UcbePolicy::observe(std::size_t arm, double reward) {
  sums_.at(arm) += reward;
  ++counts_[arm];
  ++rounds_done_;
}

std::size_t UcbePolicy::recommend() const {
  if (rounds_done_ < budget_) throw std::logic_error("ucb_e: recommend called early");
  std::vector<Estimate> idx(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) idx[i] = index(i);
  return argmax_estimate(idx);
}

}  // namespace rbai
