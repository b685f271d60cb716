#include "rising_bai/bandit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbai {

namespace {

// splitmix64 step; also used to decorrelate user-supplied seeds
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double GaussianStream::uniform01() {
  // 53 random bits mapped to (0, 1]; never returns 0 so log() below is safe
  const std::uint64_t bits = splitmix64(state_) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Bandit::Bandit(std::vector<ArmModel> arms, double sigma, std::uint64_t seed)
    : arms_(std::move(arms)), counts_(arms_.size(), 0), sigma_(sigma), noise_(seed) {
  if (arms_.empty()) throw std::invalid_argument("bandit: at least one arm required");
  if (!(sigma >= 0.0)) throw std::invalid_argument("bandit: sigma must be >= 0");
}

double Bandit::pull(std::size_t arm_index) {
  if (arm_index >= arms_.size()) throw std::out_of_range("bandit: arm index out of range");
  const std::size_t n = ++counts_[arm_index];
  ++total_;
  const double mean = mean_reward(arms_[arm_index], n);
  return sigma_ == 0.0 ? mean : mean + sigma_ * noise_.next();
}

std::size_t Bandit::best_arm_at(std::size_t target_budget) const {
  std::size_t best = 0;
  double best_value = mean_reward(arms_[0], target_budget);
  for (std::size_t i = 1; i < arms_.size(); ++i) {
    const double v = mean_reward(arms_[i], target_budget);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

}  // namespace rbai
