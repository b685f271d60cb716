#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "rising_bai/estimator.hpp"

using namespace rbai;

namespace {

WindowEstimator feed(const std::vector<double>& rewards, double epsilon, std::size_t budget) {
  WindowEstimator est(epsilon, budget);
  for (double x : rewards) est.add(x);
  return est;
}

}  // namespace

TEST_CASE("window width") {
  CHECK(window_width(8, 0.25) == 2);
  CHECK(window_width(3, 0.25) == 0);
  CHECK(window_width(100, 0.49) == 49);
  CHECK(window_width(0, 0.1) == 0);
  CHECK_THROWS_AS(window_width(10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(window_width(10, 0.0), std::invalid_argument);
  for (std::size_t n = 0; n <= 200; ++n) {
    for (double eps : {0.05, 0.25, 0.4, 0.49}) CHECK(2 * window_width(n, eps) <= n);
  }
}

TEST_CASE("sentinel ordering and argmax") {
  const Estimate fin1 = 1.0, fin2 = 2.0, inf = std::nullopt;
  CHECK(estimate_less(fin1, fin2));
  CHECK(estimate_less(fin2, inf));
  CHECK_FALSE(estimate_less(inf, fin2));
  CHECK_FALSE(estimate_less(inf, inf));

  const std::vector<Estimate> values{fin1, inf, fin2, inf};
  CHECK(argmax_estimate(values) == 1);  // sentinel wins, lowest index on ties
  const std::vector<Estimate> finite{1.0, 3.0, 3.0};
  CHECK(argmax_estimate(finite) == 1);
  CHECK(argmin_estimate(finite) == 0);
  const std::vector<Estimate> tied_min{2.0, 1.0, 1.0, 5.0};
  CHECK(argmin_estimate(tied_min) == 2);  // highest index among minima
  const std::vector<Estimate> all_sentinel{inf, inf};
  CHECK(argmin_estimate(all_sentinel) == 1);
}

TEST_CASE("pessimistic estimate") {
  const std::vector<double> ladder{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(*feed(ladder, 0.25, 8).pessimistic() == doctest::Approx(7.5));
  CHECK(*feed({0.4, 0.4, 0.4, 0.4}, 0.25, 4).pessimistic() == doctest::Approx(0.4));
  CHECK_FALSE(feed({1.0, 2.0}, 0.25, 4).pessimistic().has_value());  // h = 0
  CHECK_FALSE(feed({}, 0.25, 4).pessimistic().has_value());
  CHECK(*naive_pessimistic(ladder, 0.25) == doctest::Approx(7.5));
}

TEST_CASE("optimistic estimate") {
  std::vector<double> ramp(8);
  for (std::size_t l = 1; l <= 8; ++l) ramp[l - 1] = static_cast<double>(l);

  SUBCASE("exact on linear sequences") {
    CHECK(*feed(ramp, 0.25, 20).optimistic() == doctest::Approx(20.0));
    CHECK(*naive_optimistic(ramp, 0.25, 20) == doctest::Approx(20.0));
  }
  SUBCASE("hand-evaluated window sum at T = 8") {
    CHECK(*feed(ramp, 0.25, 8).optimistic() == doctest::Approx(8.0));
  }
  SUBCASE("constant rewards have zero slope") {
    CHECK(*feed({0.4, 0.4, 0.4, 0.4}, 0.25, 1000).optimistic() == doctest::Approx(0.4));
  }
  SUBCASE("sentinel while the window is empty") {
    WindowEstimator est(0.25, 10);
    CHECK_FALSE(est.optimistic().has_value());
    est.add(1.0);
    CHECK(est.width() == 0);
    CHECK_FALSE(est.optimistic().has_value());
    CHECK_FALSE(est.pessimistic_radius({1.0, 1.0}).has_value());
  }
}

TEST_CASE("incremental accumulators match their defining sums") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (double eps : {0.1, 0.25, 0.49}) {
    WindowEstimator est(eps, 5000);
    std::vector<double> history;
    for (int step = 1; step <= 2000; ++step) {
      history.push_back(unif(rng));
      est.add(history.back());
      if (step % 157 != 0) continue;

      const std::size_t n = history.size();
      const std::size_t h = window_width(n, eps);
      if (h == 0) continue;
      double sum_last = 0, sum_prev = 0, weighted_last = 0, weighted_prev = 0;
      for (std::size_t l = n - h + 1; l <= n; ++l) {
        sum_last += history[l - 1];
        weighted_last += static_cast<double>(l) * history[l - 1];
      }
      for (std::size_t l = n - 2 * h + 1; l <= n - h; ++l) {
        sum_prev += history[l - 1];
        weighted_prev += static_cast<double>(l + h) * history[l - 1];
      }
      CHECK(est.sum_last_window() == doctest::Approx(sum_last).epsilon(1e-9));
      CHECK(est.sum_prev_window() == doctest::Approx(sum_prev).epsilon(1e-9));
      CHECK(est.weighted_last_window() == doctest::Approx(weighted_last).epsilon(1e-9));
      CHECK(est.weighted_prev_window() == doctest::Approx(weighted_prev).epsilon(1e-9));
      CHECK(*est.pessimistic() == doctest::Approx(*naive_pessimistic(history, eps)).epsilon(1e-9));
      CHECK(*est.optimistic() ==
            doctest::Approx(*naive_optimistic(history, eps, 5000)).epsilon(1e-9));
    }
  }
}

TEST_CASE("confidence radii") {
  SUBCASE("pessimistic radius hand value") {
    // sigma = 1, a = 2, n = 32, eps = 0.25 -> h = 8 -> sqrt(2/8) = 0.5
    CHECK(*pessimistic_radius(32, 0.25, {2.0, 1.0}) == doctest::Approx(0.5));
    CHECK(*pessimistic_radius(32, 0.25, {0.0, 1.0}) == 0.0);
    CHECK(*pessimistic_radius(32, 0.25, {2.0, 0.0}) == 0.0);
    CHECK_FALSE(pessimistic_radius(3, 0.25, {2.0, 1.0}).has_value());
  }
  SUBCASE("optimistic radius hand value") {
    // sigma = 0.01, T = 100, n = 20, h = 5, a = 10 -> 0.01 * 84 * sqrt(10/125)
    const double expected = 0.01 * 84.0 * std::sqrt(10.0 / 125.0);
    CHECK(*optimistic_radius(20, 0.25, {10.0, 0.01}, 100) == doctest::Approx(expected));
    CHECK(expected == doctest::Approx(0.23759).epsilon(1e-4));
    CHECK(*optimistic_radius(20, 0.25, {0.0, 0.01}, 100) == 0.0);
  }
  SUBCASE("lead term vanishes at n = T with h = 1") {
    CHECK(*optimistic_radius(4, 0.25, {10.0, 1.0}, 4) == doctest::Approx(0.0));
  }
}

TEST_CASE("bias bounds") {
  SUBCASE("constant arm has zero bias") {
    const ArmModel arm(TabulatedArm{std::vector<double>(64, 0.5)});
    const BiasBounds bias = bias_bounds(arm, 20, 0.25, 30);
    CHECK(bias.pessimistic == 0.0);
    CHECK(bias.optimistic == 0.0);
  }
  SUBCASE("linear arm: coefficient (2T - 2n + h - 1)/2 times the slope") {
    const double g = 0.002;
    std::vector<double> values(128);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = g * static_cast<double>(i + 1);
    const ArmModel arm(TabulatedArm{values});
    // T = 100, n = 20, h = 5 -> coefficient 2*100 - 40 + 5 - 1 = 164
    const BiasBounds bias = bias_bounds(arm, 20, 0.25, 100);
    CHECK(bias.pessimistic == doctest::Approx(82.0 * g));
    CHECK(bias.optimistic == doctest::Approx(82.0 * g));
  }
  SUBCASE("coefficient collapses at n = T with h = 1") {
    const ArmModel arm(ParametricArm{1.0, 37.0, 1.0});
    const BiasBounds bias = bias_bounds(arm, 4, 0.25, 4);
    CHECK(bias.pessimistic == doctest::Approx(0.0));
    CHECK(bias.optimistic == doctest::Approx(0.0));
  }
  SUBCASE("undefined while h = 0") {
    const ArmModel arm(ParametricArm{1.0, 37.0, 1.0});
    CHECK_THROWS_AS(bias_bounds(arm, 3, 0.25, 100), std::out_of_range);
  }
}

TEST_CASE("pessimism sandwich on noiseless rising arms") {
  // mu_hat <= mu(n) <= mu(T) <= mu_check whenever h(n) >= 1
  const ArmModel arm(ParametricArm{0.88, 10.0, 1.0});
  const std::size_t budget = 500;
  WindowEstimator est(0.25, budget);
  for (std::size_t n = 1; n <= budget; ++n) {
    est.add(mean_reward(arm, n));
    if (est.width() == 0) continue;
    const double here = mean_reward(arm, n);
    const double target = mean_reward(arm, budget);
    CHECK(*est.pessimistic() <= here + 1e-12);
    CHECK(*est.optimistic() >= target - 1e-12);
  }
}

TEST_CASE("linear exactness across epsilons") {
  const double p = 0.05, q = 0.0003;
  const std::size_t budget = 2000;
  for (double eps : {0.1, 0.25, 0.49}) {
    WindowEstimator est(eps, budget);
    for (std::size_t l = 1; l <= 1000; ++l) {
      est.add(p + q * static_cast<double>(l));
      if (est.width() == 0) continue;
      const double expected = p + q * static_cast<double>(budget);
      CHECK(*est.optimistic() == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}
