#include <doctest.h>

#include <stdexcept>

#include <vector>

#include "rising_bai/bandit.hpp"

using namespace rbai;

TEST_CASE("noiseless pulls follow the rested progression") {
  const std::vector<ArmModel> arms{ArmModel(TabulatedArm{{0.1, 0.2}}),
                                   ArmModel(TabulatedArm{{0.3, 0.3}})};
  Bandit bandit(arms, 0.0, 1);
  CHECK(bandit.pull(1) == 0.3);
  CHECK(bandit.pull(0) == 0.1);
  CHECK(bandit.pull(0) == 0.2);
  CHECK(bandit.pulls(0) == 2);
  CHECK(bandit.pulls(1) == 1);
  CHECK(bandit.total_pulls() == 3);
}

TEST_CASE("equal seeds give bit-identical reward sequences") {
  const std::vector<ArmModel> arms{ArmModel(ParametricArm{1.0, 37.0, 1.0}),
                                   ArmModel(ParametricArm{0.88, 10.0, 1.0})};
  Bandit a(arms, 0.25, 987654321);
  Bandit b(arms, 0.25, 987654321);
  Bandit c(arms, 0.25, 987654322);
  bool any_difference = false;
  for (int t = 0; t < 200; ++t) {
    const std::size_t arm = t % 2;
    const double xa = a.pull(arm);
    CHECK(xa == b.pull(arm));
    any_difference = any_difference || (xa != c.pull(arm));
  }
  CHECK(any_difference);
}

TEST_CASE("rested determinism: the n-th observation equals mu(n) when sigma is 0") {
  const std::vector<ArmModel> arms{ArmModel(ParametricArm{0.7, 10.0, 1.0})};
  Bandit bandit(arms, 0.0, 5);
  for (std::size_t n = 1; n <= 50; ++n) CHECK(bandit.pull(0) == mean_reward(arms[0], n));
}

TEST_CASE("bandit argument validation") {
  const std::vector<ArmModel> arms{ArmModel(TabulatedArm{{0.5}})};
  Bandit bandit(arms, 0.0, 1);
  CHECK_THROWS_AS(bandit.pull(3), std::out_of_range);
  CHECK_THROWS_AS((Bandit({}, 0.0, 1)), std::invalid_argument);
  CHECK_THROWS_AS((Bandit(arms, -0.1, 1)), std::invalid_argument);
}

TEST_CASE("best_arm_at reads the ground truth") {
  const std::vector<ArmModel> arms{ArmModel(ParametricArm{1.0, 37.0, 1.0}),
                                   ArmModel(ParametricArm{0.88, 10.0, 1.0})};
  Bandit bandit(arms, 0.0, 1);
  CHECK(bandit.best_arm_at(100) == 1);   // fast riser leads early
  CHECK(bandit.best_arm_at(3200) == 0);  // slow riser wins at large budgets
}

TEST_CASE("gaussian stream is reproducible and roughly standard") {
  GaussianStream g1(123), g2(123);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = g1.next();
    CHECK(x == g2.next());
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.0).epsilon(0.05));
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
