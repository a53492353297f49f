#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "expdrem/estimators.hpp"
#include "expdrem/rk4.hpp"

using namespace expdrem;

TEST(DremUpdate, Values) {
  EXPECT_EQ(drem_update_derivative(1.8, 0.0, 3.0, 1e8), 0.0);
  EXPECT_EQ(drem_update_derivative(1.5, 0.5, 0.75, 10.0), 0.0);
  EXPECT_NEAR(drem_update_derivative(1.8, 1.0, 2.0, 1.0), 0.2, 1e-15);
}

TEST(DremUpdate, ClosedFormTrajectory) {
  // theta_hat' = 2 - theta_hat, theta_hat(0) = 1.8  =>  theta_hat(t) = 2 - 0.2 e^-t
  const auto f = [](double, const StateVector<1> &s) { return StateVector<1>{drem_update_derivative(s[0], 1.0, 2.0, 1.0)}; };
  StateVector<1> x{1.8};
  const double h = 1e-3;
  for (int i = 0; i < 1000; ++i) x = rk4_step(f, i * h, x, h);
  EXPECT_NEAR(x[0], 1.9264241117657115, 1e-12);
}

TEST(DremUpdate, SignFollowsErrorTimesDeltaSquared) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double theta = u(rng), theta_hat = u(rng), delta = u(rng), kappa = 1.0 + u(rng) + 3.0;
    const double d = drem_update_derivative(theta_hat, delta, delta * theta, kappa);
    const double expected = kappa * delta * delta * (theta - theta_hat);
    EXPECT_NEAR(d, expected, 1e-12 * std::max(1.0, std::abs(expected)));
    if (std::abs(expected) > 1e-9) {
      EXPECT_EQ(std::signbit(d), std::signbit(theta - theta_hat));
    }
  }
}

TEST(DremUpdate, ErrorNonIncreasingForConsistentMixing) {
  // e' = -kappa Delta^2 e along a time-varying Delta that crosses zero
  const double theta = 2.0, kappa = 40.0, h = 1e-3;
  const auto delta = [](double t) { return 0.8 * std::sin(3.0 * t) + 0.3 * std::cos(7.0 * t); };
  const auto f = [&](double t, const StateVector<1> &s) {
    const double d = delta(t);
    return StateVector<1>{drem_update_derivative(s[0], d, d * theta, kappa)};
  };
  StateVector<1> x{1.8};
  double prev = std::abs(theta - x[0]);
  for (int i = 0; i < 20000; ++i) {
    x = rk4_step(f, i * h, x, h);
    const double e = std::abs(theta - x[0]);
    ASSERT_LE(e, prev + 1e-9) << "step " << i;
    prev = e;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(PlainGradient, Values) {
  EXPECT_EQ(plain_gradient_derivative(1.8, 3.0, 0.0, 1e4), 0.0);
  EXPECT_EQ(plain_gradient_derivative(2.0, 1.0, 0.5, 1e4), 0.0);
  EXPECT_NEAR(plain_gradient_derivative(1.8, 1.0, 0.5, 10.0), 0.5, 1e-14);
}

TEST(Gains, ZeroGainFreezes) {
  EXPECT_EQ(drem_update_derivative(1.8, 3.0, -1.0, 0.0), 0.0);
  EXPECT_EQ(plain_gradient_derivative(1.8, 3.0, -1.0, 0.0), 0.0);
}

TEST(Gains, Validation) {
  EXPECT_THROW(EstimatorGains::validate({-1.0, 1.0}), InvalidSpec);
  EXPECT_THROW(EstimatorGains::validate({1.0, NAN}), InvalidSpec);
  EXPECT_NO_THROW(EstimatorGains::validate({0.0, 0.0}));
}
