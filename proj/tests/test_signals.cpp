#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "expdrem/signals.hpp"

using namespace expdrem;

namespace {
const RegressorSpec kSinT = RegressorSpec::sinusoid(1.0, 1.0);
const TruthSpec kTruth{2.0, 1.8};
} // namespace

TEST(Regressor, SinusoidValues) {
  EXPECT_DOUBLE_EQ(eval_regressor(kSinT, std::numbers::pi / 2), 1.0);
  EXPECT_DOUBLE_EQ(eval_regressor(kSinT, 0.0), 0.0);
  EXPECT_NEAR(eval_regressor(kSinT, 1.0), 0.8414709848078965, 1e-15);
}

TEST(Regressor, ConstantAndOffset) {
  EXPECT_DOUBLE_EQ(eval_regressor(RegressorSpec::constant(0.7), 123.0), 0.7);
  EXPECT_DOUBLE_EQ(eval_regressor(RegressorSpec::sinusoid(2.0, 1.0, 0.5), std::numbers::pi / 2), 2.5);
}

TEST(Regressor, RejectsBadSpecs) {
  EXPECT_THROW(RegressorSpec::sinusoid(1.0, -1.0), InvalidSpec);
  EXPECT_THROW(RegressorSpec::sinusoid(NAN, 1.0), InvalidSpec);
}

TEST(Noise, Kinds) {
  EXPECT_DOUBLE_EQ(eval_noise(NoiseSpec::sinusoid(1.0, 10.0), 0.0), 0.0);
  EXPECT_DOUBLE_EQ(eval_noise(NoiseSpec::constant(0.5), 0.0), 0.5);
  EXPECT_DOUBLE_EQ(eval_noise(NoiseSpec::constant(0.5), 37.2), 0.5);
  EXPECT_DOUBLE_EQ(eval_noise(NoiseSpec::zero(), 5.0), 0.0);
}

TEST(Noise, UniformIsSampleHeld) {
  const auto n = NoiseSpec::uniform(-0.5, 0.5, 0.01, 42);
  for (int k = 0; k < 200; ++k) {
    const double start = k * 0.01;
    const double v = eval_noise(n, start);
    EXPECT_EQ(eval_noise(n, start + 0.003), v);
    EXPECT_EQ(eval_noise(n, start + 0.0099), v);
  }
  // successive intervals are fresh draws
  int changes = 0;
  for (int k = 0; k < 200; ++k) changes += eval_noise(n, k * 0.01) != eval_noise(n, (k + 1) * 0.01);
  EXPECT_GT(changes, 190);
}

TEST(Noise, UniformBoundaryFromAccumulatedSteps) {
  // t = n*dt lands exactly on a hold boundary in exact arithmetic
  const auto n = NoiseSpec::uniform(-0.5, 0.5, 0.01, 3);
  const double dt = 1e-4;
  for (int k = 1; k < 500; ++k) EXPECT_EQ(hold_index(100.0 * k * dt, 0.01), static_cast<std::uint64_t>(k));
  (void)n;
}

TEST(Noise, UniformStatistics) {
  const auto n = NoiseSpec::uniform(-0.5, 0.5, 1.0, 7);
  double sum = 0.0, sum_sq = 0.0;
  const int count = 100000;
  for (int k = 0; k < count; ++k) {
    const double v = eval_noise(n, k);
    ASSERT_GE(v, -0.5);
    ASSERT_LT(v, 0.5);
    sum += v;
    sum_sq += v * v;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.01);
  EXPECT_NEAR(sum_sq / count, 1.0 / 12.0, 0.002);
}

TEST(Noise, DeterministicGivenSeed) {
  const auto a = NoiseSpec::uniform(-0.5, 0.5, 0.01, 11);
  const auto b = NoiseSpec::uniform(-0.5, 0.5, 0.01, 11);
  const auto c = NoiseSpec::uniform(-0.5, 0.5, 0.01, 12);
  int differ = 0;
  for (int k = 0; k < 1000; ++k) {
    const double t = k * 0.0137;
    EXPECT_EQ(eval_noise(a, t), eval_noise(b, t));
    differ += eval_noise(a, t) != eval_noise(c, t);
  }
  EXPECT_GT(differ, 900);
}

TEST(Noise, BoundIsEnforcedByFactories) {
  EXPECT_THROW(NoiseSpec::sinusoid(1.5, 1.0), InvalidSpec);
  EXPECT_THROW(NoiseSpec::constant(-1.01), InvalidSpec);
  EXPECT_THROW(NoiseSpec::uniform(-0.5, 1.2, 0.1, 0), InvalidSpec);
  EXPECT_THROW(NoiseSpec::uniform(0.5, -0.5, 0.1, 0), InvalidSpec);
  EXPECT_THROW(NoiseSpec::uniform(-0.5, 0.5, 0.0, 0), InvalidSpec);
  EXPECT_NO_THROW(NoiseSpec::sinusoid(1.0, 10.0));
  EXPECT_NO_THROW(NoiseSpec::constant(-1.0));
}

TEST(Noise, ValidatedSpecsStayWithinUnitBound) {
  const NoiseSpec specs[] = {NoiseSpec::sinusoid(1.0, 10.0), NoiseSpec::sinusoid(-0.3, 2.5), NoiseSpec::constant(1.0),
                             NoiseSpec::uniform(-1.0, 1.0, 1e-3, 5), NoiseSpec::zero()};
  for (const auto &n : specs)
    for (int k = 0; k < 20000; ++k) ASSERT_LE(std::abs(eval_noise(n, k * 1.7e-3)), 1.0);
}

TEST(Measurement, Values) {
  EXPECT_DOUBLE_EQ(eval_measurement(kSinT, NoiseSpec::zero(), kTruth, std::numbers::pi / 2), 2.0);
  EXPECT_DOUBLE_EQ(eval_measurement(kSinT, NoiseSpec::constant(0.5), kTruth, 0.0), 0.5);
  EXPECT_NEAR(eval_measurement(kSinT, NoiseSpec::sinusoid(1.0, 10.0), kTruth, 0.3), 0.7321604213825464, 1e-15);
}

TEST(Assumptions, ZeroNoiseHasNoViolations) {
  const auto r = check_assumptions(kSinT, NoiseSpec::zero(), kTruth, 20.0, 1e-3);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_EQ(r.dominance_violation_fraction, 0.0);
}

TEST(Assumptions, ConstantNoiseViolatesNearRegressorZeros) {
  // 2|sin t| <= 0.5 on a fraction 2 asin(0.25) / pi of each period
  const double expected = 2.0 * std::asin(0.25) / std::numbers::pi;
  const auto r = check_assumptions(kSinT, NoiseSpec::constant(0.5), kTruth, 2.0 * std::numbers::pi * 20, 1e-4);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_NEAR(r.dominance_violation_fraction, expected, 1e-3);
}

TEST(Assumptions, BoundFlagRaisedForOversizedNoise) {
  NoiseSpec loud;
  loud.kind = NoiseKind::sinusoid;
  loud.amplitude = 1.5;
  loud.angular_frequency = 1.0;
  const auto r = check_assumptions(kSinT, loud, kTruth, 10.0, 1e-2);
  EXPECT_FALSE(r.bound_holds);
  EXPECT_DOUBLE_EQ(r.noise_sup, 1.5);
}

TEST(Assumptions, RejectsBadSampling) {
  EXPECT_THROW(check_assumptions(kSinT, NoiseSpec::zero(), kTruth, 0.0, 1e-3), InvalidSpec);
  EXPECT_THROW(check_assumptions(kSinT, NoiseSpec::zero(), kTruth, 1.0, 0.0), InvalidSpec);
}
