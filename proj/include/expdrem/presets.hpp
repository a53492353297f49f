#pragma once

#include <array>
#include <string>
#include <string_view>

#include "expdrem/sim.hpp"

namespace expdrem {

class UnknownPreset : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::array<std::string_view, 3> kPresetNames{"fig2", "fig4", "fig6"};

inline constexpr std::uint64_t kDefaultUniformSeed = 1;
inline constexpr double kDefaultUniformHold = 0.01;

/// theta = 2, theta_hat(0) = 1.8, phi_bar = sin t, k = 1, beta = (3, 5).
inline ScenarioConfig base_scenario() {
  ScenarioConfig c;
  c.truth = TruthSpec{2.0, 1.8};
  c.regressor = RegressorSpec::sinusoid(1.0, 1.0);
  c.noise = NoiseSpec::zero();
  c.k = 1.0;
  c.beta1 = 3.0;
  c.beta2 = 5.0;
  c.gains = EstimatorGains{1e8, 1e4};
  return c;
}

inline ScenarioConfig preset(std::string_view name) {
  ScenarioConfig c = base_scenario();
  c.name = std::string(name);
  if (name == "fig2") {
    c.noise = NoiseSpec::sinusoid(1.0, 10.0);
  } else if (name == "fig4") {
    c.noise = NoiseSpec::constant(0.5);
  } else if (name == "fig6") {
    // Hold period is fixed independently of dt so refining the step keeps the realization.
    c.noise = NoiseSpec::uniform(-0.5, 0.5, kDefaultUniformHold, kDefaultUniformSeed);
    c.gains = EstimatorGains{1e10, 10.0};
  } else {
    throw UnknownPreset("unknown preset '" + std::string(name) + "' (expected fig2, fig4 or fig6)");
  }
  return c;
}

} // namespace expdrem
