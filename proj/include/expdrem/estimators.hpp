#pragma once

#include <cmath>

#include "expdrem/signals.hpp"

namespace expdrem {

/// Adaptation gains of the two estimators. A zero gain freezes that estimate.
struct EstimatorGains {
  double kappa = 1e8;
  double gamma = 1e4;

  static void validate(const EstimatorGains &g) {
    if (!std::isfinite(g.kappa) || g.kappa < 0.0) throw InvalidSpec("kappa must be finite and >= 0");
    if (!std::isfinite(g.gamma) || g.gamma < 0.0) throw InvalidSpec("gamma must be finite and >= 0");
  }
};

/// theta_hat' = kappa * Delta * (z1 - Delta * theta_hat)
constexpr double drem_update_derivative(double theta_hat, double delta, double z1, double kappa) {
  return kappa * delta * (z1 - delta * theta_hat);
}

/// theta_hat' = gamma * phi * (y - phi * theta_hat)
constexpr double plain_gradient_derivative(double theta_hat, double y, double phi, double gamma) {
  return gamma * phi * (y - phi * theta_hat);
}

} // namespace expdrem
