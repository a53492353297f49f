#pragma once

#include <cmath>

#include "expdrem/signals.hpp"

namespace expdrem {

/// State-space realization of gain/(p + gain): x' = gain * (u - x).
struct FirstOrderFilter {
  double gain = 1.0;
  double state = 0.0;

  static FirstOrderFilter make(double gain, double state = 0.0) {
    if (!std::isfinite(gain) || !(gain > 0.0)) throw InvalidSpec("filter gain must be finite and > 0");
    return FirstOrderFilter{gain, state};
  }
};

/// Right-hand side of the filter ODE, which is also the exact time derivative
/// of the filtered signal.
constexpr double filter_derivative(double gain, double state, double input) { return gain * (input - state); }

constexpr double filter_derivative(const FirstOrderFilter &f, double input) {
  return filter_derivative(f.gain, f.state, input);
}

} // namespace expdrem
