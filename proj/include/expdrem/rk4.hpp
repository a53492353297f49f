#pragma once

#include <array>
#include <cstddef>

namespace expdrem {

template <std::size_t N>
using StateVector = std::array<double, N>;

/// Classical four-stage Runge-Kutta step for x' = f(t, x), given the first
/// stage slope k1 = f(t, x) already evaluated by the caller.
template <std::size_t N, class F>
StateVector<N> rk4_step_from(F &&f, double t, const StateVector<N> &x, double dt, const StateVector<N> &k1) {
  const double h2 = 0.5 * dt;
  StateVector<N> tmp;

  for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h2 * k1[i];
  const StateVector<N> k2 = f(t + h2, tmp);

  for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h2 * k2[i];
  const StateVector<N> k3 = f(t + h2, tmp);

  for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + dt * k3[i];
  const StateVector<N> k4 = f(t + dt, tmp);

  const double h6 = dt / 6.0;
  StateVector<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

template <std::size_t N, class F>
StateVector<N> rk4_step(F &&f, double t, const StateVector<N> &x, double dt) {
  const StateVector<N> k1 = f(t, x);
  return rk4_step_from(f, t, x, dt, k1);
}

} // namespace expdrem
