#pragma once

// Augmented ODE: measurement/regressor/noise filters, DREM bank, and both
// estimators integrated together on one fixed-step RK4 time base.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "expdrem/drem.hpp"
#include "expdrem/estimators.hpp"
#include "expdrem/lti.hpp"
#include "expdrem/rk4.hpp"
#include "expdrem/signals.hpp"
#include "expdrem/transform.hpp"

namespace expdrem {

inline constexpr std::size_t kStateDim = 13;
using SystemVector = StateVector<kStateDim>;

struct SystemState {
  double y = 0.0;       // k/(p+k) y_bar
  double phi_f = 0.0;   // k/(p+k) phi_bar
  double delta_f = 0.0; // k/(p+k) delta_bar, reporting only
  DremBank::States drem{};
  double theta_hat_new = 0.0;
  double theta_hat_gradient = 0.0;

  SystemVector pack() const {
    SystemVector v{};
    v[0] = y;
    v[1] = phi_f;
    v[2] = delta_f;
    for (std::size_t i = 0; i < DremBank::kStates; ++i) v[3 + i] = drem[i];
    v[11] = theta_hat_new;
    v[12] = theta_hat_gradient;
    return v;
  }

  static SystemState unpack(const SystemVector &v) {
    SystemState s;
    s.y = v[0];
    s.phi_f = v[1];
    s.delta_f = v[2];
    for (std::size_t i = 0; i < DremBank::kStates; ++i) s.drem[i] = v[3 + i];
    s.theta_hat_new = v[11];
    s.theta_hat_gradient = v[12];
    return s;
  }

  bool finite() const {
    for (double v : pack())
      if (!std::isfinite(v)) return false;
    return true;
  }
};

struct ScenarioConfig {
  std::string name = "custom";
  TruthSpec truth;
  RegressorSpec regressor;
  NoiseSpec noise;
  double k = 1.0;
  double beta1 = 3.0;
  double beta2 = 5.0;
  EstimatorGains gains;
  double t_end = 50.0;
  double dt = 1e-4;
  std::size_t sample_stride = 100;
  double steady_state_fraction = 0.2;

  std::size_t steps() const { return static_cast<std::size_t>(std::llround(t_end / dt)); }

  static void validate(const ScenarioConfig &c) {
    TruthSpec::validate(c.truth);
    RegressorSpec::validate(c.regressor);
    NoiseSpec::validate(c.noise);
    FirstOrderFilter::make(c.k);
    DremBank::make(c.beta1, c.beta2);
    EstimatorGains::validate(c.gains);
    if (!std::isfinite(c.dt) || !(c.dt > 0.0)) throw InvalidSpec("dt must be > 0");
    if (!std::isfinite(c.t_end) || !(c.t_end > c.dt)) throw InvalidSpec("t_end must exceed dt");
    if (c.sample_stride == 0) throw InvalidSpec("sample_stride must be >= 1");
    if (!(c.steady_state_fraction > 0.0 && c.steady_state_fraction < 1.0))
      throw InvalidSpec("steady_state_fraction must lie in (0, 1)");
  }
};

/// Everything the right-hand side computes at one instant.
struct Evaluation {
  double y_bar = 0.0;
  double phi_bar = 0.0;
  double delta_bar = 0.0;
  FilteredPoint point;
  RegressionRow row;
  MixOutput mixed;
  SystemVector derivative{};
};

/// Sample-held noise is looked up at `hold_time` (the start of the current
/// step) so all four RK stages see the same value; other kinds use t.
inline Evaluation evaluate(const ScenarioConfig &cfg, double t, const SystemState &s, double hold_time) {
  Evaluation e;
  e.phi_bar = eval_regressor(cfg.regressor, t);
  e.delta_bar = eval_noise(cfg.noise, cfg.noise.kind == NoiseKind::uniform ? hold_time : t);
  e.y_bar = e.phi_bar * cfg.truth.theta + e.delta_bar;

  e.point.y = s.y;
  e.point.phi = s.phi_f;
  e.point.y_dot = filter_derivative(cfg.k, s.y, e.y_bar);
  e.point.phi_dot = filter_derivative(cfg.k, s.phi_f, e.phi_bar);
  e.row = regression_row(e.point);

  DremBank bank{cfg.beta1, cfg.beta2, s.drem};
  const DremBank::States bank_dot = drem_bank_derivatives(bank, e.row);
  e.mixed = mix(bank.extend(e.row));

  SystemVector &d = e.derivative;
  d[0] = e.point.y_dot;
  d[1] = e.point.phi_dot;
  d[2] = filter_derivative(cfg.k, s.delta_f, e.delta_bar);
  for (std::size_t i = 0; i < DremBank::kStates; ++i) d[3 + i] = bank_dot[i];
  d[11] = drem_update_derivative(s.theta_hat_new, e.mixed.delta, e.mixed.z1, cfg.gains.kappa);
  d[12] = plain_gradient_derivative(s.theta_hat_gradient, s.y, s.phi_f, cfg.gains.gamma);

  for (double v : d)
    if (!std::isfinite(v)) throw DivergedError("non-finite derivative at t = " + std::to_string(t));
  return e;
}

inline SystemVector system_derivative(const ScenarioConfig &cfg, double t, const SystemState &s,
                                      double hold_time) {
  return evaluate(cfg, t, s, hold_time).derivative;
}

inline SystemVector system_derivative(const ScenarioConfig &cfg, double t, const SystemState &s) {
  return system_derivative(cfg, t, s, t);
}

inline SystemState initial_state(const ScenarioConfig &cfg) {
  SystemState s;
  s.theta_hat_new = cfg.truth.theta_hat0;
  s.theta_hat_gradient = cfg.truth.theta_hat0;
  return s;
}

/// One row of the trajectory CSV.
struct TrajectorySample {
  double t, y_bar, phi_bar, delta_bar, y, phi, delta_f, q, psi1, psi2, psi3, delta, z1, theta_new, theta_grad,
      e_new, e_grad;

  bool operator==(const TrajectorySample &) const = default;
};

using Trajectory = std::vector<TrajectorySample>;

struct RunMetrics {
  double ss_max_error_new = 0.0;
  double ss_rms_error_new = 0.0;
  double ss_max_error_gradient = 0.0;
  double ss_rms_error_gradient = 0.0;
  double eps0_new = 0.0;
  double eps0_gradient = 0.0;
  double ss_max_abs_delta = 0.0; // zero means the DREM estimate was frozen
  double window_start = 0.0;
  std::size_t steps = 0;
  bool diverged = false;
  double diverged_at = std::numeric_limits<double>::quiet_NaN();
  AssumptionReport assumptions;
};

struct RunResult {
  Trajectory trajectory;
  RunMetrics metrics;
};

inline TrajectorySample make_sample(const ScenarioConfig &cfg, double t, const SystemState &s, const Evaluation &e) {
  const double theta = cfg.truth.theta;
  return TrajectorySample{t,
                          e.y_bar,
                          e.phi_bar,
                          e.delta_bar,
                          s.y,
                          s.phi_f,
                          s.delta_f,
                          e.row.q,
                          e.row.psi[0],
                          e.row.psi[1],
                          e.row.psi[2],
                          e.mixed.delta,
                          e.mixed.z1,
                          s.theta_hat_new,
                          s.theta_hat_gradient,
                          theta - s.theta_hat_new,
                          theta - s.theta_hat_gradient};
}

/// Integrates [0, t_end] from zero filter states, records every
/// sample_stride-th step and summarizes the trailing steady-state window.
/// A diverged run keeps the partial trajectory and sets metrics.diverged.
/// `observe(t, state, evaluation)` is called at every step, including t_end.
template <class Observer>
RunResult run_scenario(const ScenarioConfig &cfg, Observer &&observe) {
  ScenarioConfig::validate(cfg);

  RunResult result;
  RunMetrics &m = result.metrics;
  const std::size_t n = cfg.steps();
  m.steps = n;
  m.window_start = (1.0 - cfg.steady_state_fraction) * cfg.t_end;
  m.assumptions = check_assumptions(cfg.regressor, cfg.noise, cfg.truth, cfg.t_end, cfg.dt);
  result.trajectory.reserve(n / cfg.sample_stride + 1);

  const double theta = cfg.truth.theta;
  double sum_sq_new = 0.0;
  double sum_sq_grad = 0.0;
  std::size_t window_count = 0;

  SystemState s = initial_state(cfg);
  SystemVector x = s.pack();

  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    s = SystemState::unpack(x);
    try {
      if (!s.finite()) throw DivergedError("non-finite state at t = " + std::to_string(t));
      const Evaluation e = evaluate(cfg, t, s, t);
      observe(t, s, e);

      if (i % cfg.sample_stride == 0) result.trajectory.push_back(make_sample(cfg, t, s, e));

      if (t >= m.window_start - 1e-9 * cfg.dt) {
        const double en = std::abs(theta - s.theta_hat_new);
        const double eg = std::abs(theta - s.theta_hat_gradient);
        m.ss_max_error_new = std::max(m.ss_max_error_new, en);
        m.ss_max_error_gradient = std::max(m.ss_max_error_gradient, eg);
        m.ss_max_abs_delta = std::max(m.ss_max_abs_delta, std::abs(e.mixed.delta));
        sum_sq_new += en * en;
        sum_sq_grad += eg * eg;
        ++window_count;
      }

      if (i == n) break;

      auto f = [&cfg, t](double tau, const SystemVector &v) {
        return system_derivative(cfg, tau, SystemState::unpack(v), t);
      };
      x = rk4_step_from(f, t, x, cfg.dt, e.derivative);
    } catch (const DivergedError &) {
      m.diverged = true;
      m.diverged_at = t;
      break;
    }
  }

  if (m.diverged) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    m.ss_max_error_new = m.ss_max_error_gradient = inf;
    m.ss_rms_error_new = m.ss_rms_error_gradient = inf;
  } else if (window_count > 0) {
    m.ss_rms_error_new = std::sqrt(sum_sq_new / static_cast<double>(window_count));
    m.ss_rms_error_gradient = std::sqrt(sum_sq_grad / static_cast<double>(window_count));
  }
  m.eps0_new = m.ss_max_error_new;
  m.eps0_gradient = m.ss_max_error_gradient;
  return result;
}

inline RunResult run_scenario(const ScenarioConfig &cfg) {
  return run_scenario(cfg, [](double, const SystemState &, const Evaluation &) {});
}

} // namespace expdrem
