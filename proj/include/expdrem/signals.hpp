#pragma once

// Exogenous signals of the scalar regression y_bar = phi_bar * theta + delta_bar:
// the regressor, the bounded measurement disturbance, and the measurement itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace expdrem {

class InvalidSpec : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class RegressorKind { sinusoid, constant };
enum class NoiseKind { zero, sinusoid, constant, uniform };

inline std::string_view to_string(RegressorKind k) {
  return k == RegressorKind::sinusoid ? "sinusoid" : "constant";
}

inline std::string_view to_string(NoiseKind k) {
  switch (k) {
  case NoiseKind::zero: return "zero";
  case NoiseKind::sinusoid: return "sinusoid";
  case NoiseKind::constant: return "constant";
  case NoiseKind::uniform: return "uniform";
  }
  return "?";
}

inline RegressorKind parse_regressor_kind(std::string_view s) {
  if (s == "sinusoid") return RegressorKind::sinusoid;
  if (s == "constant") return RegressorKind::constant;
  throw InvalidSpec("unknown regressor kind '" + std::string(s) + "'");
}

inline NoiseKind parse_noise_kind(std::string_view s) {
  if (s == "zero") return NoiseKind::zero;
  if (s == "sinusoid") return NoiseKind::sinusoid;
  if (s == "constant") return NoiseKind::constant;
  if (s == "uniform") return NoiseKind::uniform;
  throw InvalidSpec("unknown noise kind '" + std::string(s) + "'");
}

/// phi_bar(t) = offset + amplitude * sin(angular_frequency * t), or offset + amplitude.
struct RegressorSpec {
  RegressorKind kind = RegressorKind::sinusoid;
  double amplitude = 1.0;
  double angular_frequency = 1.0;
  double offset = 0.0;

  static RegressorSpec sinusoid(double amplitude, double angular_frequency, double offset = 0.0) {
    RegressorSpec r{RegressorKind::sinusoid, amplitude, angular_frequency, offset};
    validate(r);
    return r;
  }

  static RegressorSpec constant(double value) {
    RegressorSpec r{RegressorKind::constant, value, 0.0, 0.0};
    validate(r);
    return r;
  }

  static void validate(const RegressorSpec &r) {
    if (!std::isfinite(r.amplitude) || !std::isfinite(r.offset))
      throw InvalidSpec("regressor amplitude/offset must be finite");
    if (!std::isfinite(r.angular_frequency) || r.angular_frequency < 0.0)
      throw InvalidSpec("regressor angular_frequency must be finite and >= 0");
  }
};

/// Declarative disturbance description. The factories enforce sup |delta_bar| <= 1;
/// a spec built by hand is not validated (check_assumptions accepts such specs).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::zero;
  double amplitude = 0.0;
  double angular_frequency = 0.0;
  double constant_value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double hold_step = 0.0;
  std::uint64_t seed = 0;

  static NoiseSpec zero() { return NoiseSpec{}; }

  static NoiseSpec sinusoid(double amplitude, double angular_frequency) {
    NoiseSpec n;
    n.kind = NoiseKind::sinusoid;
    n.amplitude = amplitude;
    n.angular_frequency = angular_frequency;
    validate(n);
    return n;
  }

  static NoiseSpec constant(double value) {
    NoiseSpec n;
    n.kind = NoiseKind::constant;
    n.constant_value = value;
    validate(n);
    return n;
  }

  static NoiseSpec uniform(double lo, double hi, double hold_step, std::uint64_t seed) {
    NoiseSpec n;
    n.kind = NoiseKind::uniform;
    n.lo = lo;
    n.hi = hi;
    n.hold_step = hold_step;
    n.seed = seed;
    validate(n);
    return n;
  }

  /// Least upper bound of |delta_bar(t)| over all t.
  double sup_abs() const {
    switch (kind) {
    case NoiseKind::zero: return 0.0;
    case NoiseKind::sinusoid: return std::abs(amplitude);
    case NoiseKind::constant: return std::abs(constant_value);
    case NoiseKind::uniform: return std::max(std::abs(lo), std::abs(hi));
    }
    return 0.0;
  }

  static void validate(const NoiseSpec &n) {
    switch (n.kind) {
    case NoiseKind::zero: break;
    case NoiseKind::sinusoid:
      if (!std::isfinite(n.amplitude) || !std::isfinite(n.angular_frequency) || n.angular_frequency < 0.0)
        throw InvalidSpec("sinusoid noise needs finite amplitude and angular_frequency >= 0");
      break;
    case NoiseKind::constant:
      if (!std::isfinite(n.constant_value)) throw InvalidSpec("constant noise value must be finite");
      break;
    case NoiseKind::uniform:
      if (!std::isfinite(n.lo) || !std::isfinite(n.hi) || !(n.lo < n.hi))
        throw InvalidSpec("uniform noise needs finite lo < hi");
      if (!std::isfinite(n.hold_step) || !(n.hold_step > 0.0))
        throw InvalidSpec("uniform noise needs hold_step > 0");
      break;
    }
    if (n.sup_abs() > 1.0)
      throw InvalidSpec("noise violates |delta_bar(t)| <= 1 (sup = " + std::to_string(n.sup_abs()) + ")");
  }
};

struct TruthSpec {
  double theta = 2.0;
  double theta_hat0 = 1.8;

  static void validate(const TruthSpec &t) {
    if (!std::isfinite(t.theta)) throw InvalidSpec("theta must be finite");
    if (!std::isfinite(t.theta_hat0)) throw InvalidSpec("theta_hat0 must be finite");
  }
};

namespace detail {

// splitmix64 finalizer; a counter-based generator so every hold interval is an
// independent pure function of (seed, index).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform draw in [0, 1) from the top 53 bits.
constexpr double unit_draw(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Index of the hold interval containing t. The 1e-9 slack keeps t = n*dt step
/// starts on the correct side of a boundary after rounding.
inline std::uint64_t hold_index(double t, double hold_step) {
  const double r = std::floor(t / hold_step + 1e-9);
  return r <= 0.0 ? 0 : static_cast<std::uint64_t>(r);
}

inline double eval_regressor(const RegressorSpec &spec, double t) {
  switch (spec.kind) {
  case RegressorKind::sinusoid: return spec.offset + spec.amplitude * std::sin(spec.angular_frequency * t);
  case RegressorKind::constant: return spec.offset + spec.amplitude;
  }
  return 0.0;
}

inline double eval_noise(const NoiseSpec &spec, double t) {
  switch (spec.kind) {
  case NoiseKind::zero: return 0.0;
  case NoiseKind::sinusoid: return spec.amplitude * std::sin(spec.angular_frequency * t);
  case NoiseKind::constant: return spec.constant_value;
  case NoiseKind::uniform: {
    const double u = detail::unit_draw(spec.seed, hold_index(t, spec.hold_step));
    const double v = spec.lo + (spec.hi - spec.lo) * u;
    return v < spec.hi ? v : spec.lo; // guard against rounding up to hi
  }
  }
  return 0.0;
}

inline double eval_measurement(const RegressorSpec &reg, const NoiseSpec &noise, const TruthSpec &truth,
                               double t) {
  return eval_regressor(reg, t) * truth.theta + eval_noise(noise, t);
}

struct AssumptionReport {
  bool bound_holds = true;            // sup |delta_bar| <= 1
  double noise_sup = 0.0;
  double dominance_violation_fraction = 0.0; // share of samples with |delta_bar| >= |phi_bar*theta|
  std::size_t samples = 0;
};

/// Samples the disturbance against the useful signal. Advisory only.
inline AssumptionReport check_assumptions(const RegressorSpec &reg, const NoiseSpec &noise,
                                          const TruthSpec &truth, double horizon, double sample_step) {
  if (!(horizon > 0.0) || !(sample_step > 0.0))
    throw InvalidSpec("check_assumptions needs horizon > 0 and sample_step > 0");

  AssumptionReport report;
  report.noise_sup = noise.sup_abs();
  report.bound_holds = report.noise_sup <= 1.0;

  const auto n = static_cast<std::size_t>(std::floor(horizon / sample_step + 1e-9)) + 1;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * sample_step;
    const double d = std::abs(eval_noise(noise, t));
    if (d > 1.0) report.bound_holds = false;
    // The zero disturbance never counts, even where the useful signal vanishes.
    if (d > 0.0 && d >= std::abs(eval_regressor(reg, t) * truth.theta)) ++violations;
  }
  report.samples = n;
  report.dominance_violation_fraction = static_cast<double>(violations) / static_cast<double>(n);
  return report;
}

} // namespace expdrem
