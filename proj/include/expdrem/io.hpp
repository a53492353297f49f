#pragma once

// File formats: trajectory CSV, key=value metrics, key=value scenario config.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "expdrem/presets.hpp"
#include "expdrem/sim.hpp"

namespace expdrem {

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kTrajectoryHeader =
    "t,y_bar,phi_bar,delta_bar,y,phi,delta_f,q,psi1,psi2,psi3,Delta,z1,theta_new,theta_grad,e_new,e_grad";

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view s, double &out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

namespace detail {

inline std::array<double, 17> fields(const TrajectorySample &r) {
  return {r.t,    r.y_bar, r.phi_bar, r.delta_bar, r.y,     r.phi,       r.delta_f,  r.q,     r.psi1,
          r.psi2, r.psi3,  r.delta,   r.z1,        r.theta_new, r.theta_grad, r.e_new, r.e_grad};
}

inline TrajectorySample from_fields(const std::array<double, 17> &f) {
  return TrajectorySample{f[0], f[1], f[2],  f[3],  f[4],  f[5],  f[6],  f[7], f[8],
                          f[9], f[10], f[11], f[12], f[13], f[14], f[15], f[16]};
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

} // namespace detail

inline void write_trajectory_csv(std::ostream &os, const Trajectory &traj) {
  os << kTrajectoryHeader << '\n';
  for (const auto &row : traj) {
    const auto f = detail::fields(row);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) os << ',';
      os << format_double(f[i]);
    }
    os << '\n';
  }
}

inline Trajectory read_trajectory_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line) || detail::trim(line) != kTrajectoryHeader)
    throw IoError("trajectory CSV: missing or unexpected header");
  Trajectory traj;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::array<double, 17> f{};
    std::string_view rest = line;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto comma = rest.find(',');
      const std::string_view cell = rest.substr(0, comma);
      if (!parse_double(cell, f[i]))
        throw IoError("trajectory CSV line " + std::to_string(lineno) + ": bad value '" + std::string(cell) + "'");
      if (i + 1 < f.size()) {
        if (comma == std::string_view::npos)
          throw IoError("trajectory CSV line " + std::to_string(lineno) + ": too few columns");
        rest.remove_prefix(comma + 1);
      } else if (comma != std::string_view::npos) {
        throw IoError("trajectory CSV line " + std::to_string(lineno) + ": too many columns");
      }
    }
    traj.push_back(detail::from_fields(f));
  }
  return traj;
}

inline void write_metrics(std::ostream &os, const ScenarioConfig &cfg, const RunMetrics &m) {
  os << "scenario=" << cfg.name << '\n'
     << "noise_kind=" << to_string(cfg.noise.kind) << '\n'
     << "kappa=" << format_double(cfg.gains.kappa) << '\n'
     << "gamma=" << format_double(cfg.gains.gamma) << '\n'
     << "dt=" << format_double(cfg.dt) << '\n'
     << "t_end=" << format_double(cfg.t_end) << '\n'
     << "steps=" << m.steps << '\n'
     << "window_start=" << format_double(m.window_start) << '\n'
     << "ss_max_error_new=" << format_double(m.ss_max_error_new) << '\n'
     << "ss_rms_error_new=" << format_double(m.ss_rms_error_new) << '\n'
     << "ss_max_error_gradient=" << format_double(m.ss_max_error_gradient) << '\n'
     << "ss_rms_error_gradient=" << format_double(m.ss_rms_error_gradient) << '\n'
     << "eps0_new=" << format_double(m.eps0_new) << '\n'
     << "eps0_gradient=" << format_double(m.eps0_gradient) << '\n'
     << "ss_max_abs_delta=" << format_double(m.ss_max_abs_delta) << '\n'
     << "noise_bound_holds=" << (m.assumptions.bound_holds ? "true" : "false") << '\n'
     << "noise_sup=" << format_double(m.assumptions.noise_sup) << '\n'
     << "dominance_violation_fraction=" << format_double(m.assumptions.dominance_violation_fraction) << '\n'
     << "diverged=" << (m.diverged ? "true" : "false") << '\n'
     << "diverged_at=" << format_double(m.diverged_at) << '\n';
}

/// Parses `key=value` lines; '#' starts a comment.
inline std::map<std::string, std::string> read_key_values(std::istream &is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    std::string_view s = detail::trim(std::string_view(line).substr(0, line.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) continue;
    kv[std::string(detail::trim(s.substr(0, eq)))] = std::string(detail::trim(s.substr(eq + 1)));
  }
  return kv;
}

// ---------------------------------------------------------------------------
// Scenario config
// ---------------------------------------------------------------------------

inline void write_config(std::ostream &os, const ScenarioConfig &c) {
  const auto d = format_double;
  os << "name = " << c.name << '\n'
     << "theta = " << d(c.truth.theta) << '\n'
     << "theta_hat0 = " << d(c.truth.theta_hat0) << '\n'
     << "regressor_kind = " << to_string(c.regressor.kind) << '\n'
     << "regressor_amplitude = " << d(c.regressor.amplitude) << '\n'
     << "regressor_frequency = " << d(c.regressor.angular_frequency) << '\n'
     << "regressor_offset = " << d(c.regressor.offset) << '\n'
     << "noise_kind = " << to_string(c.noise.kind) << '\n'
     << "noise_amplitude = " << d(c.noise.amplitude) << '\n'
     << "noise_frequency = " << d(c.noise.angular_frequency) << '\n'
     << "noise_value = " << d(c.noise.constant_value) << '\n'
     << "noise_lo = " << d(c.noise.lo) << '\n'
     << "noise_hi = " << d(c.noise.hi) << '\n'
     << "noise_hold_step = " << d(c.noise.hold_step) << '\n'
     << "noise_seed = " << c.noise.seed << '\n'
     << "k = " << d(c.k) << '\n'
     << "beta1 = " << d(c.beta1) << '\n'
     << "beta2 = " << d(c.beta2) << '\n'
     << "kappa = " << d(c.gains.kappa) << '\n'
     << "gamma = " << d(c.gains.gamma) << '\n'
     << "t_end = " << d(c.t_end) << '\n'
     << "dt = " << d(c.dt) << '\n'
     << "sample_stride = " << c.sample_stride << '\n'
     << "steady_state_fraction = " << d(c.steady_state_fraction) << '\n';
}

/// Reads a scenario from `key = value` lines. Unset keys keep the defaults of
/// ScenarioConfig with a sin t regressor and zero noise. A uniform noise
/// without noise_hold_step holds each draw for one integration step.
/// Errors carry "<source>:<line>: <field>: <reason>".
inline ScenarioConfig parse_config(std::istream &is, const std::string &source = "<config>") {
  struct Entry {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, Entry> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view s = detail::trim(std::string_view(line).substr(0, line.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key(detail::trim(s.substr(0, eq)));
    if (kv.count(key))
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + key + ": duplicate key");
    kv[key] = Entry{std::string(detail::trim(s.substr(eq + 1))), lineno};
  }

  auto where = [&](const std::string &key) {
    const auto it = kv.find(key);
    return source + ":" + (it == kv.end() ? std::string("?") : std::to_string(it->second.line)) + ": " + key;
  };

  std::map<std::string, bool> used;
  auto get_double = [&](const std::string &key, double def) {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    used[key] = true;
    double v;
    if (!parse_double(it->second.value, v)) throw ConfigError(where(key) + ": not a number '" + it->second.value + "'");
    return v;
  };
  auto get_uint = [&](const std::string &key, std::uint64_t def) {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    used[key] = true;
    const std::string &s = it->second.value;
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ConfigError(where(key) + ": not a non-negative integer '" + s + "'");
    return v;
  };
  auto get_string = [&](const std::string &key, std::string def) {
    const auto it = kv.find(key);
    if (it == kv.end()) return def;
    used[key] = true;
    return it->second.value;
  };
  // Runs a validating factory and reports failures against `key`.
  auto checked = [&](const std::string &key, auto &&make) {
    try {
      return make();
    } catch (const InvalidSpec &e) {
      throw ConfigError(where(key) + ": " + e.what());
    }
  };

  ScenarioConfig c;
  c.name = get_string("name", "custom");
  c.truth.theta = get_double("theta", c.truth.theta);
  c.truth.theta_hat0 = get_double("theta_hat0", c.truth.theta_hat0);
  checked("theta", [&] { TruthSpec::validate(c.truth); return 0; });

  const std::string rkind = get_string("regressor_kind", "sinusoid");
  const double ramp = get_double("regressor_amplitude", 1.0);
  const double rfreq = get_double("regressor_frequency", 1.0);
  const double roff = get_double("regressor_offset", 0.0);
  c.regressor = checked("regressor_kind", [&] {
    RegressorSpec r{parse_regressor_kind(rkind), ramp, rfreq, roff};
    RegressorSpec::validate(r);
    return r;
  });

  c.dt = get_double("dt", c.dt);
  c.t_end = get_double("t_end", c.t_end);

  const NoiseKind nkind = checked("noise_kind", [&] { return parse_noise_kind(get_string("noise_kind", "zero")); });
  const double namp = get_double("noise_amplitude", 0.0);
  const double nfreq = get_double("noise_frequency", 0.0);
  const double nval = get_double("noise_value", 0.0);
  const double nlo = get_double("noise_lo", -0.5);
  const double nhi = get_double("noise_hi", 0.5);
  const double nhold = get_double("noise_hold_step", c.dt);
  const std::uint64_t nseed = get_uint("noise_seed", kDefaultUniformSeed);
  switch (nkind) {
  case NoiseKind::zero: c.noise = NoiseSpec::zero(); break;
  case NoiseKind::sinusoid:
    c.noise = checked("noise_amplitude", [&] { return NoiseSpec::sinusoid(namp, nfreq); });
    break;
  case NoiseKind::constant:
    c.noise = checked("noise_value", [&] { return NoiseSpec::constant(nval); });
    break;
  case NoiseKind::uniform:
    c.noise = checked(kv.count("noise_hi") ? "noise_hi" : "noise_lo",
                      [&] { return NoiseSpec::uniform(nlo, nhi, nhold, nseed); });
    break;
  }

  c.k = get_double("k", c.k);
  checked("k", [&] { return FirstOrderFilter::make(c.k); });
  c.beta1 = get_double("beta1", c.beta1);
  c.beta2 = get_double("beta2", c.beta2);
  checked("beta2", [&] { return DremBank::make(c.beta1, c.beta2); });
  c.gains.kappa = get_double("kappa", c.gains.kappa);
  c.gains.gamma = get_double("gamma", c.gains.gamma);
  checked("kappa", [&] { EstimatorGains::validate(c.gains); return 0; });
  c.sample_stride = static_cast<std::size_t>(get_uint("sample_stride", c.sample_stride));
  c.steady_state_fraction = get_double("steady_state_fraction", c.steady_state_fraction);
  checked("dt", [&] { ScenarioConfig::validate(c); return 0; });

  for (const auto &[key, entry] : kv)
    if (!used.count(key)) throw ConfigError(source + ":" + std::to_string(entry.line) + ": " + key + ": unknown key");
  return c;
}

inline ScenarioConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse_config(in, path);
}

} // namespace expdrem
