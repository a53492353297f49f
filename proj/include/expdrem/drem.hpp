#pragma once

// Dynamic regressor extension and mixing for the three-parameter regression.
// Nothing on this path divides: Delta may pass through zero.

#include <array>
#include <cmath>

#include "expdrem/lti.hpp"
#include "expdrem/transform.hpp"

namespace expdrem {

using Mat3 = std::array<Vec3, 3>; // row-major

constexpr Mat3 identity3() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

constexpr double det3(const Mat3 &m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Transpose of the cofactor matrix, so adj3(m) * m == det3(m) * I.
constexpr Mat3 adj3(const Mat3 &m) {
  Mat3 a{};
  a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return a;
}

constexpr Vec3 mul(const Mat3 &m, const Vec3 &v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2], m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

constexpr Mat3 mul(const Mat3 &a, const Mat3 &b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return c;
}

constexpr Vec3 powers(double theta) { return {theta, theta * theta, theta * theta * theta}; }

/// Q_e = Psi_e * Theta. Row 0 is the instantaneous row, rows 1-2 its filtered copies.
struct ExtendedRegression {
  Vec3 q_e{};
  Mat3 psi_e{};
};

struct MixOutput {
  double delta = 0.0;
  Vec3 z{};
  double z1 = 0.0;
};

constexpr MixOutput mix(const ExtendedRegression &e) {
  MixOutput out;
  out.delta = det3(e.psi_e);
  out.z = mul(adj3(e.psi_e), e.q_e);
  out.z1 = out.z[0];
  return out;
}

/// Two groups of four first-order filters (q, psi1, psi2, psi3) with gains beta1, beta2.
struct DremBank {
  static constexpr std::size_t kStates = 8;
  using States = std::array<double, kStates>;

  double beta1 = 3.0;
  double beta2 = 5.0;
  States states{};

  static DremBank make(double beta1, double beta2) {
    FirstOrderFilter::make(beta1);
    FirstOrderFilter::make(beta2);
    if (beta1 == beta2) throw InvalidSpec("DREM filter gains must be distinct");
    return DremBank{beta1, beta2, {}};
  }

  double gain(std::size_t i) const { return i < 4 ? beta1 : beta2; }

  /// Filtered (q, psi) of group g in {0, 1}.
  RegressionRow filtered(std::size_t g) const {
    const std::size_t o = 4 * g;
    return RegressionRow{states[o], {states[o + 1], states[o + 2], states[o + 3]}};
  }

  ExtendedRegression extend(const RegressionRow &row) const {
    const RegressionRow f1 = filtered(0);
    const RegressionRow f2 = filtered(1);
    return ExtendedRegression{{row.q, f1.q, f2.q}, {row.psi, f1.psi, f2.psi}};
  }
};

inline DremBank::States drem_bank_derivatives(const DremBank &bank, const RegressionRow &row) {
  const std::array<double, 4> u{row.q, row.psi[0], row.psi[1], row.psi[2]};
  DremBank::States d{};
  for (std::size_t i = 0; i < DremBank::kStates; ++i)
    d[i] = filter_derivative(bank.gain(i), bank.states[i], u[i % 4]);
  return d;
}

} // namespace expdrem
