#pragma once

// Exponential re-parameterization of y = phi*theta + delta. With x = e^y and the
// quadratic truncation of e^delta, the filtered signals satisfy
//   q = psi1*theta + psi2*theta^2 + psi3*theta^3
// where the truncation residual is x * delta^2 * delta_dot / 2.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace expdrem {

using Vec3 = std::array<double, 3>;

/// Raised when the simulated state leaves the representable range.
class DivergedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kExpGuard = 500.0;

struct FilteredPoint {
  double y = 0.0;
  double phi = 0.0;
  double y_dot = 0.0;
  double phi_dot = 0.0;
};

struct RegressionRow {
  double q = 0.0;
  Vec3 psi{};

  /// psi . (theta, theta^2, theta^3)
  double predict(double theta) const { return theta * (psi[0] + theta * (psi[1] + theta * psi[2])); }
};

inline double exp_operator(double y) {
  if (!std::isfinite(y) || std::abs(y) > kExpGuard)
    throw DivergedError("exp operator argument out of range: y = " + std::to_string(y));
  return std::exp(y);
}

struct AlphaTauRho {
  double alpha;
  double tau;
  double rho;
};

constexpr AlphaTauRho alpha_tau_rho(double y, double phi) {
  return {1.0 + y + 0.5 * y * y, -phi - phi * y, 0.5 * phi * phi};
}

/// Row after cancelling common terms; uses x_dot = y_dot * x.
inline RegressionRow regression_row(const FilteredPoint &p) {
  const double x = exp_operator(p.y);
  const double yx = p.y_dot * x;
  const double px = p.phi_dot * x;
  RegressionRow r;
  r.q = 0.5 * p.y * p.y * yx;
  r.psi[0] = p.phi * p.y * yx + 0.5 * p.y * p.y * px;
  r.psi[1] = -0.5 * p.phi * p.phi * yx - p.phi * p.y * px;
  r.psi[2] = 0.5 * p.phi * p.phi * px;
  return r;
}

/// Unsimplified row built from alpha, tau, rho and their chain-rule derivatives.
/// Kept as an independent cross-check of regression_row.
inline RegressionRow regression_row_expanded(const FilteredPoint &p) {
  const double x = exp_operator(p.y);
  const double x_dot = p.y_dot * x;
  const auto [alpha, tau, rho] = alpha_tau_rho(p.y, p.phi);
  const double alpha_dot = p.y_dot + p.y * p.y_dot;
  const double tau_dot = -p.phi_dot - p.phi_dot * p.y - p.phi * p.y_dot;
  const double rho_dot = p.phi * p.phi_dot;
  RegressionRow r;
  r.q = alpha * x_dot - alpha_dot * x;
  r.psi[0] = tau_dot * x - tau * x_dot + alpha * p.phi_dot * x;
  r.psi[1] = rho_dot * x - rho * x_dot + tau * p.phi_dot * x;
  r.psi[2] = rho * p.phi_dot * x;
  return r;
}

} // namespace expdrem
