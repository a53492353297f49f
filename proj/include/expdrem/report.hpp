#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "expdrem/io.hpp"
#include "expdrem/sim.hpp"

namespace expdrem {

struct ReportRow {
  std::string scenario;
  NoiseKind noise_kind = NoiseKind::zero;
  double kappa = 0.0;
  double gamma = 0.0;
  double max_error_new = 0.0;
  double rms_error_new = 0.0;
  double max_error_gradient = 0.0;
  double rms_error_gradient = 0.0;
  std::optional<double> improvement; // gradient max error / new-method max error
  double violation_fraction = 0.0;
  bool diverged = false;
};

inline constexpr double kRatioFloor = 1e-15;

inline ReportRow make_report_row(const ScenarioConfig &cfg, const RunMetrics &m) {
  ReportRow r;
  r.scenario = cfg.name;
  r.noise_kind = cfg.noise.kind;
  r.kappa = cfg.gains.kappa;
  r.gamma = cfg.gains.gamma;
  r.max_error_new = m.ss_max_error_new;
  r.rms_error_new = m.ss_rms_error_new;
  r.max_error_gradient = m.ss_max_error_gradient;
  r.rms_error_gradient = m.ss_rms_error_gradient;
  if (std::isfinite(m.ss_max_error_new) && std::isfinite(m.ss_max_error_gradient) &&
      m.ss_max_error_new > kRatioFloor)
    r.improvement = m.ss_max_error_gradient / m.ss_max_error_new;
  r.violation_fraction = m.assumptions.dominance_violation_fraction;
  r.diverged = m.diverged;
  return r;
}

inline constexpr std::string_view kSummaryHeader =
    "scenario,noise_kind,kappa,gamma,max_error_new,rms_error_new,max_error_gradient,rms_error_gradient,"
    "improvement,violation_fraction,diverged";

inline void write_summary_row(std::ostream &os, const ReportRow &r) {
  os << r.scenario << ',' << to_string(r.noise_kind) << ',' << format_double(r.kappa) << ','
     << format_double(r.gamma) << ',' << format_double(r.max_error_new) << ',' << format_double(r.rms_error_new)
     << ',' << format_double(r.max_error_gradient) << ',' << format_double(r.rms_error_gradient) << ','
     << (r.improvement ? format_double(*r.improvement) : std::string()) << ','
     << format_double(r.violation_fraction) << ',' << (r.diverged ? "true" : "false") << '\n';
}

inline void write_summary_csv(std::ostream &os, const std::vector<ReportRow> &rows) {
  os << kSummaryHeader << '\n';
  for (const auto &r : rows) write_summary_row(os, r);
}

/// Human-readable table.
inline void print_report(std::ostream &os, const std::vector<ReportRow> &rows) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-9s %10s %10s %12s %12s %12s %12s %10s %8s %s\n", "scenario", "noise",
                "kappa", "gamma", "max_new", "rms_new", "max_grad", "rms_grad", "ratio", "viol", "status");
  os << buf;
  for (const auto &r : rows) {
    const std::string ratio = r.improvement ? std::to_string(*r.improvement) : "-";
    std::snprintf(buf, sizeof buf, "%-10s %-9s %10.3g %10.3g %12.4e %12.4e %12.4e %12.4e %10.10s %8.4f %s\n",
                  r.scenario.c_str(), std::string(to_string(r.noise_kind)).c_str(), r.kappa, r.gamma,
                  r.max_error_new, r.rms_error_new, r.max_error_gradient, r.rms_error_gradient, ratio.c_str(),
                  r.violation_fraction, r.diverged ? "DIVERGED" : "ok");
    os << buf;
  }
}

} // namespace expdrem
