#pragma once

// `run` and `sweep` commands, independent of argument parsing.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "expdrem/io.hpp"
#include "expdrem/presets.hpp"
#include "expdrem/report.hpp"
#include "expdrem/sim.hpp"

namespace expdrem {

enum ExitCode : int { kExitOk = 0, kExitDiverged = 1, kExitUsage = 2, kExitIo = 3 };

struct Overrides {
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::uint64_t> seed;
  std::optional<double> kappa;
  std::optional<double> gamma;
};

struct RunOptions {
  std::string preset;      // one of kPresetNames, or empty when config_path is set
  std::string config_path;
  std::string out_dir = ".";
  Overrides overrides;
};

struct SweepOptions {
  std::string preset;
  std::vector<double> gammas;
  std::vector<double> kappas;
  std::string out_dir = ".";
  Overrides overrides;
};

inline void apply_overrides(ScenarioConfig &c, const Overrides &o) {
  if (o.dt) c.dt = *o.dt;
  if (o.t_end) c.t_end = *o.t_end;
  if (o.seed) c.noise.seed = *o.seed;
  if (o.kappa) c.gains.kappa = *o.kappa;
  if (o.gamma) c.gains.gamma = *o.gamma;
  ScenarioConfig::validate(c);
}

inline std::string cell_name(const ScenarioConfig &c) {
  return c.name + "_k" + format_double(c.gains.kappa) + "_g" + format_double(c.gains.gamma);
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path &p) {
  std::ofstream os(p);
  if (!os) throw IoError("cannot write '" + p.string() + "'");
  return os;
}

inline void write_run_files(const std::filesystem::path &dir, const std::string &stem, const ScenarioConfig &cfg,
                            const RunResult &res, bool with_trajectory) {
  if (with_trajectory) {
    auto os = open_out(dir / (stem + "_trajectory.csv"));
    write_trajectory_csv(os, res.trajectory);
  }
  auto ms = open_out(dir / (stem + "_metrics.txt"));
  write_metrics(ms, cfg, res.metrics);
  auto cs = open_out(dir / (stem + "_config.txt"));
  write_config(cs, cfg);
}

inline void ensure_dir(const std::string &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

} // namespace detail

inline ScenarioConfig resolve_scenario(const RunOptions &opt) {
  if (!opt.preset.empty() && !opt.config_path.empty())
    throw ConfigError("give either a preset or --config, not both");
  if (opt.preset.empty() && opt.config_path.empty()) throw ConfigError("a preset or --config PATH is required");
  ScenarioConfig c = opt.preset.empty() ? load_config(opt.config_path) : preset(opt.preset);
  apply_overrides(c, opt.overrides);
  return c;
}

/// Writes <name>_trajectory.csv, <name>_metrics.txt and <name>_config.txt under
/// out_dir and prints one report row.
inline int run_command(const RunOptions &opt, std::ostream &out, std::ostream &err) {
  ScenarioConfig cfg;
  try {
    cfg = resolve_scenario(opt);
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const RunResult res = run_scenario(cfg);
  try {
    detail::ensure_dir(opt.out_dir);
    detail::write_run_files(opt.out_dir, cfg.name, cfg, res, true);
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  print_report(out, {make_report_row(cfg, res.metrics)});
  if (!res.metrics.assumptions.bound_holds || res.metrics.assumptions.dominance_violation_fraction > 0.0)
    err << "warning: noise exceeds |phi_bar*theta| on " << res.metrics.assumptions.dominance_violation_fraction * 100.0
        << "% of samples\n";
  if (res.metrics.diverged) {
    err << "error: run diverged at t = " << res.metrics.diverged_at << '\n';
    return kExitDiverged;
  }
  return kExitOk;
}

/// Runs the cartesian product of the gain lists; a missing list keeps the
/// preset's gain. Cells execute concurrently and are reported in grid order.
inline int sweep_command(const SweepOptions &opt, std::ostream &out, std::ostream &err) {
  if (opt.gammas.empty() && opt.kappas.empty()) {
    err << "usage: sweep <preset> --gamma LIST --kappa LIST [--out DIR] (at least one non-empty list)\n";
    return kExitUsage;
  }

  std::vector<ScenarioConfig> cells;
  try {
    const ScenarioConfig base = preset(opt.preset);
    const std::vector<double> kappas = opt.kappas.empty() ? std::vector<double>{base.gains.kappa} : opt.kappas;
    const std::vector<double> gammas = opt.gammas.empty() ? std::vector<double>{base.gains.gamma} : opt.gammas;
    for (double kappa : kappas)
      for (double gamma : gammas) {
        ScenarioConfig c = base;
        Overrides o = opt.overrides;
        o.kappa = kappa;
        o.gamma = gamma;
        apply_overrides(c, o);
        cells.push_back(c);
      }
    detail::ensure_dir(opt.out_dir);
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<RunResult> results(cells.size());
  const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < cells.size(); begin += workers) {
    const std::size_t end = std::min(cells.size(), begin + workers);
    std::vector<std::future<RunResult>> batch;
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [&cells, i] { return run_scenario(cells[i]); }));
    for (std::size_t i = begin; i < end; ++i) results[i] = batch[i - begin].get();
  }

  std::vector<ReportRow> rows;
  bool any_diverged = false;
  try {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      detail::write_run_files(opt.out_dir, cell_name(cells[i]), cells[i], results[i], false);
      rows.push_back(make_report_row(cells[i], results[i].metrics));
      any_diverged = any_diverged || results[i].metrics.diverged;
    }
    auto os = detail::open_out(std::filesystem::path(opt.out_dir) / ("sweep_" + opt.preset + "_summary.csv"));
    write_summary_csv(os, rows);
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  print_report(out, rows);
  return any_diverged ? kExitDiverged : kExitOk;
}

} // namespace expdrem
