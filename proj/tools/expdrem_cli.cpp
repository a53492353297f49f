#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "expdrem/app.hpp"

namespace {

void add_overrides(CLI::App *cmd, expdrem::Overrides &o, bool with_gains) {
  cmd->add_option("--dt", o.dt, "integration step [s]");
  cmd->add_option("--t-end", o.t_end, "simulation horizon [s]");
  cmd->add_option("--seed", o.seed, "seed for uniform noise");
  if (with_gains) {
    cmd->add_option("--kappa", o.kappa, "DREM estimator gain");
    cmd->add_option("--gamma", o.gamma, "gradient estimator gain");
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exponential-operator DREM vs. gradient parameter identification under measurement noise"};
  app.require_subcommand(1);

  expdrem::RunOptions run;
  auto *run_cmd = app.add_subcommand("run", "simulate one scenario and write trajectory/metrics files");
  run_cmd->add_option("preset", run.preset, "fig2 | fig4 | fig6");
  run_cmd->add_option("--config", run.config_path, "key=value scenario file");
  run_cmd->add_option("--out", run.out_dir, "output directory");
  add_overrides(run_cmd, run.overrides, true);

  expdrem::SweepOptions sweep;
  auto *sweep_cmd = app.add_subcommand("sweep", "run a gain grid over a preset");
  sweep_cmd->add_option("preset", sweep.preset, "fig2 | fig4 | fig6")->required();
  sweep_cmd->add_option("--gamma", sweep.gammas, "comma-separated gradient gains")->delimiter(',');
  sweep_cmd->add_option("--kappa", sweep.kappas, "comma-separated DREM gains")->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out_dir, "output directory");
  add_overrides(sweep_cmd, sweep.overrides, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : expdrem::kExitUsage;
  }

  if (run_cmd->parsed()) return expdrem::run_command(run, std::cout, std::cerr);
  return expdrem::sweep_command(sweep, std::cout, std::cerr);
}
