#include <CLI11.hpp>

#include <iostream>

#include "fracdiff/config.hpp"

// Batch front end. Subcommands:
//   simulate  run the coupled system from a config, emit trajectory CSV + summary
//   criteria  evaluate the closed-form criteria over a parameter sweep
//   bound     evaluate Z0 and the blow-up time bound for the configured data
//   verify    rerun analysis on a stored trajectory CSV
// Exit codes: 0 ok, 1 config error, 2 numerical failure, 3 blow-up detected
// (simulate only; informative, not a failure).

int main(int argc, char** argv) {
  CLI::App app{"fracdiff: coupled time-fractional diffusion lab"};
  app.require_subcommand(1);

  fracdiff::config::CliOptions opts;
  std::uint64_t seed_flag = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "experiment config (INI)")->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", seed_flag, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run a simulation");
  CLI::App* criteria = app.add_subcommand("criteria", "criteria sweep table");
  CLI::App* bound = app.add_subcommand("bound", "blow-up time bound for the configured data");
  CLI::App* verify = app.add_subcommand("verify", "rerun analysis on stored trajectories");
  for (CLI::App* cmd : {simulate, criteria, bound, verify}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);
  if (seed_given) opts.seed = seed_flag;

  try {
    if (simulate->parsed()) return fracdiff::config::run_simulate(opts, std::cout);
    if (criteria->parsed()) return fracdiff::config::run_criteria(opts, std::cout);
    if (bound->parsed()) return fracdiff::config::run_bound(opts, std::cout);
    if (verify->parsed()) return fracdiff::config::run_verify(opts, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
