#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracdiff/fieldgrid.hpp"
#include "fracdiff/fraccalc.hpp"
#include "fracdiff/mildsolver.hpp"

// Experiment configuration: flat INI-style key/value sections, strict
// validation with line-anchored messages, and the batch operations behind the
// CLI subcommands (simulate, criteria, bound, verify).

namespace fracdiff::config {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InitialDataSpec {
  std::string kind = "gaussian";  // gaussian | constant | fourier_mode | random_smooth
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;   // same center on both axes in 2-d
  double value = 0.0;    // constant
  int k = 1;             // fourier_mode
  int modes = 4;         // random_smooth
};

struct SweepRange {
  double lo = 0, hi = 0;
  int count = 1;
  double at(int i) const {
    return count < 2 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
};

struct ExperimentConfig {
  mildsolver::SystemParams system;
  fieldgrid::GridSpec grid{1, 20.0, 64};
  fracdiff::fraccalc::TimeGrid time{1.0, 256};
  InitialDataSpec initial_u, initial_v;
  bool analysis_decay = false;
  bool analysis_weak_residual = false;
  bool analysis_blowup_bound = false;
  double blowup_threshold_factor = 1e8;
  std::uint64_t seed = 0;
  std::string output_prefix = "run";
  bool save_fields = false;
  // criteria sweep
  SweepRange sweep_gamma1{0.5, 0.5, 1}, sweep_gamma2{0.5, 0.5, 1};
  SweepRange sweep_p{2.0, 2.0, 1}, sweep_q{2.0, 2.0, 1};
  int sweep_N = 1;
};

// Parses and validates; every error names the offending key and line.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& origin);

fieldgrid::GridField build_initial_field(const InitialDataSpec& spec,
                                         const fieldgrid::GridSpec& grid, std::uint64_t seed);

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  bool quiet = false;
};

// exit codes: 0 ok, 1 config error, 2 numerical failure, 3 blow-up detected
int run_simulate(const CliOptions& opts, std::ostream& log);
int run_criteria(const CliOptions& opts, std::ostream& log);
int run_bound(const CliOptions& opts, std::ostream& log);
int run_verify(const CliOptions& opts, std::ostream& log);

}  // namespace fracdiff::config
