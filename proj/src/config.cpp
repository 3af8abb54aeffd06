#include "fracdiff/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "fracdiff/criteria.hpp"
#include "fracdiff/specfun.hpp"
#include "fracdiff/subord.hpp"

namespace fracdiff::config {

namespace {

struct KeyValue {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

struct RawConfig {
  std::string origin;
  std::map<std::string, KeyValue> entries;  // "section.key" -> value

  [[noreturn]] void fail(const std::string& key, const std::string& why, int line) const {
    throw ConfigError(origin + ":" + std::to_string(line) + ": key '" + key + "' " + why);
  }

  bool has(const std::string& key) const { return entries.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    return it->second.value;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second.value, &pos);
      if (pos != it->second.value.size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      fail(key, "is not a number: '" + it->second.value + "'", it->second.line);
    }
  }

  long long get_int(const std::string& key, long long fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    try {
      std::size_t pos = 0;
      long long v = std::stoll(it->second.value, &pos);
      if (pos != it->second.value.size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      fail(key, "is not an integer: '" + it->second.value + "'", it->second.line);
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    const std::string& v = it->second.value;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(key, "is not a boolean (true/false): '" + v + "'", it->second.line);
  }

  int line_of(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  }
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

RawConfig read_raw(std::istream& in, const std::string& origin) {
  RawConfig raw;
  raw.origin = origin;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    std::string full = section.empty() ? key : section + "." + key;
    if (raw.entries.count(full))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + full + "'");
    raw.entries[full] = KeyValue{value, lineno};
  }
  return raw;
}

InitialDataSpec parse_initial(const RawConfig& raw, const std::string& section) {
  InitialDataSpec spec;
  spec.kind = raw.get_string(section + ".kind", spec.kind);
  if (spec.kind != "gaussian" && spec.kind != "constant" && spec.kind != "fourier_mode" &&
      spec.kind != "random_smooth")
    raw.fail(section + ".kind", "must be gaussian|constant|fourier_mode|random_smooth",
             raw.line_of(section + ".kind"));
  spec.amplitude = raw.get_double(section + ".amplitude", spec.amplitude);
  spec.width = raw.get_double(section + ".width", spec.width);
  spec.center = raw.get_double(section + ".center", spec.center);
  spec.value = raw.get_double(section + ".value", spec.value);
  spec.k = static_cast<int>(raw.get_int(section + ".k", spec.k));
  spec.modes = static_cast<int>(raw.get_int(section + ".modes", spec.modes));
  if (spec.kind == "gaussian" && !(spec.width > 0.0))
    raw.fail(section + ".width", "must be > 0 for gaussian data", raw.line_of(section + ".width"));
  if (spec.kind == "random_smooth" && spec.modes < 1)
    raw.fail(section + ".modes", "must be >= 1", raw.line_of(section + ".modes"));
  return spec;
}

SweepRange parse_range(const RawConfig& raw, const std::string& base, double fallback) {
  SweepRange r{fallback, fallback, 1};
  if (raw.has(base)) {
    const double v = raw.get_double(base, fallback);
    r = SweepRange{v, v, 1};
  }
  if (raw.has(base + "_min") || raw.has(base + "_max") || raw.has(base + "_count")) {
    r.lo = raw.get_double(base + "_min", r.lo);
    r.hi = raw.get_double(base + "_max", r.lo);
    r.count = static_cast<int>(raw.get_int(base + "_count", 1));
    if (r.count < 1)
      raw.fail(base + "_count", "must be >= 1", raw.line_of(base + "_count"));
  }
  return r;
}

void check_params(const RawConfig& raw, const ExperimentConfig& cfg) {
  auto check = [&](bool ok, const std::string& key, const std::string& why) {
    if (!ok) raw.fail(key, why, raw.line_of(key));
  };
  check(cfg.system.gamma1 > 0.0 && cfg.system.gamma1 < 1.0, "system.gamma1", "must be in (0,1)");
  check(cfg.system.gamma2 > 0.0 && cfg.system.gamma2 < 1.0, "system.gamma2", "must be in (0,1)");
  check(cfg.system.p >= 1.0, "system.p", "must be >= 1");
  check(cfg.system.q >= 1.0, "system.q", "must be >= 1");
  check(cfg.blowup_threshold_factor > 1.0, "run.blowup_threshold_factor", "must be > 1");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  RawConfig raw = read_raw(in, origin);
  ExperimentConfig cfg;

  cfg.system.gamma1 = raw.get_double("system.gamma1", cfg.system.gamma1);
  cfg.system.gamma2 = raw.get_double("system.gamma2", cfg.system.gamma2);
  cfg.system.p = raw.get_double("system.p", cfg.system.p);
  cfg.system.q = raw.get_double("system.q", cfg.system.q);
  const std::string form = raw.get_string("system.nonlinearity", "pure_power");
  if (form == "pure_power")
    cfg.system.form = mildsolver::NonlinForm::pure_power;
  else if (form == "signed_power")
    cfg.system.form = mildsolver::NonlinForm::signed_power;
  else
    raw.fail("system.nonlinearity", "must be pure_power or signed_power",
             raw.line_of("system.nonlinearity"));
  cfg.system.sign_f = static_cast<int>(raw.get_int("system.sign_f", 1));
  cfg.system.sign_g = static_cast<int>(raw.get_int("system.sign_g", 1));
  if (cfg.system.sign_f != 1 && cfg.system.sign_f != -1)
    raw.fail("system.sign_f", "must be +1 or -1", raw.line_of("system.sign_f"));
  if (cfg.system.sign_g != 1 && cfg.system.sign_g != -1)
    raw.fail("system.sign_g", "must be +1 or -1", raw.line_of("system.sign_g"));

  const int dim = static_cast<int>(raw.get_int("grid.dim", 1));
  const double L = raw.get_double("grid.half_width", 20.0);
  const long long M = raw.get_int("grid.points", 64);
  try {
    cfg.grid = fieldgrid::GridSpec(dim, L, static_cast<std::size_t>(M));
  } catch (const std::domain_error& e) {
    raw.fail("grid.points", std::string("invalid grid: ") + e.what(), raw.line_of("grid.points"));
  }

  const double t_end = raw.get_double("time.t_end", 1.0);
  const long long steps = raw.get_int("time.steps", 256);
  if (!(t_end > 0.0)) raw.fail("time.t_end", "must be > 0", raw.line_of("time.t_end"));
  if (steps < 1 || steps > 1000000)
    raw.fail("time.steps", "must be in [1, 1e6]", raw.line_of("time.steps"));
  cfg.time = fracdiff::fraccalc::TimeGrid(t_end, static_cast<std::size_t>(steps));

  cfg.initial_u = parse_initial(raw, "initial_u");
  cfg.initial_v = parse_initial(raw, "initial_v");

  cfg.analysis_decay = raw.get_bool("analysis.decay_verify", false);
  cfg.analysis_weak_residual = raw.get_bool("analysis.weak_residual", false);
  cfg.analysis_blowup_bound = raw.get_bool("analysis.blowup_bound", false);

  cfg.blowup_threshold_factor = raw.get_double("run.blowup_threshold_factor", 1e8);
  cfg.seed = static_cast<std::uint64_t>(raw.get_int("run.seed", 0));
  cfg.output_prefix = raw.get_string("output.prefix", "run");
  cfg.save_fields = raw.get_bool("output.save_fields", false);

  cfg.sweep_gamma1 = parse_range(raw, "sweep.gamma1", cfg.system.gamma1);
  cfg.sweep_gamma2 = parse_range(raw, "sweep.gamma2", cfg.system.gamma2);
  cfg.sweep_p = parse_range(raw, "sweep.p", cfg.system.p);
  cfg.sweep_q = parse_range(raw, "sweep.q", cfg.system.q);
  cfg.sweep_N = static_cast<int>(raw.get_int("sweep.N", cfg.grid.dim));

  check_params(raw, cfg);

  for (const auto& [key, kv] : raw.entries)
    if (!kv.used)
      throw ConfigError(raw.origin + ":" + std::to_string(kv.line) + ": unknown key '" + key + "'");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

fieldgrid::GridField build_initial_field(const InitialDataSpec& spec,
                                         const fieldgrid::GridSpec& grid, std::uint64_t seed) {
  fieldgrid::GridField f(grid);
  auto coord2 = [&](std::size_t flat, double& x, double& y) {
    if (grid.dim == 1) {
      x = grid.coord(flat);
      y = 0.0;
    } else {
      x = grid.coord(flat / grid.points);
      y = grid.coord(flat % grid.points);
    }
  };
  if (spec.kind == "constant") {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = spec.value;
  } else if (spec.kind == "gaussian") {
    const double c = spec.center, w2 = 2.0 * spec.width * spec.width;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double x, y;
      coord2(i, x, y);
      const double r2 =
          (x - c) * (x - c) + (grid.dim == 2 ? (y - c) * (y - c) : 0.0);
      f[i] = spec.amplitude * std::exp(-r2 / w2);
    }
  } else if (spec.kind == "fourier_mode") {
    const double k = M_PI / grid.half_width * spec.k;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double x, y;
      coord2(i, x, y);
      f[i] = spec.amplitude * std::cos(k * x) * (grid.dim == 2 ? std::cos(k * y) : 1.0);
    }
  } else {  // random_smooth: low modes with decaying random amplitudes
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int m = 1; m <= spec.modes; ++m) {
      const double a = spec.amplitude * (2.0 * unit() - 1.0) * std::exp(-0.25 * m * m);
      const double ph = 2.0 * M_PI * unit();
      const double k = M_PI / grid.half_width * m;
      const double a2 = grid.dim == 2 ? spec.amplitude * (2.0 * unit() - 1.0) *
                                            std::exp(-0.25 * m * m)
                                      : 0.0;
      const double ph2 = 2.0 * M_PI * unit();
      for (std::size_t i = 0; i < f.size(); ++i) {
        double x, y;
        coord2(i, x, y);
        f[i] += a * std::cos(k * x + ph);
        if (grid.dim == 2) f[i] += a2 * std::cos(k * y + ph2);
      }
    }
    // offset keeps random data nonnegative-ish without changing smoothness
    double mn = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) mn = std::min(mn, f[i]);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= mn;
  }
  return f;
}

namespace {

std::string out_path(const CliOptions& opts, const ExperimentConfig& cfg,
                     const std::string& suffix) {
  std::filesystem::create_directories(opts.out_dir);
  return (std::filesystem::path(opts.out_dir) / (cfg.output_prefix + suffix)).string();
}

struct LoadedRun {
  ExperimentConfig cfg;
  fieldgrid::GridField u0, v0;
  mildsolver::SolveOptions solve_opts;
};

LoadedRun prepare_run(const CliOptions& opts) {
  LoadedRun run{load_config(opts.config_path), {}, {}, {}};
  if (opts.seed) run.cfg.seed = *opts.seed;
  run.u0 = build_initial_field(run.cfg.initial_u, run.cfg.grid, run.cfg.seed);
  run.v0 = build_initial_field(run.cfg.initial_v, run.cfg.grid, run.cfg.seed + 1);
  const double inf0 =
      fieldgrid::lp_norm(run.u0, std::numeric_limits<double>::infinity()) +
      fieldgrid::lp_norm(run.v0, std::numeric_limits<double>::infinity());
  run.solve_opts.blowup_threshold = run.cfg.blowup_threshold_factor * std::max(inf0, 1e-30);
  run.solve_opts.store_fields = run.cfg.analysis_weak_residual || run.cfg.save_fields;
  try {
    auto [lo, hi] = criteria::delta_window(run.cfg.system, run.cfg.grid.dim);
    auto exps = criteria::exponent_set(run.cfg.system, run.cfg.grid.dim, 0.5 * (lo + hi));
    run.solve_opts.s1 = exps.s1;
    run.solve_opts.s2 = exps.s2;
  } catch (const std::domain_error&) {
    // no admissible window (e.g. pq <= 1): record plain L^2 norms instead
    run.solve_opts.s1 = 2.0;
    run.solve_opts.s2 = 2.0;
  }
  run.solve_opts.chi = criteria::chi_weight(run.cfg.grid);
  return run;
}

}  // namespace

int run_simulate(const CliOptions& opts, std::ostream& log) {
  LoadedRun run;
  try {
    run = prepare_run(opts);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 1;
  }
  const ExperimentConfig& cfg = run.cfg;
  mildsolver::Trajectory traj;
  try {
    traj = mildsolver::solve(cfg.system, run.u0, run.v0, cfg.time, run.solve_opts);
  } catch (const std::exception& e) {
    log << "numerical failure: " << e.what() << "\n";
    return 2;
  }

  {
    std::ofstream os(out_path(opts, cfg, "_trajectory.csv"), std::ios::binary);
    mildsolver::write_trajectory_csv(os, traj);
  }
  if (cfg.save_fields && traj.has_fields()) {
    std::ofstream osu(out_path(opts, cfg, "_u_final.csv"), std::ios::binary);
    fieldgrid::write_csv(osu, traj.fields_u.back());
    std::ofstream osv(out_path(opts, cfg, "_v_final.csv"), std::ios::binary);
    fieldgrid::write_csv(osv, traj.fields_v.back());
  }

  std::ofstream sum(out_path(opts, cfg, "_summary.txt"), std::ios::binary);
  char buf[256];
  auto put = [&](const std::string& s) {
    sum << s << "\n";
    if (!opts.quiet) log << s << "\n";
  };
  const bool linear_reference = cfg.initial_u.kind == "constant" && cfg.initial_u.value == 0.0 &&
                                cfg.initial_v.kind == "constant" && cfg.initial_v.value == 0.0;
  put("status: " + std::string(mildsolver::to_string(traj.status)));
  if (linear_reference) put("note: linear reference run (zero data)");
  const double z0 = traj.steps.front().z_value;
  std::snprintf(buf, sizeof buf, "z0: %.17g", z0);
  put(buf);

  // regime classification from the closed-form criteria
  try {
    const bool global_ok = criteria::global_condition(cfg.system, cfg.grid.dim);
    put(std::string("global_condition: ") + (global_ok ? "true" : "false"));
  } catch (const std::domain_error& e) {
    put(std::string("global_condition: na (") + e.what() + ")");
  }
  if (cfg.system.p > 1.0 && cfg.system.q > 1.0) {
    auto [r1, r2] = criteria::blowup_regions(cfg.system, cfg.grid.dim);
    auto [d1, d2] = criteria::blowup_exponents(cfg.system, cfg.grid.dim);
    std::snprintf(buf, sizeof buf, "blowup_regions: %s %s  delta1: %.17g  delta2: %.17g",
                  r1 ? "true" : "false", r2 ? "true" : "false", d1, d2);
    put(buf);
  }
  if (traj.status == mildsolver::RunStatus::blowup_detected) {
    std::snprintf(buf, sizeof buf, "observed_blowup_last_stable: %.17g  bracket: %.17g",
                  traj.t_blowup, traj.t_blowup_bracket);
    put(buf);
  }
  if (cfg.analysis_blowup_bound) {
    auto rep = criteria::make_blowup_report(
        cfg.system, cfg.grid.dim, z0,
        traj.status == mildsolver::RunStatus::blowup_detected
            ? std::optional<double>(traj.t_blowup)
            : std::nullopt);
    if (rep.t_star_bound) {
      std::snprintf(buf, sizeof buf, "blowup_time_bound: %.17g", *rep.t_star_bound);
      put(buf);
    } else {
      put("blowup_time_bound: not applicable (needs gamma1 = gamma2, min(p,q) > 1, "
          "z0 > 2^{p/(p-1)})");
    }
  }
  if (cfg.analysis_decay && traj.status == mildsolver::RunStatus::completed) {
    try {
      auto [lo, hi] = criteria::delta_window(cfg.system, cfg.grid.dim);
      auto exps = criteria::exponent_set(cfg.system, cfg.grid.dim, 0.5 * (lo + hi));
      auto rep = criteria::decay_verify(traj, exps, std::min(1.0, cfg.time.t_end),
                                        cfg.time.t_end);
      std::snprintf(buf, sizeof buf,
                    "decay: sigma1 %.17g  C %.17g  fitted_slope %.17g  combined_ok %s",
                    exps.sigma1, rep.c_s1, rep.slope_s1, rep.combined_ok() ? "true" : "false");
      put(buf);
    } catch (const std::domain_error& e) {
      put(std::string("decay: na (") + e.what() + ")");
    }
  }
  if (cfg.analysis_weak_residual && traj.has_fields()) {
    fracdiff::fraccalc::TestFuncSpec tf(2.0, cfg.time.t_end, 4.0 / cfg.system.gamma1);
    auto wr = criteria::weak_residual(traj, tf, cfg.system);
    std::snprintf(buf, sizeof buf, "weak_residual: u %.17g (scale %.17g)  v %.17g (scale %.17g)",
                  wr.res_u, wr.scale_u, wr.res_v, wr.scale_v);
    put(buf);
  }
  if (traj.status == mildsolver::RunStatus::solver_diverged) return 2;
  return traj.status == mildsolver::RunStatus::blowup_detected ? 3 : 0;
}

int run_criteria(const CliOptions& opts, std::ostream& log) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(opts.config_path);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 1;
  }
  const long long total = static_cast<long long>(cfg.sweep_gamma1.count) *
                          cfg.sweep_gamma2.count * cfg.sweep_p.count * cfg.sweep_q.count;
  if (total <= 0) {
    log << "config error: empty sweep grid\n";
    return 1;
  }
  std::vector<criteria::SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(total));
  for (int i1 = 0; i1 < cfg.sweep_gamma1.count; ++i1)
    for (int i2 = 0; i2 < cfg.sweep_gamma2.count; ++i2)
      for (int ip = 0; ip < cfg.sweep_p.count; ++ip)
        for (int iq = 0; iq < cfg.sweep_q.count; ++iq) {
          mildsolver::SystemParams s = cfg.system;
          s.gamma1 = cfg.sweep_gamma1.at(i1);
          s.gamma2 = cfg.sweep_gamma2.at(i2);
          s.p = cfg.sweep_p.at(ip);
          s.q = cfg.sweep_q.at(iq);
          rows.push_back(criteria::criteria_row(s, cfg.sweep_N));
        }
  CliOptions o = opts;
  std::ofstream os(out_path(o, cfg, "_criteria.csv"), std::ios::binary);
  criteria::write_criteria_csv(os, rows);
  if (!opts.quiet) log << "criteria sweep: " << rows.size() << " rows\n";
  return 0;
}

int run_bound(const CliOptions& opts, std::ostream& log) {
  LoadedRun run;
  try {
    run = prepare_run(opts);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 1;
  }
  const ExperimentConfig& cfg = run.cfg;
  const double z0 = criteria::z_functional(run.u0, run.v0, *run.solve_opts.chi);
  auto rep = criteria::make_blowup_report(cfg.system, cfg.grid.dim, z0, std::nullopt);
  std::ofstream os(out_path(opts, cfg, "_bound.csv"), std::ios::binary);
  os << "p,q,gamma1,gamma2,z0,threshold,applicable,t_star,bound\n";
  const double pmin = std::min(cfg.system.p, cfg.system.q);
  const double threshold = pmin > 1.0 ? std::pow(2.0, pmin / (pmin - 1.0)) : -1.0;
  char buf[320];
  if (rep.t_star_bound) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,true,%.17g,%.17g\n",
                  cfg.system.p, cfg.system.q, cfg.system.gamma1, cfg.system.gamma2, z0,
                  threshold, criteria::ode_singularity_time(pmin, z0), *rep.t_star_bound);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,false,nan,nan\n",
                  cfg.system.p, cfg.system.q, cfg.system.gamma1, cfg.system.gamma2, z0,
                  threshold);
  }
  os << buf;
  if (!opts.quiet) {
    log << "z0 = " << z0 << "\n";
    if (rep.t_star_bound)
      log << "blow-up time bound = " << *rep.t_star_bound << "\n";
    else
      log << "bound not applicable\n";
  }
  return 0;
}

int run_verify(const CliOptions& opts, std::ostream& log) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(opts.config_path);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 1;
  }
  const std::string traj_path = out_path(opts, cfg, "_trajectory.csv");
  std::ifstream in(traj_path);
  if (!in) {
    log << "config error: no stored trajectory at " << traj_path << "\n";
    return 1;
  }
  // rebuild a norms-only trajectory from the stored CSV
  mildsolver::Trajectory traj;
  traj.grid = cfg.time;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    mildsolver::StepRecord r;
    char comma;
    std::string status;
    ss >> r.t >> comma >> r.norm_u_1 >> comma >> r.norm_u_s1 >> comma >> r.norm_u_inf >>
        comma >> r.norm_v_1 >> comma >> r.norm_v_s2 >> comma >> r.norm_v_inf >> comma >>
        r.z_value >> comma;
    std::getline(ss, status);
    if (!ss && status.empty()) continue;
    traj.steps.push_back(r);
    if (status == "blowup_detected") traj.status = mildsolver::RunStatus::blowup_detected;
    if (status == "solver_diverged") traj.status = mildsolver::RunStatus::solver_diverged;
  }
  if (traj.steps.empty()) {
    log << "numerical failure: stored trajectory is empty\n";
    return 2;
  }
  if (traj.status == mildsolver::RunStatus::blowup_detected && traj.steps.size() >= 2) {
    traj.t_blowup = traj.steps[traj.steps.size() - 2].t;
    traj.t_blowup_bracket = traj.steps.back().t;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "verify: %zu records, status %s", traj.steps.size(),
                mildsolver::to_string(traj.status));
  log << buf << "\n";
  if (traj.status == mildsolver::RunStatus::blowup_detected) {
    auto rep = criteria::make_blowup_report(cfg.system, cfg.grid.dim,
                                            traj.steps.front().z_value,
                                            std::optional<double>(traj.t_blowup));
    if (rep.t_star_bound) {
      const bool within = traj.t_blowup <= *rep.t_star_bound + cfg.time.h();
      std::snprintf(buf, sizeof buf,
                    "observed blow-up %.17g vs bound %.17g within one step: %s", traj.t_blowup,
                    *rep.t_star_bound, within ? "true" : "false");
      log << buf << "\n";
      if (!within) return 2;
    }
  } else if (traj.status == mildsolver::RunStatus::completed && cfg.analysis_decay) {
    try {
      auto [lo, hi] = criteria::delta_window(cfg.system, cfg.grid.dim);
      auto exps = criteria::exponent_set(cfg.system, cfg.grid.dim, 0.5 * (lo + hi));
      auto rep = criteria::decay_verify(traj, exps, std::min(1.0, traj.steps.back().t),
                                        traj.steps.back().t);
      std::snprintf(buf, sizeof buf, "decay: C %.17g slope %.17g combined_ok %s", rep.c_s1,
                    rep.slope_s1, rep.combined_ok() ? "true" : "false");
      log << buf << "\n";
    } catch (const std::domain_error& e) {
      log << "decay: na (" << e.what() << ")\n";
    }
  }
  return 0;
}

}  // namespace fracdiff::config
