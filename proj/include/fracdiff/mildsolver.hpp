#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracdiff/fieldgrid.hpp"
#include "fracdiff/fraccalc.hpp"

// Time integration of the coupled mild-solution system
//   u(t) = P_{g1}(t) u0 + int_0^t (t-s)^{g1-1} S_{g1}(t-s) f(v(s)) ds
//   v(t) = P_{g2}(t) v0 + int_0^t (t-s)^{g2-1} S_{g2}(t-s) g(u(s)) ds
// by a spectral exponential scheme: the P/S symbols are evaluated exactly per
// Fourier mode, the singular kernel (t-s)^{g-1} is integrated in closed form
// over each subinterval against the piecewise-constant (left endpoint)
// interpolation of the nonlinearity, and S is taken at subinterval midpoints.

namespace fracdiff::mildsolver {

enum class NonlinForm { signed_power, pure_power };

struct SystemParams {
  double gamma1 = 0.5, gamma2 = 0.5;  // in (0,1)
  double p = 2.0, q = 2.0;            // >= 1
  NonlinForm form = NonlinForm::pure_power;
  int sign_f = +1, sign_g = +1;

  void validate() const;
  double f_of(double v) const;  // f(v) = sign_f |v|^{p-1} v  or  sign_f |v|^p
  double g_of(double u) const;
};

enum class RunStatus { completed, blowup_detected, solver_diverged };

struct StepRecord {
  double t = 0;
  double norm_u_1 = 0, norm_u_s1 = 0, norm_u_inf = 0;
  double norm_v_1 = 0, norm_v_s2 = 0, norm_v_inf = 0;
  double z_value = 0;
};

struct Trajectory {
  std::vector<StepRecord> steps;
  RunStatus status = RunStatus::completed;
  double t_blowup = -1.0;          // last stable node when status = blowup_detected
  double t_blowup_bracket = -1.0;  // first exceeding node
  // full fields, stored when SolveOptions::store_fields
  std::vector<fieldgrid::GridField> fields_u, fields_v;
  fracdiff::fraccalc::TimeGrid grid;

  bool has_fields() const { return !fields_u.empty(); }
};

struct SolveOptions {
  double blowup_threshold = 1e12;  // on ||u||_inf + ||v||_inf
  double s1 = 2.0, s2 = 2.0;       // exponents of the recorded intermediate norms
  std::optional<fieldgrid::GridField> chi;  // weight of the recorded Z-functional
  bool store_fields = false;
};

const char* to_string(RunStatus s);

Trajectory solve(const SystemParams& params, const fieldgrid::GridField& u0,
                 const fieldgrid::GridField& v0, const fracdiff::fraccalc::TimeGrid& grid,
                 const SolveOptions& opts);

struct PositivityReport {
  double worst_negative = 0;   // min over nodes and points of u and v
  double worst_lower_gap = 0;  // min of u(t_n) - P_{g1}(t_n) u0 (and the v analogue)
  bool pass(double tol) const { return worst_negative > -tol && worst_lower_gap > -tol; }
};

// Proposition-style invariants for nonnegative data and + signs:
// u > 0 and u(t_n) >= P_{g1}(t_n) u0 pointwise. Requires stored fields.
PositivityReport positivity_check(const Trajectory& traj, const SystemParams& params,
                                  const fieldgrid::GridField& u0,
                                  const fieldgrid::GridField& v0);

// trajectory CSV: t,norm_u_1,norm_u_s1,norm_u_inf,norm_v_1,norm_v_s2,norm_v_inf,z_value,status
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace fracdiff::mildsolver
