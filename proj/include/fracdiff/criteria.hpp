#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdiff/fieldgrid.hpp"
#include "fracdiff/fraccalc.hpp"
#include "fracdiff/mildsolver.hpp"

// Closed-form theory around the coupled system: the delta window and derived
// exponent set with their algebraic identities, the global-existence
// dimension condition, the blow-up regions and test-function exponents, the
// chi-weighted Z-functional machinery with its ODE comparison solution and
// blow-up time bound, decay-rate verification, and the weak-solution
// residual.

namespace fracdiff::criteria {

using mildsolver::SystemParams;
using mildsolver::Trajectory;

struct ExponentSet {
  double delta = 0;
  double r1 = 0, r2 = 0;
  double s1 = 0, s2 = 0;
  double sigma1 = 0, sigma2 = 0;
  double critical_rhs = 0;  // right side of the dimension condition
};

// max{1 - (pq-1)/(g2 q (p+1)), 1 - g1(pq-1)/(g2(p+1)), 1 - (pq-1)/(q+1)}
//   < delta < min{1, N(pq-1)/(2q(p+1))}
// Throws std::domain_error when pq <= 1 or the window is empty.
std::pair<double, double> delta_window(const SystemParams& params, int N);

ExponentSet exponent_set(const SystemParams& params, int N, double delta);

// N/2 >= ((g2-g1) pq + q g2 + g1) / (g1 (pq-1)); hypotheses 0<g1<=g2<1,
// q>=p>=1, pq>1 are enforced.
bool global_condition(const SystemParams& params, int N);

// the two min-conditions of the blow-up theorem (p, q > 1)
std::pair<bool, bool> blowup_regions(const SystemParams& params, int N);

// test-function exponents delta_1, delta_2 of the blow-up proof with the
// scaling lambda = 4/gamma1, p' = p/(p-1), q' = q/(q-1)
std::pair<double, double> blowup_exponents(const SystemParams& params, int N);

// the p = 1 (resp. q = 1) edge: blow-up iff 1 < q < 1 + 2/N (resp. p)
bool fujita_edge(const SystemParams& params, int N);

// chi(x) = (int exp(-sqrt(N^2+|x|^2)))^{-1} exp(-sqrt(N^2+|x|^2)),
// normalised so the discrete integral is exactly 1. Throws when the grid is
// too small for the tail mass to be below 1e-8.
fieldgrid::GridField chi_weight(const fieldgrid::GridSpec& spec);

// Z = int chi (u + v) dx (discrete)
double z_functional(const fieldgrid::GridField& u, const fieldgrid::GridField& v,
                    const fieldgrid::GridField& chi);

// singularity time of w' = 2^{1-p} w^p - 2w, w(0) = z0:
//   t** = ln(1 - 2^p z0^{1-p}) / (2(1-p)),  requires z0 > 2^{p/(p-1)}
double ode_singularity_time(double p, double z0);

// closed-form solution  w(t) = ((e^{2(1-p)t}-1)/2^p + z0^{1-p})^{1/(1-p)} e^{-2t}
double ode_oracle(double p, double z0, double t);

// w(t^gamma / Gamma(gamma+1)), the lower solution after Caputo rescaling
double rescale_lower_solution(double p, double z0, double gamma, double t);

// [t** Gamma(gamma+1)]^{1/gamma}
double blowup_time_bound(double p, double gamma, double z0);

struct BlowupReport {
  bool region_one_holds = false, region_two_holds = false;
  double delta1 = 0, delta2 = 0;
  double z0 = 0;
  bool theorem_chain_applicable = false;  // z0 above threshold and gamma1 = gamma2
  std::optional<double> t_star_bound;
  std::optional<double> observed_blowup;
};

BlowupReport make_blowup_report(const SystemParams& params, int N, double z0,
                                std::optional<double> observed_blowup);

struct DecayReport {
  double c_s1 = 0;        // least C with ||u(t)||_{s1} <= C (1+t)^{-sigma1} on the window
  double slope_s1 = 0;    // fitted log-log slope of ||u||_{s1} vs (1+t)
  double c_bounded = 0;   // sup_{t<=1} ||u||_{s1}
  double c_tail = 0;      // sup_{t>1}  ||u||_{s1} t^{sigma1}
  double combined_ratio = 0;  // sup ||u|| (1+t)^{beta} / (max{C1,C2} 2^beta), beta = sigma1
  bool combined_ok() const { return combined_ratio <= 1.0 + 1e-9; }
};

// Requires a completed trajectory recorded with opts.s1 = exps.s1.
DecayReport decay_verify(const Trajectory& traj, const ExponentSet& exps, double t_lo,
                         double t_hi);

// max over window nodes of value(t) * t^rate (a least-constant helper for
// bounds of the form value <= C t^{-rate})
double least_bound_constant(const Trajectory& traj, const std::vector<double>& values,
                            double rate, double t_lo, double t_hi);

struct WeakResidual {
  double res_u = 0, res_v = 0;      // |LHS - RHS| per equation
  double scale_u = 0, scale_v = 0;  // largest term magnitude per equation
};

// Weak-formulation residual with phi(t,x) = (1-t/T)^l * bump(x), bump a C^2
// compactly supported polynomial of radius L/2 with analytic Laplacian.
// Requires stored fields.
WeakResidual weak_residual(const Trajectory& traj, const fracdiff::fraccalc::TestFuncSpec& tf,
                           const SystemParams& params);

struct SweepRow {
  double gamma1, gamma2, p, q;
  int N;
  std::optional<bool> global_ok;  // empty when the ordering hypotheses fail
  bool region1 = false, region2 = false;
  double delta1 = 0, delta2 = 0;
  std::string hyp_violation;  // empty when hypotheses hold
};

SweepRow criteria_row(const SystemParams& params, int N);

// header: gamma1,gamma2,p,q,N,global_ok,region1,region2,delta1,delta2,hyp_violation
void write_criteria_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace fracdiff::criteria
