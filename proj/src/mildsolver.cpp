#include "fracdiff/mildsolver.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fracdiff/specfun.hpp"
#include "fracdiff/subord.hpp"

namespace fracdiff::mildsolver {

using fieldgrid::GridField;
using fracdiff::fraccalc::TimeGrid;

void SystemParams::validate() const {
  if (!(gamma1 > 0.0 && gamma1 < 1.0 && gamma2 > 0.0 && gamma2 < 1.0))
    throw std::domain_error("SystemParams: gamma1, gamma2 must be in (0,1)");
  if (!(p >= 1.0 && q >= 1.0)) throw std::domain_error("SystemParams: p, q must be >= 1");
  if (sign_f * sign_f != 1 || sign_g * sign_g != 1)
    throw std::domain_error("SystemParams: signs must be +-1");
}

double SystemParams::f_of(double v) const {
  const double mag = std::pow(std::fabs(v), form == NonlinForm::signed_power ? p - 1.0 : p);
  return sign_f * (form == NonlinForm::signed_power ? mag * v : mag);
}

double SystemParams::g_of(double u) const {
  const double mag = std::pow(std::fabs(u), form == NonlinForm::signed_power ? q - 1.0 : q);
  return sign_g * (form == NonlinForm::signed_power ? mag * u : mag);
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::solver_diverged: return "solver_diverged";
  }
  return "unknown";
}

namespace {

using cplx = std::complex<double>;

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double z_of(const std::optional<GridField>& chi, const GridField& u, const GridField& v) {
  if (!chi) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += (*chi)[i] * (u[i] + v[i]);
  return acc * u.spec().cell_volume();
}

StepRecord make_record(double t, const GridField& u, const GridField& v,
                       const SolveOptions& opts) {
  StepRecord r;
  r.t = t;
  r.norm_u_1 = fieldgrid::lp_norm(u, 1.0);
  r.norm_u_s1 = fieldgrid::lp_norm(u, opts.s1);
  r.norm_u_inf = fieldgrid::lp_norm(u, std::numeric_limits<double>::infinity());
  r.norm_v_1 = fieldgrid::lp_norm(v, 1.0);
  r.norm_v_s2 = fieldgrid::lp_norm(v, opts.s2);
  r.norm_v_inf = fieldgrid::lp_norm(v, std::numeric_limits<double>::infinity());
  r.z_value = z_of(opts.chi, u, v);
  return r;
}

// per-equation symbol tables over (lag, distinct lambda):
//   P[n][d]  = E_{g,1}(-lambda (n h)^g)                n = 1..N
//   WS[m][d] = w_m E_{g,g}(-lambda ((m-1/2) h)^g)      m = 1..N
// with the closed-form kernel weight w_m = h^g (m^g - (m-1)^g) / g.
struct EquationTables {
  std::size_t n_dist = 0;
  std::vector<double> P, WS;  // row-major, row 0 unused

  EquationTables(double gamma, const TimeGrid& grid, const std::vector<double>& lambda) {
    const std::size_t N = grid.n_steps;
    n_dist = lambda.size();
    specfun::MittagLeffler E1(gamma, 1.0), Eg(gamma, gamma);
    P.assign((N + 1) * n_dist, 0.0);
    WS.assign((N + 1) * n_dist, 0.0);
    const double h = grid.h();
    const double hg = std::pow(h, gamma);
    for (std::size_t m = 1; m <= N; ++m) {
      const double tm = static_cast<double>(m) * h;
      const double tg = std::pow(tm, gamma);
      const double w = hg *
                       (std::pow(static_cast<double>(m), gamma) -
                        std::pow(static_cast<double>(m) - 1.0, gamma)) /
                       gamma;
      const double tmid_g = std::pow((static_cast<double>(m) - 0.5) * h, gamma);
      double* prow = &P[m * n_dist];
      double* wrow = &WS[m * n_dist];
      for (std::size_t d = 0; d < n_dist; ++d) {
        prow[d] = E1(-lambda[d] * tg);
        wrow[d] = w * Eg(-lambda[d] * tmid_g);
      }
    }
  }
};

}  // namespace

Trajectory solve(const SystemParams& params, const GridField& u0, const GridField& v0,
                 const TimeGrid& grid, const SolveOptions& opts) {
  params.validate();
  if (!(u0.spec() == v0.spec()))
    throw std::invalid_argument("solve: u0 and v0 must share a grid");
  if (opts.chi && !(opts.chi->spec() == u0.spec()))
    throw std::invalid_argument("solve: chi weight grid mismatch");
  const double init_inf = fieldgrid::lp_norm(u0, std::numeric_limits<double>::infinity()) +
                          fieldgrid::lp_norm(v0, std::numeric_limits<double>::infinity());
  if (!(opts.blowup_threshold > init_inf))
    throw std::invalid_argument("solve: blowup threshold must exceed initial norms");

  const auto& mt = fieldgrid::mode_table(u0.spec());
  const std::size_t n_modes = u0.size();
  const std::size_t N = grid.n_steps;

  EquationTables tab_u(params.gamma1, grid, mt.lambda);
  EquationTables tab_v(params.gamma2, grid, mt.lambda);

  auto u0_hat = fieldgrid::to_spectrum(u0);
  auto v0_hat = fieldgrid::to_spectrum(v0);

  Trajectory traj;
  traj.grid = grid;
  traj.steps.reserve(N + 1);
  traj.steps.push_back(make_record(0.0, u0, v0, opts));
  if (opts.store_fields) {
    traj.fields_u.push_back(u0);
    traj.fields_v.push_back(v0);
  }

  // spectral history of the nonlinearities at the nodes
  std::vector<std::vector<cplx>> hist_f, hist_g;
  hist_f.reserve(N);
  hist_g.reserve(N);

  auto push_nonlinearity = [&](const GridField& u, const GridField& v) {
    std::vector<cplx> fv(n_modes), gu(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) {
      fv[i] = params.f_of(v[i]);
      gu[i] = params.g_of(u[i]);
    }
    fieldgrid::fft_forward(u.spec(), fv);
    fieldgrid::fft_forward(u.spec(), gu);
    hist_f.push_back(std::move(fv));
    hist_g.push_back(std::move(gu));
  };
  push_nonlinearity(u0, v0);

  std::vector<cplx> acc_u(n_modes), acc_v(n_modes);
  for (std::size_t n = 1; n <= N; ++n) {
    // homogeneous part P_g(t_n) applied to the data
    {
      const double* pu = &tab_u.P[n * tab_u.n_dist];
      const double* pv = &tab_v.P[n * tab_v.n_dist];
      for (std::size_t i = 0; i < n_modes; ++i) {
        const std::size_t d = mt.index_of[i];
        acc_u[i] = pu[d] * u0_hat[i];
        acc_v[i] = pv[d] * v0_hat[i];
      }
    }
    // history sum over lags m = n - j
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t m = n - j;
      const double* wsu = &tab_u.WS[m * tab_u.n_dist];
      const double* wsv = &tab_v.WS[m * tab_v.n_dist];
      const cplx* fj = hist_f[j].data();
      const cplx* gj = hist_g[j].data();
      for (std::size_t i = 0; i < n_modes; ++i) {
        const std::size_t d = mt.index_of[i];
        acc_u[i] += wsu[d] * fj[i];
        acc_v[i] += wsv[d] * gj[i];
      }
    }
    GridField u_n = fieldgrid::from_spectrum(u0.spec(), acc_u);
    GridField v_n = fieldgrid::from_spectrum(u0.spec(), acc_v);
    const double t_n = grid.node(n);

    if (!all_finite(u_n.values()) || !all_finite(v_n.values())) {
      traj.status = RunStatus::solver_diverged;
      traj.t_blowup = grid.node(n - 1);
      traj.t_blowup_bracket = t_n;
      return traj;
    }
    traj.steps.push_back(make_record(t_n, u_n, v_n, opts));
    if (opts.store_fields) {
      traj.fields_u.push_back(u_n);
      traj.fields_v.push_back(v_n);
    }
    const StepRecord& r = traj.steps.back();
    if (r.norm_u_inf + r.norm_v_inf > opts.blowup_threshold) {
      traj.status = RunStatus::blowup_detected;
      traj.t_blowup = grid.node(n - 1);
      traj.t_blowup_bracket = t_n;
      return traj;
    }
    if (n < N) push_nonlinearity(u_n, v_n);
  }
  traj.status = RunStatus::completed;
  return traj;
}

PositivityReport positivity_check(const Trajectory& traj, const SystemParams& params,
                                  const GridField& u0, const GridField& v0) {
  if (!traj.has_fields())
    throw std::invalid_argument("positivity_check: trajectory lacks stored fields");
  subord::SubordOperator op1(params.gamma1), op2(params.gamma2);
  PositivityReport rep;
  rep.worst_negative = std::numeric_limits<double>::max();
  rep.worst_lower_gap = std::numeric_limits<double>::max();
  for (std::size_t n = 0; n < traj.fields_u.size(); ++n) {
    const double t = traj.steps[n].t;
    const GridField pu = op1.p_apply(u0, t);
    const GridField pv = op2.p_apply(v0, t);
    const GridField& u = traj.fields_u[n];
    const GridField& v = traj.fields_v[n];
    for (std::size_t i = 0; i < u.size(); ++i) {
      rep.worst_negative = std::min({rep.worst_negative, u[i], v[i]});
      rep.worst_lower_gap = std::min({rep.worst_lower_gap, u[i] - pu[i], v[i] - pv[i]});
    }
  }
  return rep;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,norm_u_1,norm_u_s1,norm_u_inf,norm_v_1,norm_v_s2,norm_v_inf,z_value,status\n";
  char buf[384];
  for (std::size_t n = 0; n < traj.steps.size(); ++n) {
    const StepRecord& r = traj.steps[n];
    const bool last = n + 1 == traj.steps.size();
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", r.t, r.norm_u_1,
                  r.norm_u_s1, r.norm_u_inf, r.norm_v_1, r.norm_v_s2, r.norm_v_inf,
                  r.z_value, last ? to_string(traj.status) : "ok");
    os << buf;
  }
}

}  // namespace fracdiff::mildsolver
