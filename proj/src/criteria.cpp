#include "fracdiff/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fracdiff/specfun.hpp"

namespace fracdiff::criteria {

using fieldgrid::GridField;
using fieldgrid::GridSpec;

std::pair<double, double> delta_window(const SystemParams& params, int N) {
  const double p = params.p, q = params.q, g1 = params.gamma1, g2 = params.gamma2;
  const double pq1 = p * q - 1.0;
  if (!(pq1 > 0.0)) throw std::domain_error("delta_window: requires pq > 1");
  const double lower = std::max({1.0 - pq1 / (g2 * q * (p + 1.0)),
                                 1.0 - g1 * pq1 / (g2 * (p + 1.0)),
                                 1.0 - pq1 / (q + 1.0)});
  const double upper = std::min(1.0, N * pq1 / (2.0 * q * (p + 1.0)));
  if (!(lower < upper))
    throw std::domain_error("delta_window: empty window (global-existence hypothesis fails)");
  return {lower, upper};
}

ExponentSet exponent_set(const SystemParams& params, int N, double delta) {
  auto [lo, hi] = delta_window(params, N);
  if (!(delta > lo && delta < hi))
    throw std::domain_error("exponent_set: delta outside the admissible window");
  const double p = params.p, q = params.q, g1 = params.gamma1, g2 = params.gamma2;
  const double pq1 = p * q - 1.0;
  ExponentSet e;
  e.delta = delta;
  e.r1 = N * g1 * pq1 / (2.0 * (g1 * (1.0 + delta * p) + g2 * p * (1.0 - delta)));
  e.r2 = N * g2 * pq1 / (2.0 * (g2 * (1.0 + delta * q) + g1 * q * (1.0 - delta)));
  e.s1 = N * pq1 / (2.0 * delta * (p + 1.0));
  e.s2 = N * pq1 / (2.0 * delta * (q + 1.0));
  e.sigma1 = (1.0 - delta) * (g1 + g2 * p) / pq1;
  e.sigma2 = (1.0 - delta) * (g2 + g1 * q) / pq1;
  e.critical_rhs = ((g2 - g1) * p * q + q * g2 + g1) / (g1 * pq1);
  // construction invariants
  if (!(e.s1 > q && e.s2 > p && e.s1 > e.r1 && e.r1 > 1.0 && e.s2 > e.r2 && e.r2 > 1.0 &&
        p * e.sigma2 < 1.0 && q * e.sigma1 < 1.0))
    throw std::domain_error("exponent_set: derived exponents violate their invariants");
  return e;
}

bool global_condition(const SystemParams& params, int N) {
  const double p = params.p, q = params.q, g1 = params.gamma1, g2 = params.gamma2;
  if (!(g1 > 0.0 && g1 <= g2 && g2 < 1.0))
    throw std::domain_error("global_condition: requires 0 < gamma1 <= gamma2 < 1");
  if (!(q >= p && p >= 1.0)) throw std::domain_error("global_condition: requires q >= p >= 1");
  if (!(p * q > 1.0)) throw std::domain_error("global_condition: requires pq > 1");
  return N / 2.0 >= ((g2 - g1) * p * q + q * g2 + g1) / (g1 * (p * q - 1.0));
}

std::pair<bool, bool> blowup_regions(const SystemParams& params, int N) {
  const double p = params.p, q = params.q, g1 = params.gamma1, g2 = params.gamma2;
  if (!(p > 1.0 && q > 1.0)) throw std::domain_error("blowup_regions: requires p, q > 1");
  const double pq1 = p * q - 1.0;
  const double half_n = N / 2.0;
  const bool one = half_n < std::min({(p * g2 + g1) / (g1 * pq1), (q * g1 + g2) / (g1 * pq1),
                                      (p * q * (g1 - g2) + q * g1 + g2) / (g1 * pq1),
                                      (p + 1.0) / pq1});
  const bool two = half_n < std::min({(q * g1 + g2) / (g2 * pq1), (p * g2 + g1) / (g2 * pq1),
                                      (p * q * (g2 - g1) + p * g2 + g1) / (g2 * pq1),
                                      (q + 1.0) / pq1});
  return {one, two};
}

std::pair<double, double> blowup_exponents(const SystemParams& params, int N) {
  const double p = params.p, q = params.q, g1 = params.gamma1, g2 = params.gamma2;
  if (!(p > 1.0 + 1e-12 && q > 1.0 + 1e-12))
    throw std::domain_error("blowup_exponents: requires p, q > 1");
  const double pp = p / (p - 1.0);  // conjugate exponents
  const double qp = q / (q - 1.0);
  const double lam = 4.0 / g1;  // gamma1 * lambda = 4
  const double j = lam + 2.0 * N;
  const double fac = p * q / (p * q - 1.0);
  const double d1 = std::max(
      (-lam / q * g2 + j / (pp * q) - 4.0 + j / qp) * fac + lam * (g1 - 1.0),
      (-4.0 / q + j / (pp * q) - 4.0 + j / qp) * fac + lam * (g1 - 1.0));
  const double d2 = std::max(
      (-lam * g2 + j / pp - 4.0 / p + j / (p * qp)) * fac + lam * (g2 - 1.0),
      (-4.0 + j / pp - 4.0 / p + j / (p * qp)) * fac + lam * (g2 - 1.0));
  return {d1, d2};
}

bool fujita_edge(const SystemParams& params, int N) {
  const bool p_one = params.p == 1.0, q_one = params.q == 1.0;
  if (p_one == q_one)
    throw std::domain_error("fujita_edge: exactly one of p, q must equal 1");
  const double other = p_one ? params.q : params.p;
  return other > 1.0 && other < 1.0 + 2.0 / N;
}

GridField chi_weight(const GridSpec& spec) {
  const int N = spec.dim;
  GridField w(spec);
  if (N == 1) {
    for (std::size_t i = 0; i < spec.points; ++i) {
      const double x = spec.coord(i);
      w[i] = std::exp(-std::sqrt(static_cast<double>(N * N) + x * x));
    }
  } else {
    for (std::size_t i = 0; i < spec.points; ++i)
      for (std::size_t j = 0; j < spec.points; ++j) {
        const double x = spec.coord(i), y = spec.coord(j);
        w.at(i, j) = std::exp(-std::sqrt(static_cast<double>(N * N) + x * x + y * y));
      }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i];
  total *= spec.cell_volume();
  // continuum mass beyond the box, crude exponential bound
  const double L = spec.half_width;
  const double tail = (N == 1 ? 2.0 : 2.0 * M_PI * (L + 2.0)) * std::exp(-L);
  if (tail > 1e-8 * total)
    throw std::domain_error("chi_weight: grid too small, tail mass above 1e-8");
  for (std::size_t i = 0; i < w.size(); ++i) w[i] /= total;
  return w;
}

double z_functional(const GridField& u, const GridField& v, const GridField& chi) {
  if (!(u.spec() == v.spec()) || !(u.spec() == chi.spec()))
    throw std::invalid_argument("z_functional: grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += chi[i] * (u[i] + v[i]);
  return acc * u.spec().cell_volume();
}

double ode_singularity_time(double p, double z0) {
  if (!(p > 1.0)) throw std::domain_error("ode_singularity_time: requires p > 1");
  const double threshold = std::pow(2.0, p / (p - 1.0));
  if (!(z0 > threshold))
    throw std::domain_error("ode_singularity_time: requires z0 > 2^{p/(p-1)}");
  return std::log(1.0 - std::pow(2.0, p) * std::pow(z0, 1.0 - p)) / (2.0 * (1.0 - p));
}

double ode_oracle(double p, double z0, double t) {
  const double t_star = ode_singularity_time(p, z0);
  if (t >= t_star) throw std::domain_error("ode_oracle: t at or beyond the singularity");
  const double base =
      (std::exp(2.0 * (1.0 - p) * t) - 1.0) / std::pow(2.0, p) + std::pow(z0, 1.0 - p);
  return std::pow(base, 1.0 / (1.0 - p)) * std::exp(-2.0 * t);
}

double rescale_lower_solution(double p, double z0, double gamma, double t) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::domain_error("rescale_lower_solution: gamma in (0,1]");
  const double tbar = std::pow(t, gamma) * specfun::rgamma(gamma + 1.0);
  return ode_oracle(p, z0, tbar);
}

double blowup_time_bound(double p, double gamma, double z0) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::domain_error("blowup_time_bound: gamma in (0,1]");
  const double t_star = ode_singularity_time(p, z0);
  return std::pow(t_star * specfun::gamma_fn(gamma + 1.0), 1.0 / gamma);
}

BlowupReport make_blowup_report(const SystemParams& params, int N, double z0,
                                std::optional<double> observed_blowup) {
  BlowupReport rep;
  if (params.p > 1.0 && params.q > 1.0) {
    auto [r1, r2] = blowup_regions(params, N);
    rep.region_one_holds = r1;
    rep.region_two_holds = r2;
    auto [d1, d2] = blowup_exponents(params, N);
    rep.delta1 = d1;
    rep.delta2 = d2;
  }
  rep.z0 = z0;
  rep.observed_blowup = observed_blowup;
  const double pmin = std::min(params.p, params.q);
  if (params.gamma1 == params.gamma2 && pmin > 1.0 &&
      z0 > std::pow(2.0, pmin / (pmin - 1.0))) {
    rep.theorem_chain_applicable = true;
    rep.t_star_bound = blowup_time_bound(pmin, params.gamma1, z0);
  }
  return rep;
}

double least_bound_constant(const Trajectory& traj, const std::vector<double>& values,
                            double rate, double t_lo, double t_hi) {
  double c = 0.0;
  for (std::size_t n = 0; n < traj.steps.size(); ++n) {
    const double t = traj.steps[n].t;
    if (t < t_lo || t > t_hi || t <= 0.0) continue;
    c = std::max(c, values[n] * std::pow(t, rate));
  }
  return c;
}

DecayReport decay_verify(const Trajectory& traj, const ExponentSet& exps, double t_lo,
                         double t_hi) {
  if (traj.status != mildsolver::RunStatus::completed)
    throw std::invalid_argument("decay_verify: not applicable to a non-completed trajectory");
  if (traj.steps.empty() || traj.steps.back().t < t_hi)
    throw std::invalid_argument("decay_verify: window extends past the trajectory");
  DecayReport rep;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (const auto& r : traj.steps) {
    const double nu = r.norm_u_s1;
    if (r.t <= 1.0) rep.c_bounded = std::max(rep.c_bounded, nu);
    if (r.t > 1.0) rep.c_tail = std::max(rep.c_tail, nu * std::pow(r.t, exps.sigma1));
    if (r.t >= t_lo && r.t <= t_hi) {
      rep.c_s1 = std::max(rep.c_s1, nu * std::pow(1.0 + r.t, exps.sigma1));
      if (nu > 0.0) {
        const double x = std::log(1.0 + r.t), y = std::log(nu);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
      }
    }
  }
  if (count >= 2) {
    const double den = count * sxx - sx * sx;
    rep.slope_s1 = den != 0.0 ? (count * sxy - sx * sy) / den : 0.0;
  }
  // bound-combination property: sup ||u|| (1+t)^beta <= max{C1,C2} 2^beta, beta = sigma1
  const double beta = exps.sigma1;
  const double cap = std::max(rep.c_bounded, rep.c_tail) * std::pow(2.0, beta);
  double sup = 0.0;
  for (const auto& r : traj.steps)
    sup = std::max(sup, r.norm_u_s1 * std::pow(1.0 + r.t, beta));
  rep.combined_ratio = cap > 0.0 ? sup / cap : (sup > 0.0 ? 2.0 : 0.0);
  return rep;
}

namespace {

struct Bump {
  double R;
  int N;
  double value(double rho2) const {
    const double s = rho2 / (R * R);
    if (s >= 1.0) return 0.0;
    const double one = 1.0 - s;
    return one * one * one;
  }
  double laplacian(double rho2) const {
    const double s = rho2 / (R * R);
    if (s >= 1.0) return 0.0;
    const double one = 1.0 - s;
    return 24.0 * rho2 * one / (R * R * R * R) - 6.0 * N * one * one / (R * R);
  }
};

double rho2_of(const GridSpec& g, std::size_t flat) {
  if (g.dim == 1) {
    const double x = g.coord(flat);
    return x * x;
  }
  const double x = g.coord(flat / g.points), y = g.coord(flat % g.points);
  return x * x + y * y;
}

}  // namespace

WeakResidual weak_residual(const Trajectory& traj, const fracdiff::fraccalc::TestFuncSpec& tf,
                           const SystemParams& params) {
  if (!traj.has_fields())
    throw std::invalid_argument("weak_residual: trajectory lacks stored fields");
  const GridSpec& g = traj.fields_u.front().spec();
  const std::size_t n_nodes = traj.steps.size();
  const double T = tf.horizon;
  if (std::fabs(T - traj.steps.back().t) > 1e-12 * std::max(1.0, T))
    throw std::invalid_argument("weak_residual: test-function horizon must match the run");

  Bump bump{g.half_width / 2.0, g.dim};
  const std::size_t n_pts = g.n_points();
  std::vector<double> phi2(n_pts), lap_phi2(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    const double rho2 = rho2_of(g, i);
    phi2[i] = bump.value(rho2);
    lap_phi2[i] = bump.laplacian(rho2);
  }
  const double vol = g.cell_volume();

  auto space_int = [&](const GridField& f, const std::vector<double>& w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * w[i];
    return acc * vol;
  };

  // time integration by the trapezoid rule over the stored nodes
  const double h = traj.grid.h();
  auto time_int = [&](auto&& integrand) {
    double acc = 0.0;
    for (std::size_t n = 0; n < n_nodes; ++n) {
      const double wn = (n == 0 || n + 1 == n_nodes) ? 0.5 : 1.0;
      acc += wn * integrand(n);
    }
    return acc * h;
  };

  WeakResidual out;
  for (int eq = 0; eq < 2; ++eq) {
    const auto& fields = eq == 0 ? traj.fields_u : traj.fields_v;
    const auto& sources = eq == 0 ? traj.fields_v : traj.fields_u;
    const GridField& init = fields.front();
    const double alpha = eq == 0 ? params.gamma1 : params.gamma2;

    const double src_term = time_int([&](std::size_t n) {
      const double p1 = fracdiff::fraccalc::testfunc_value(tf, traj.steps[n].t);
      double acc = 0.0;
      const GridField& s = sources[n];
      for (std::size_t i = 0; i < s.size(); ++i)
        acc += (eq == 0 ? params.f_of(s[i]) : params.g_of(s[i])) * phi2[i];
      return acc * vol * p1;
    });
    const double init_term = time_int([&](std::size_t n) {
      const double dcap = fracdiff::fraccalc::caputo_right_testfunc(tf, alpha, traj.steps[n].t);
      return space_int(init, phi2) * dcap;
    });
    const double lap_term = time_int([&](std::size_t n) {
      const double p1 = fracdiff::fraccalc::testfunc_value(tf, traj.steps[n].t);
      return -space_int(fields[n], lap_phi2) * p1;
    });
    const double dual_term = time_int([&](std::size_t n) {
      const double dcap = fracdiff::fraccalc::caputo_right_testfunc(tf, alpha, traj.steps[n].t);
      return space_int(fields[n], phi2) * dcap;
    });

    const double lhs = src_term + init_term;
    const double rhs = lap_term + dual_term;
    const double res = std::fabs(lhs - rhs);
    const double scale = std::max({std::fabs(src_term), std::fabs(init_term),
                                   std::fabs(lap_term), std::fabs(dual_term)});
    if (eq == 0) {
      out.res_u = res;
      out.scale_u = scale;
    } else {
      out.res_v = res;
      out.scale_v = scale;
    }
  }
  return out;
}

SweepRow criteria_row(const SystemParams& params, int N) {
  SweepRow row{params.gamma1, params.gamma2, params.p, params.q, N, std::nullopt};
  try {
    row.global_ok = global_condition(params, N);
  } catch (const std::domain_error& e) {
    row.hyp_violation = e.what();
  }
  if (params.p > 1.0 && params.q > 1.0) {
    auto [r1, r2] = blowup_regions(params, N);
    row.region1 = r1;
    row.region2 = r2;
    auto [d1, d2] = blowup_exponents(params, N);
    row.delta1 = d1;
    row.delta2 = d2;
  } else if (row.hyp_violation.empty()) {
    row.hyp_violation = "blowup regions need p>1 and q>1";
  }
  return row;
}

void write_criteria_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "gamma1,gamma2,p,q,N,global_ok,region1,region2,delta1,delta2,hyp_violation\n";
  char buf[384];
  for (const auto& r : rows) {
    const char* global = !r.global_ok ? "na" : (*r.global_ok ? "true" : "false");
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%s,%s,%s,%.17g,%.17g,%s\n",
                  r.gamma1, r.gamma2, r.p, r.q, r.N, global, r.region1 ? "true" : "false",
                  r.region2 ? "true" : "false", r.delta1, r.delta2, r.hyp_violation.c_str());
    os << buf;
  }
}

}  // namespace fracdiff::criteria
