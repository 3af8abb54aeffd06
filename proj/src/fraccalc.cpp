#include "fracdiff/fraccalc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracdiff/specfun.hpp"

namespace fracdiff::fraccalc {

TimeGrid::TimeGrid(double t_end_, std::size_t n_steps_) : t_end(t_end_), n_steps(n_steps_) {
  if (!(t_end > 0.0)) throw std::domain_error("TimeGrid: t_end must be > 0");
  if (n_steps < 1) throw std::domain_error("TimeGrid: need at least one step");
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> t(n_nodes());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = node(i);
  return t;
}

TestFuncSpec::TestFuncSpec(double l_, double horizon_, double lambda_scale_)
    : l(l_), horizon(horizon_), lambda_scale(lambda_scale_) {
  if (!(l >= 2.0)) throw std::domain_error("TestFuncSpec: l must be >= 2");
  if (!(horizon > 0.0)) throw std::domain_error("TestFuncSpec: horizon must be > 0");
  if (!(lambda_scale > 0.0)) throw std::domain_error("TestFuncSpec: lambda_scale must be > 0");
}

double testfunc_value(const TestFuncSpec& spec, double t) {
  const double s = 1.0 - t / spec.horizon;
  return s > 0.0 ? std::pow(s, spec.l) : 0.0;
}

double caputo_right_testfunc(const TestFuncSpec& spec, double alpha, double t) {
  if (t < 0.0 || t > spec.horizon)
    throw std::domain_error("caputo_right_testfunc: t outside [0, T]");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("caputo_right_testfunc: alpha must be in (0,1)");
  const double s = 1.0 - t / spec.horizon;
  if (s <= 0.0) return 0.0;
  using specfun::gamma_fn;
  return gamma_fn(spec.l + 1.0) / gamma_fn(spec.l + 1.0 - alpha) *
         std::pow(spec.horizon, -alpha) * std::pow(s, spec.l - alpha);
}

std::vector<double> caputo_l1(std::span<const double> samples, double alpha, double h) {
  if (samples.size() < 2) throw std::invalid_argument("caputo_l1: need at least 2 samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("caputo_l1: alpha in (0,1)");
  if (!(h > 0.0)) throw std::domain_error("caputo_l1: h must be > 0");
  const std::size_t n = samples.size();
  // b_j = (j+1)^{1-a} - j^{1-a}
  std::vector<double> b(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j)
    b[j] = std::pow(static_cast<double>(j + 1), 1.0 - alpha) -
           std::pow(static_cast<double>(j), 1.0 - alpha);
  const double scale = std::pow(h, -alpha) * specfun::rgamma(2.0 - alpha);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j)
      acc += b[i - 1 - j] * (samples[j + 1] - samples[j]);
    out[i] = scale * acc;
  }
  return out;
}

std::vector<double> rl_integral(std::span<const double> samples, double alpha, double h,
                                Side side) {
  if (samples.size() < 2) throw std::invalid_argument("rl_integral: need at least 2 samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("rl_integral: alpha in (0,1)");
  if (!(h > 0.0)) throw std::domain_error("rl_integral: h must be > 0");
  const std::size_t n = samples.size();
  std::vector<double> f(samples.begin(), samples.end());
  if (side == Side::right) std::reverse(f.begin(), f.end());

  // Exact moments of the kernel over each lag cell, for the piecewise-linear
  // interpolant: with kernel (t_i - s)^{a-1} on s in [t_j, t_{j+1}],
  //   I0(m) = int (t_i - s)^{a-1} ds           over lag m = i - j,
  //   I1(m) = int (t_i - s)^{a-1} (s - t_j) ds
  // both in closed form; contribution = f_j I0 + (f_{j+1}-f_j)/h I1.
  const double ia = 1.0 / alpha;
  const double ia1 = 1.0 / (alpha + 1.0);
  std::vector<double> I0(n), I1(n);
  for (std::size_t m = 1; m < n; ++m) {
    const double A = static_cast<double>(m) * h;        // t_i - t_j
    const double B = static_cast<double>(m - 1) * h;    // t_i - t_{j+1}
    const double Aa = std::pow(A, alpha), Ba = std::pow(B, alpha);
    I0[m] = ia * (Aa - Ba);
    // int_{t_j}^{t_{j+1}} (t_i-s)^{a-1}(s-t_j) ds
    //   = A/a (A^a - B^a)/1 ... expressed via the two power moments:
    I1[m] = ia * A * (Aa - Ba) - ia1 * (std::pow(A, alpha + 1.0) - std::pow(B, alpha + 1.0));
  }
  const double rg = specfun::rgamma(alpha);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t m = i - j;
      acc += f[j] * I0[m] + (f[j + 1] - f[j]) / h * I1[m];
    }
    out[i] = rg * acc;
  }
  if (side == Side::right) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> rl_derivative(std::span<const double> samples, double alpha, double h) {
  std::vector<double> out = caputo_l1(samples, alpha, h);
  const double f0 = samples[0];
  if (f0 != 0.0) {
    const double rg = specfun::rgamma(1.0 - alpha);
    out[0] = f0 > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < out.size(); ++i)
      out[i] += f0 * std::pow(static_cast<double>(i) * h, -alpha) * rg;
  }
  return out;
}

}  // namespace fracdiff::fraccalc
