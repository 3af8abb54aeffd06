#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Fractional calculus on uniform time grids: the L1 Caputo scheme,
// product-integration Riemann-Liouville integrals, and the closed-form
// right-sided Caputo derivative of the power test function (1 - t/T)_+^l.

namespace fracdiff::fraccalc {

struct TimeGrid {
  double t_end = 1.0;
  std::size_t n_steps = 1;

  TimeGrid() = default;
  TimeGrid(double t_end_, std::size_t n_steps_);

  double h() const { return t_end / static_cast<double>(n_steps); }
  double node(std::size_t i) const { return t_end * static_cast<double>(i) / static_cast<double>(n_steps); }
  std::size_t n_nodes() const { return n_steps + 1; }
  std::vector<double> nodes() const;
};

struct TestFuncSpec {
  double l = 2.0;            // power, >= 2
  double horizon = 1.0;      // T
  double lambda_scale = 8.0; // the lambda of the blow-up test function, default 4/gamma1

  TestFuncSpec() = default;
  TestFuncSpec(double l_, double horizon_, double lambda_scale_ = 8.0);
};

// (1 - t/T)_+^l
double testfunc_value(const TestFuncSpec& spec, double t);

// Closed form of the right Caputo derivative of the test function:
//   Gamma(l+1)/Gamma(l+1-alpha) T^{-alpha} (1 - t/T)_+^{l-alpha}.
// Since the test function vanishes at T this equals the right RL derivative.
double caputo_right_testfunc(const TestFuncSpec& spec, double alpha, double t);

// L1 discretisation of the forward Caputo derivative on a uniform grid with
// step h; output[0] = 0 by convention. Order 2-alpha on smooth data.
std::vector<double> caputo_l1(std::span<const double> samples, double alpha, double h);

enum class Side { left, right };

// Riemann-Liouville fractional integral of order alpha in (0,1) by product
// integration: the kernel (t-s)^{alpha-1} is integrated exactly against the
// piecewise-linear interpolant of the samples.
std::vector<double> rl_integral(std::span<const double> samples, double alpha, double h,
                                Side side);

// Left RL derivative via the Caputo relation
//   D^a psi = cD^a psi + psi(0) t^{-a}/Gamma(1-a).
// Node 0 is +-inf when psi(0) != 0.
std::vector<double> rl_derivative(std::span<const double> samples, double alpha, double h);

}  // namespace fracdiff::fraccalc
