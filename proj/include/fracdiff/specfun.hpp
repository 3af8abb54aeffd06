#pragma once

#include <cstddef>
#include <memory>
#include <vector>

// Scalar special-function kernels: Gamma, the two-parameter Mittag-Leffler
// function on the real line, and the Wright type function
//   phi_a(th) = sum_k (-th)^k / (k! Gamma(-a k + 1 - a)),   0 < a < 1,
// together with a Gaussian quadrature rule for integrals
// int_0^inf phi_a(th) g(th) dth.

namespace fracdiff::specfun {

struct MLParams {
  double alpha;  // in (0, 1]
  double beta;   // > 0
};

struct WrightParams {
  double alpha;  // in (0, 1)
};

// Euler Gamma. Throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma_fn(double x);

// 1/Gamma(x), entire (returns 0 at the poles).
double rgamma(double x);

// Mittag-Leffler evaluator with per-(alpha,beta) coefficient tables.
// Construction costs a few thousand gamma evaluations; evaluation is cheap
// and const-thread-safe. Branches:
//   * power series in 128-bit floats for -36^alpha <= z (cancellation guard),
//   * asymptotic expansion E(-x) ~ sum_k (-1)^{k-1} x^{-k}/Gamma(beta-alpha k)
//     for x > 36^alpha,
//   * branch-cut integral as guard fallback and cross-check.
// The two main branches overlap: the series is trustworthy up to ~41^alpha
// while the asymptotic tail error ~exp(-x^{1/alpha}) is < 1e-13 from
// ~33^alpha on.
class MittagLeffler {
 public:
  explicit MittagLeffler(MLParams p);
  MittagLeffler(double alpha, double beta) : MittagLeffler(MLParams{alpha, beta}) {}
  ~MittagLeffler();
  MittagLeffler(MittagLeffler&&) noexcept;
  MittagLeffler& operator=(MittagLeffler&&) noexcept;

  double operator()(double z) const;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double alpha_ = 0, beta_ = 0;
  struct Tables;
  std::unique_ptr<Tables> t_;
};

// One-shot evaluation (builds the tables each call).
double mittag_leffler(MLParams p, double z);

// E_{alpha,beta}(-x) by adaptive quadrature of the branch-cut representation
//   (1/(pi a)) int_0^inf r^{(1-b)/a} e^{-r^{1/a}}
//       [r sin(pi(1-b)) + x sin(pi(1-b+a))] / (r^2 + 2 r x cos(pi a) + x^2) dr,
// valid for 0 < alpha < 1, beta < 1 + alpha, x > 0. Kept as an independent
// route for cross-checking the series/asymptotic branches.
double ml_neg_integral(double alpha, double beta, double x);

// Wright function evaluator; holds the reciprocal-gamma table for one alpha.
class WrightEvaluator {
 public:
  explicit WrightEvaluator(WrightParams p);
  ~WrightEvaluator();
  WrightEvaluator(WrightEvaluator&&) noexcept;
  WrightEvaluator& operator=(WrightEvaluator&&) noexcept;

  // phi_alpha(theta), theta >= 0. Where the 128-bit series noise floor
  // exceeds the value (phi far below 1e-12) the result is clamped to the
  // nonnegative series value and *reliable is cleared.
  double operator()(double theta, bool* reliable = nullptr) const;

  // leading saddle-point estimate
  //   (2 pi (1-a))^{-1/2} (a th)^{(2a-1)/(2-2a)} exp(-(1-a) a^{a/(1-a)} th^{1/(1-a)}),
  // exact at a = 1/2, few-percent accurate where the series becomes
  // noise-limited; used to extend quadrature construction into the far tail
  double tail_estimate(double theta) const;

  double alpha() const { return alpha_; }

 private:
  double alpha_;
  struct Table;
  std::unique_ptr<Table> t_;
};

double wright_phi(WrightParams p, double theta, bool* reliable = nullptr);

// Gauss rule for the measure phi_alpha(theta) dtheta on [0, inf).
// Built as a Gauss rule for the even measure 2 v phi_alpha(v^2) dv (v = sqrt
// of theta), which keeps half-integer moments theta^{1/2} polynomial; the
// recurrence coefficients come from a Stieltjes procedure over a fine
// composite Gauss-Legendre discretisation. Moments Gamma(1+r)/Gamma(1+a r)
// for r in {0, 1/2, 1, 2, 3} then hold to ~1e-15 at 64 nodes.
class WrightQuadrature {
 public:
  WrightQuadrature(WrightParams p, std::size_t n_nodes);

  const std::vector<double>& nodes() const { return nodes_; }      // theta_j
  const std::vector<double>& weights() const { return weights_; }  // w_j

  // max relative defect over the moment identities r in {0,1/2,1,2,3} and
  // two Laplace probes against the construction rule; accuracy_ok() is
  // defect < 1e-8. Too few nodes degrade the flag, never throw.
  double max_defect() const { return max_defect_; }
  bool accuracy_ok() const { return max_defect_ < 1e-8; }

  double alpha() const { return alpha_; }

  // sum_j w_j g(theta_j)
  template <typename G>
  double integrate(G&& g) const {
    double s = 0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) s += weights_[j] * g(nodes_[j]);
    return s;
  }

 private:
  double alpha_;
  std::vector<double> nodes_, weights_;
  double max_defect_ = 0;
};

}  // namespace fracdiff::specfun
