#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracdiff/specfun.hpp"
#include "support.hpp"

using namespace fracdiff::specfun;
using testsupport::rel_err;

TEST_CASE("gamma matches extended-precision fixture to 12 digits") {
  for (const auto& row : testsupport::load_table("gamma_values.txt")) {
    CAPTURE(row[0]);
    CHECK(rel_err(gamma_fn(row[0]), row[1]) < 1e-12);
  }
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_err(gamma_fn(0.5), std::sqrt(M_PI)) < 1e-14);
}

TEST_CASE("gamma poles raise domain errors") {
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-17.0), std::domain_error);
}

TEST_CASE("rgamma is entire and consistent with gamma") {
  CHECK(rgamma(-3.0) == 0.0);
  CHECK(rgamma(0.0) == 0.0);
  for (double x : {0.25, 1.0, 4.5, -0.5, -6.3, 40.0})
    CHECK(rel_err(rgamma(x), 1.0 / gamma_fn(x)) < 1e-13);
}

TEST_CASE("mittag-leffler matches extended-precision fixture") {
  for (const auto& row : testsupport::load_table("ml_values.txt")) {
    const double alpha = row[0], beta = row[1], z = row[2], want = row[3];
    CAPTURE(alpha);
    CAPTURE(beta);
    CAPTURE(z);
    CHECK(rel_err(mittag_leffler({alpha, beta}, z), want) < 1e-9);
  }
}

TEST_CASE("mittag-leffler trivial values") {
  CHECK(mittag_leffler({0.5, 1.0}, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_err(mittag_leffler({1.0, 1.0}, 1.0), std::exp(1.0)) < 1e-13);
  auto c = testsupport::load_constants();
  CHECK(rel_err(mittag_leffler({0.5, 1.0}, -1.0), c.at("E_0.5_1_-1")) < 1e-10);
}

TEST_CASE("E_{1,1} equals exp on [-20,20]") {
  MittagLeffler ml(1.0, 1.0);
  for (double z = -20.0; z <= 20.0; z += 0.5)
    CHECK(rel_err(ml(z), std::exp(z)) < 1e-10);
}

TEST_CASE("evaluation branches agree on their overlaps") {
  // series vs asymptotic: x in [33^a, 41^a]; series vs integral below that
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    for (double beta : {1.0, alpha}) {
      MittagLeffler ml(alpha, beta);
      const double xs = std::pow(36.0, alpha);
      for (double f : {0.86, 0.95, 1.04, 1.12}) {
        const double x = xs * f;
        // force each branch through its own entry point
        double via_integral = ml_neg_integral(alpha, beta, x);
        CAPTURE(alpha);
        CAPTURE(beta);
        CAPTURE(x);
        CHECK(rel_err(ml(-x), via_integral) < 1e-9);
      }
      for (double x : {0.5, 1.2, std::pow(36.0, alpha) * 0.5}) {
        CHECK(rel_err(ml(-x), ml_neg_integral(alpha, beta, x)) < 1e-9);
      }
    }
  }
}

TEST_CASE("complete monotonicity proxy: E_a(-z) positive decreasing to 1e4") {
  for (double alpha : {0.2, 0.4, 0.6, 0.8, 0.95}) {
    MittagLeffler ml(alpha, 1.0);
    double prev = 1.0 + 1e-15;
    for (double z = 0.0; z <= 4.0 + 1e-9; z += 0.05) {
      double v = ml(-std::pow(10.0, z) + 1.0);  // grid reaching ~1e4
      CHECK(v > 0.0);
      CHECK(v <= prev * (1 + 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("ml out-of-range positive argument throws") {
  CHECK_THROWS_AS(mittag_leffler({0.4, 1.0}, 1e9), std::overflow_error);
}

TEST_CASE("wright phi matches fixture and closed form at alpha=1/2") {
  for (const auto& row : testsupport::load_table("wright_values.txt")) {
    const double alpha = row[0], theta = row[1], want = row[2];
    CAPTURE(alpha);
    CAPTURE(theta);
    if (want > 1e-12) CHECK(rel_err(wright_phi({alpha}, theta), want) < 1e-8);
  }
  WrightEvaluator phi({0.5});
  for (double th = 0.0; th <= 6.0; th += 0.25) {
    const double closed = std::exp(-th * th / 4.0) / std::sqrt(M_PI);
    CHECK(rel_err(phi(th), closed) < 1e-8);
  }
}

TEST_CASE("wright phi basics") {
  for (double alpha : {0.3, 0.5, 0.9})
    CHECK(rel_err(wright_phi({alpha}, 0.0), rgamma(1.0 - alpha)) < 1e-13);
  CHECK_THROWS_AS(wright_phi({0.5}, -0.1), std::domain_error);
  // nonnegativity incl. the clamped far tail
  WrightEvaluator phi({0.7});
  for (double th = 0.0; th < 40.0; th += 0.5) CHECK(phi(th) >= 0.0);
  bool reliable = true;
  double far = phi(30.0, &reliable);
  CHECK(far == 0.0);
  CHECK_FALSE(reliable);
}

TEST_CASE("wright quadrature moment identities (property b)") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    WrightQuadrature q({alpha}, 64);
    CHECK(q.accuracy_ok());
    for (double r : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      const double want = gamma_fn(1.0 + r) / gamma_fn(1.0 + alpha * r);
      const double got = q.integrate([&](double th) { return std::pow(th, r); });
      CAPTURE(alpha);
      CAPTURE(r);
      CHECK(rel_err(got, want) < 1e-8);
    }
  }
}

TEST_CASE("wright quadrature laplace identities (properties c and d)") {
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    WrightQuadrature q({alpha}, 64);
    MittagLeffler ml1(alpha, 1.0), mla(alpha, alpha);
    for (double z : {0.1, 1.0, 10.0}) {
      const double c_got = q.integrate([&](double th) { return std::exp(-z * th); });
      const double d_got =
          alpha * q.integrate([&](double th) { return th * std::exp(-z * th); });
      CAPTURE(alpha);
      CAPTURE(z);
      CHECK(rel_err(c_got, ml1(-z)) < 1e-8);
      CHECK(rel_err(d_got, mla(-z)) < 1e-8);
    }
  }
}

TEST_CASE("wright quadrature spec examples") {
  auto c = testsupport::load_constants();
  WrightQuadrature q5({0.5}, 64);
  CHECK(rel_err(q5.integrate([](double) { return 1.0; }), 1.0) < 1e-8);
  CHECK(rel_err(q5.integrate([](double th) { return th; }),
                c.at("wright_m1_moment_0.5")) < 1e-8);
  WrightQuadrature q4({0.4}, 64);
  MittagLeffler ml(0.4, 1.0);
  CHECK(rel_err(q4.integrate([](double th) { return std::exp(-th); }), ml(-1.0)) < 1e-8);
}

TEST_CASE("wright quadrature flags short rules instead of failing silently") {
  WrightQuadrature q({0.5}, 8);
  CHECK(q.max_defect() > 1e-8);
  CHECK_FALSE(q.accuracy_ok());
  CHECK_THROWS_AS(WrightQuadrature({0.5}, 4), std::invalid_argument);
}

TEST_CASE("wright quadrature weights positive, nodes increasing") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(0.15, 0.92);
  for (int trial = 0; trial < 4; ++trial) {
    WrightQuadrature q({ua(rng)}, 48);
    for (std::size_t j = 0; j < q.nodes().size(); ++j) {
      CHECK(q.weights()[j] > 0.0);
      if (j) CHECK(q.nodes()[j] > q.nodes()[j - 1]);
    }
  }
}
