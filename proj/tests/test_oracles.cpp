#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iglp/errors.hpp"
#include "iglp/kernels.hpp"
#include "iglp/oracles.hpp"
#include "iglp/rng.hpp"

using namespace iglp;

TEST_CASE("fd_time_derivative on analytic functions") {
  auto expf = [](double t) { return std::exp(-t); };
  FDResult r = fd_time_derivative(expf, 1.0, 1);
  CHECK(r.value == doctest::Approx(-std::exp(-1.0)).epsilon(1e-10));
  CHECK(std::fabs(r.value + std::exp(-1.0)) <= std::max(r.error_estimate, 1e-12));

  auto cube = [](double t) { return t * t * t; };
  FDResult r2 = fd_time_derivative(cube, 2.0, 2);
  // second-order stencils keep ~8 digits after roundoff amplification
  CHECK(r2.value == doctest::Approx(12.0).epsilon(1e-8));
  CHECK(std::fabs(r2.value - 12.0) <= r2.error_estimate);

  FDResult r0 = fd_time_derivative(expf, 0.7, 0);
  CHECK(r0.value == std::exp(-0.7));
}

TEST_CASE("richardson error estimates bound true error on analytic inputs") {
  Rng rng(7);
  int covered = 0, total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    double lam = rng.uniform(0.5, 3.0);
    double t = rng.uniform(0.5, 3.0);
    int m = 1 + static_cast<int>(rng.uniform() * 3.0);
    auto F = [lam](double u) { return std::exp(-lam * u); };
    FDResult r = fd_time_derivative(F, t, m);
    double truth = std::pow(-lam, m) * std::exp(-lam * t);
    ++total;
    if (std::fabs(r.value - truth) <= r.error_estimate + 1e-13 * std::fabs(truth))
      ++covered;
  }
  CHECK(covered >= 99 * total / 100);
}

TEST_CASE("fd guards") {
  auto f = [](double t) { return t; };
  FDScheme tiny;
  tiny.base_step = 1e-13;
  CHECK_THROWS_AS(fd_time_derivative(f, 1.0, 1, tiny), capability_error);
  FDScheme wide;
  wide.base_step = 3.0;
  CHECK_THROWS_AS(fd_time_derivative(f, 1.0, 2, wide), capability_error);
}

TEST_CASE("weyl integral against the spectral rule") {
  // d_t^alpha e^{-lam t} = lam^alpha e^{-lam t}
  for (double lam : {1.0, 2.0, 5.0, 10.0}) {
    for (double alpha : {0.25, 0.5, 0.75, 1.5}) {
      auto F = [lam](double u) { return std::exp(-lam * u); };
      double t = 0.4;
      double got = weyl_integral(F, t, alpha);
      double want = std::pow(lam, alpha) * std::exp(-lam * t);
      CHECK(got == doctest::Approx(want).epsilon(1e-5));
    }
  }
}

TEST_CASE("weyl integral named examples") {
  auto e1 = [](double u) { return std::exp(-u); };
  CHECK(weyl_integral(e1, 1.0, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  auto e2 = [](double u) { return std::exp(-2.0 * u); };
  CHECK(weyl_integral(e2, 0.5, 0.5) ==
        doctest::Approx(std::sqrt(2.0) * std::exp(-1.0)).epsilon(1e-6));
  // continuity toward integer order
  CHECK(weyl_integral(e1, 1.0, 0.999) == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
  auto bad = [](double) { return 1.0; };
  CHECK_THROWS_AS(weyl_integral(bad, 1.0, 0.5), integrability_error);
}

TEST_CASE("gamma_integral") {
  CHECK(gamma_integral(2.0, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(gamma_integral(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_integral(0.5, 3.0) == doctest::Approx(1.0233267079464885).epsilon(1e-12));
}

TEST_CASE("symbolic tables match the closed-form expansion exactly") {
  for (int n = 1; n <= 2; ++n) {
    for (int m = 0; m <= 3; ++m) {
      TermTable sym = symbolic_mehler_dt(m, n);
      TermTable closed = mehler_dt_term_table(m, n, true);
      CHECK_MESSAGE(term_table_mismatches(sym, closed) == 0,
                    "m = " << m << ", n = " << n);
    }
  }
}

TEST_CASE("uncorrected sign pattern is detected (negative control)") {
  TermTable sym = symbolic_mehler_dt(1, 1);
  TermTable wrong = mehler_dt_term_table(1, 1, false);
  CHECK(term_table_mismatches(sym, wrong) >= 1);
}

TEST_CASE("numeric evaluation of the symbolic table matches dt_m_ou") {
  Rng rng(11);
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 3; ++m) {
      TermTable sym = symbolic_mehler_dt(m, n);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
          x[i] = rng.uniform(-2.0, 2.0);
          y[i] = rng.uniform(-2.0, 2.0);
        }
        double t = rng.uniform(0.05, 5.0);
        double a = eval_term_table(sym, x, y, t);
        double b = dt_m_ou(x, y, t, m);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("symbolic oracle capability limits") {
  CHECK_THROWS_AS(symbolic_mehler_dt(4, 1), capability_error);
  CHECK_THROWS_AS(symbolic_mehler_dt(1, 3), capability_error);
  CHECK(symbolic_mehler_dt(0, 1).size() == 1);
}
