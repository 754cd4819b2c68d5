#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "iglp/errors.hpp"
#include "iglp/regions_bounds.hpp"
#include "iglp/rng.hpp"

using namespace iglp;

TEST_CASE("admissibility function m(x) = min{1, |x|^{-2}}") {
  CHECK(m_admissibility({0.0}) == doctest::Approx(1.0));
  CHECK(m_admissibility({0.5}) == doctest::Approx(1.0));
  CHECK(m_admissibility({2.0}) == doctest::Approx(0.25));
  CHECK(m_admissibility({3.0, 4.0}) == doctest::Approx(1.0 / 25.0));
}

TEST_CASE("sqrt(m(x)) (1 + |x|) stays within [1/2, 2]") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    int n = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    std::vector<double> x(n);
    double r = rng.log_uniform(1e-3, 100.0) / std::sqrt(static_cast<double>(n));
    for (int d = 0; d < n; ++d) x[d] = rng.uniform(-1.0, 1.0) * r;
    double nx = 0.0;
    for (double xd : x) nx += xd * xd;
    nx = std::sqrt(nx);
    if (nx > 100.0) continue;
    double v = std::sqrt(m_admissibility(x)) * (1.0 + nx);
    CHECK(v >= 0.5);
    CHECK(v <= 2.0);
  }
}

TEST_CASE("local region membership is strict and scales with m(x)") {
  // at the origin m = 1: |y| < nu n
  CHECK(in_local_region({0.0}, {0.9}, 1.0));
  CHECK_FALSE(in_local_region({0.0}, {1.0}, 1.0));
  // far out the width shrinks like 1/|x|
  CHECK(in_local_region({10.0}, {10.05}, 1.0));
  CHECK_FALSE(in_local_region({10.0}, {10.2}, 1.0));
  // dimension factor n
  CHECK(in_local_region({0.0, 0.0}, {1.5, 0.0}, 1.0));
  CHECK_FALSE(in_local_region({0.0, 0.0}, {2.0, 0.1}, 1.0));
}

TEST_CASE("region scaling law") {
  // (u, v) in N_lambda implies (a u, a v) in N_{a lambda} for a < 1 and in
  // N_{a^2 lambda} for a >= 1
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    int n = 1 + static_cast<int>(rng.uniform(0.0, 2.0));
    std::vector<double> u(n), v(n);
    for (int d = 0; d < n; ++d) u[d] = rng.uniform(-4.0, 4.0);
    double lam = rng.log_uniform(0.2, 5.0);
    double w = lam * n * std::sqrt(m_admissibility(u));
    for (int d = 0; d < n; ++d) v[d] = u[d] + rng.uniform(-1.0, 1.0) * w / n;
    if (!in_local_region(u, v, lam)) continue;
    for (double a : {0.3, 0.8, 1.0, 1.7, 3.0}) {
      std::vector<double> au(n), av(n);
      for (int d = 0; d < n; ++d) {
        au[d] = a * u[d];
        av[d] = a * v[d];
      }
      double target = a < 1.0 ? a * lam : a * a * lam;
      CHECK(in_local_region(au, av, target));
    }
  }
}

TEST_CASE("slab J(z): membership and sampling") {
  JRegion region;
  region.eta = 3.0;
  region.n = 2;
  double zn = region.z_norm();
  CHECK(zn == doctest::Approx(3.0 * std::sqrt(2.0)));

  // points on the diagonal inside/outside the radial window
  auto diag = [&](double r) {
    return std::vector<double>{r / std::sqrt(2.0), r / std::sqrt(2.0)};
  };
  CHECK(region.contains(diag(1.4 * zn)));
  CHECK_FALSE(region.contains(diag(1.2 * zn)));
  CHECK_FALSE(region.contains(diag(1.6 * zn)));

  Rng rng(3);
  for (int i = 0; i < 500; ++i) CHECK(region.contains(region.sample(rng)));
}

TEST_CASE("slab measure grows like e^{|z|^2 scale}") {
  // log gamma_{-1}(J(z)) is dominated by e^{x^2} at the outer radius, so the
  // increments accelerate in eta
  std::vector<double> lm;
  for (double eta : {2.0, 3.0, 4.0, 5.0}) {
    JRegion region;
    region.eta = eta;
    region.n = 1;
    lm.push_back(region.log_measure());
  }
  for (size_t i = 1; i < lm.size(); ++i) CHECK(lm[i] > lm[i - 1]);
  CHECK(lm[3] - lm[2] > lm[1] - lm[0]);
}

TEST_CASE("log_int_exp_square against direct quadrature") {
  // small endpoints where e^{x^2} is tame
  double direct = 0.0;
  int steps = 200000;
  double a = 0.5, b = 1.5, h = (b - a) / steps;
  for (int i = 0; i < steps; ++i) {
    double t = a + (i + 0.5) * h;
    direct += std::exp(t * t) * h;
  }
  CHECK(log_int_exp_square(a, b) == doctest::Approx(std::log(direct)).epsilon(1e-6));
  // large endpoints: compare against the asymptotic e^{b^2}/(2b) leading term
  double lg = log_int_exp_square(19.0, 20.0);
  CHECK(lg == doctest::Approx(400.0 - std::log(40.0)).epsilon(1e-2));
}

TEST_CASE("verify_bound reports a genuine violation") {
  // rhs underflows to zero while lhs stays positive
  BoundSampler sampler = [](Rng&) {
    BoundSample s;
    s.x = {0.0};
    s.y = {0.0};
    s.t = 1.0;
    return s;
  };
  BoundSide lhs = [](const BoundSample&) { return 1.0; };
  BoundSide rhs = [](const BoundSample&) { return 0.0; };
  Rng rng(1);
  CHECK_THROWS_AS(verify_bound("probe", sampler, lhs, rhs, 5, rng), evaluation_error);
}

TEST_CASE("verify_bound counts non-finite evaluations without failing") {
  BoundSampler sampler = [](Rng&) { return BoundSample{{0.0}, {0.0}, 1.0}; };
  BoundSide lhs = [](const BoundSample&) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  BoundSide rhs = [](const BoundSample&) { return 1.0; };
  Rng rng(1);
  BoundReport r = verify_bound("probe", sampler, lhs, rhs, 5, rng);
  CHECK(r.nonfinite == 5);
  CHECK(r.fitted_constant == 0.0);
}

TEST_CASE("A2 sampler respects branch and the global region") {
  BoundParams params;
  params.n = 2;
  params.tgrid = make_time_grid(1e-4, 8.0, 32);
  for (int branch : {0, 1}) {
    params.a2_branch = branch;
    BoundProblem prob = make_bound_problem("A2", params);
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
      BoundSample s = prob.sampler(rng);
      CHECK_FALSE(in_local_region(s.x, s.y, 1.0));
      double ip = s.x[0] * s.y[0] + s.x[1] * s.y[1];
      if (branch == 0)
        CHECK(ip <= 0.0);
      else
        CHECK(ip > 0.0);
    }
  }
}

TEST_CASE("unknown bound id is rejected") {
  BoundParams params;
  params.tgrid = make_time_grid(1e-4, 8.0, 32);
  CHECK_THROWS_AS(make_bound_problem("nope", params), std::invalid_argument);
}
