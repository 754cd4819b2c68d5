#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "iglp/errors.hpp"
#include "iglp/gfunctions.hpp"
#include "iglp/quadrature.hpp"
#include "iglp/special_functions.hpp"

using namespace iglp;

namespace {

SpaceGrid ig_grid(int points, int n) {
  return gauss_hermite_grid(points, n, std::vector<double>(n, 0.0), 1.0,
                            MeasureTag::inverse_gauss);
}

HermiteExpansion mode(int n, const MultiIndex& k, double c = 1.0) {
  HermiteExpansion f;
  f.n = n;
  f.vdim = 1;
  f.terms[k] = {c};
  return f;
}

// fine log grid: the trapezoid rule is spectrally accurate here because the
// integrand decays at both ends; only the head truncation t_min^{q beta}
// limits the accuracy
TimeGrid fine_grid() { return make_time_grid(1e-14, 64.0, 16384); }

}  // namespace

TEST_CASE("norm helpers") {
  NormSpec n2{2.0, 3};
  CHECK(lr_norm(n2, {3.0, 4.0, 0.0}) == doctest::Approx(5.0));
  NormSpec ninf{std::numeric_limits<double>::infinity(), 3};
  CHECK(lr_norm(ninf, {-3.0, 2.0, 1.0}) == doctest::Approx(3.0));
  NormSpec n1{1.0, 2};
  CHECK(lr_norm(n1, {-1.5, 2.0}) == doctest::Approx(3.5));
}

TEST_CASE("eigenfunctions give the closed-form constant Gamma(qb)^{1/q} q^{-b}") {
  TimeGrid tgrid = fine_grid();
  std::vector<double> x{0.3};
  for (double q : {1.5, 2.0, 3.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      double expected = std::exp(std::lgamma(q * beta) / q - beta * std::log(q));
      for (int j : {0, 2, 5}) {
        GFunctionSpec spec;
        spec.beta = beta;
        spec.k = {0};
        spec.q = q;
        HermiteExpansion f = mode(1, {j});
        double g = g_value(spec, f, x, tgrid);
        double want = expected * std::fabs(hermite_tilde({j}, x));
        CHECK(g == doctest::Approx(want).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("g is absolutely homogeneous") {
  TimeGrid tgrid = make_time_grid(1e-10, 64.0, 4096);
  GFunctionSpec spec;
  spec.k = {0};
  HermiteExpansion f = mode(1, {1}, 1.0);
  HermiteExpansion h = mode(1, {1}, -2.5);
  double gf = g_value(spec, f, {0.4}, tgrid);
  double gh = g_value(spec, h, {0.4}, tgrid);
  CHECK(gh == doctest::Approx(2.5 * gf).epsilon(1e-13));
}

TEST_CASE("||g(H~_0)||_2 = sqrt(pi)/2 for beta = 1, q = 2") {
  GFunctionSpec spec;
  spec.k = {0};
  SpaceGrid sgrid = ig_grid(48, 1);
  TimeGrid tgrid = fine_grid();
  double got = g_lp_norm(spec, mode(1, {0}), 2.0, sgrid, tgrid);
  CHECK(got == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-9));
}

TEST_CASE("kernel path agrees with the spectral path away from the origin") {
  // integer beta, full-space coverage: local + global quadrature pieces must
  // reassemble the spectral value
  GFunctionSpec spec;
  spec.beta = 1.0;
  spec.k = {0};
  spec.q = 2.0;
  HermiteExpansion f = mode(1, {1}, 1.0);
  TimeGrid tgrid = make_time_grid(1e-6, 32.0, 1024);
  std::vector<double> x{0.5};

  double full = g_value(spec, f, x, tgrid);
  GFunctionSpec local = spec;
  local.region = RegionMode::local;
  GFunctionSpec global = spec;
  global.region = RegionMode::global;
  double gl = g_value(local, f, x, tgrid);
  double gg = g_value(global, f, x, tgrid);
  // the region pieces add up to the full time profile before the L^q norm,
  // so the triangle inequality brackets the spectral value
  CHECK(gl > 0.0);
  CHECK(gg > 0.0);
  CHECK(full <= (gl + gg) * (1.0 + 1e-3));
}

TEST_CASE("kernel path guards") {
  GFunctionSpec spec;
  spec.beta = 0.5;
  spec.k = {0};
  spec.region = RegionMode::local;
  HermiteExpansion f = mode(1, {0});
  TimeGrid tgrid = make_time_grid(1e-4, 8.0, 64);
  CHECK_THROWS_AS(g_value(spec, f, {0.2}, tgrid), capability_error);

  GFunctionSpec shifted;
  shifted.k = {0};
  shifted.region = RegionMode::local;
  shifted.semigroup_tag = SemigroupTag::poisson_A_minus_I;
  CHECK_THROWS_AS(g_value(shifted, f, {0.2}, tgrid), capability_error);
}

TEST_CASE("ratio probe on eigenfunctions pins both constants") {
  GFunctionSpec spec;
  spec.k = {0};
  SpaceGrid sgrid = ig_grid(48, 1);
  TimeGrid tgrid = fine_grid();
  std::vector<HermiteExpansion> corpus;
  for (int j = 0; j <= 4; ++j) corpus.push_back(mode(1, {j}));
  RatioReport rr = ratio_probe(spec, corpus, 2.0, sgrid, tgrid);
  // beta = 1, q = 2: constant is exactly 1/2
  CHECK(rr.max_upper == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(rr.max_lower == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(rr.records.size() == corpus.size());
}

TEST_CASE("vector-valued g with r = q tensorizes over components") {
  // components in orthogonal modes: ||g(f)||_q^q = sum_j ||g(f_j)||_q^q
  GFunctionSpec vec;
  vec.k = {0};
  vec.q = 2.0;
  vec.norm = NormSpec{2.0, 2};
  HermiteExpansion f;
  f.n = 1;
  f.vdim = 2;
  f.terms[{1}] = {1.0, 0.0};
  f.terms[{2}] = {0.0, 1.0};
  SpaceGrid sgrid = ig_grid(48, 1);
  TimeGrid tgrid = fine_grid();
  double joint = g_lp_norm(vec, f, 2.0, sgrid, tgrid);

  GFunctionSpec scal;
  scal.k = {0};
  double g1 = g_lp_norm(scal, mode(1, {1}), 2.0, sgrid, tgrid);
  double g2 = g_lp_norm(scal, mode(1, {2}), 2.0, sgrid, tgrid);
  CHECK(joint * joint == doctest::Approx(g1 * g1 + g2 * g2).epsilon(1e-10));
}

TEST_CASE("maximal operator pins sup_t t lam e^{-lam t} = e^{-1}") {
  TimeGrid tgrid = make_time_grid(1e-6, 64.0, 8192);
  HermiteExpansion f = mode(1, {0});
  std::vector<double> x{0.6};
  double got = maximal_value(1, {0}, f, x, tgrid);
  double want = std::exp(-1.0) * std::fabs(hermite_tilde({0}, x));
  CHECK(got == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("time-grid refinement is stable") {
  GFunctionSpec spec;
  spec.k = {0};
  HermiteExpansion f = mode(1, {3}, 0.8);
  std::vector<double> x{0.4};
  double coarse = g_value(spec, f, x, make_time_grid(1e-10, 64.0, 4096));
  double fine = g_value(spec, f, x, make_time_grid(1e-12, 64.0, 16384));
  CHECK(coarse == doctest::Approx(fine).epsilon(1e-8));
}

TEST_CASE("argument guards") {
  GFunctionSpec spec;
  spec.k = {0};
  spec.q = 1.0;
  HermiteExpansion f = mode(1, {0});
  TimeGrid tgrid = make_time_grid(1e-4, 8.0, 64);
  CHECK_THROWS_AS(g_value(spec, f, {0.0}, tgrid), std::invalid_argument);
}
