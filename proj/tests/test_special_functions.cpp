#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iglp/errors.hpp"
#include "iglp/special_functions.hpp"

using namespace iglp;

TEST_CASE("hermite base cases and low degrees") {
  CHECK(hermite(0, 3.7) == 1.0);
  CHECK(hermite(1, 2.0) == 4.0);
  // H_3(x) = 8x^3 - 12x
  CHECK(hermite(3, 2.0) == doctest::Approx(40.0).epsilon(1e-14));
  CHECK_THROWS_AS(hermite(65, 0.0), capability_error);
}

TEST_CASE("three-term recurrence consistency") {
  for (int k = 1; k <= 40; ++k) {
    for (double u = -10.0; u <= 10.0; u += 0.5) {
      double lhs = hermite(k + 1, u) - 2.0 * u * hermite(k, u) + 2.0 * k * hermite(k - 1, u);
      double scale = std::fabs(hermite(k + 1, u)) + std::fabs(2.0 * u * hermite(k, u)) + 1.0;
      CHECK(std::fabs(lhs) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("hermite_tilde values") {
  CHECK(hermite_tilde({0}, {0.0}) == doctest::Approx(1.0));
  CHECK(hermite_tilde({1}, {1.0}) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(hermite_tilde({2, 0}, {0.0, 0.0}) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK_THROWS_AS(hermite_tilde({1, 2}, {0.0}), std::invalid_argument);
}

TEST_CASE("hermite_tilde split representation stays finite at high degree") {
  for (int k : {40, 50, 64}) {
    for (double u : {0.0, 1.0, 5.0, 20.0, -20.0}) {
      HermiteValue v = hermite_tilde_1d(k, u);
      CHECK(std::isfinite(v.value));
      CHECK(std::isfinite(v.log_scale));
      CHECK(std::isfinite(v.reconstruct()));
    }
  }
}

TEST_CASE("derivative relation d/dz H~_l = -H~_{l+1}") {
  const double h = 1e-5;
  for (int l = 0; l <= 20; ++l) {
    for (double z : {-3.0, -1.2, 0.3, 2.0}) {
      double fd = (hermite_tilde({l}, {z + h}) - hermite_tilde({l}, {z - h})) / (2.0 * h);
      double target = -hermite_tilde({l + 1}, {z});
      // envelope 2 sqrt(2^{l+1} (l+1)!) e^{-z^2/2} scales the tolerance
      double envelope =
          2.0 * std::exp(0.5 * ((l + 1) * std::log(2.0) + log_factorial(l + 1)) -
                         0.5 * z * z);
      CHECK(std::fabs(fd - target) <= 1e-6 * std::max(1.0, envelope));
    }
  }
}

TEST_CASE("pointwise bound |H~_j(u)| <= 2 sqrt(2^j j!) e^{-u^2/2}") {
  for (int j = 0; j <= 30; ++j) {
    double bound_log = std::log(2.0) + 0.5 * (j * std::log(2.0) + log_factorial(j));
    for (double u = -15.0; u <= 15.0; u += 0.25) {
      HermiteValue v = hermite_tilde_1d(j, u);
      double val_log = v.value == 0.0
                           ? -1e300
                           : std::log(std::fabs(v.value)) + v.log_scale;
      CHECK(val_log <= bound_log - 0.5 * u * u + 1e-12);
    }
  }
}

TEST_CASE("l2 norms under gamma_{-1}") {
  CHECK(hermite_tilde_l2_norm({0}) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(hermite_tilde_l2_norm({2}) == doctest::Approx(std::sqrt(8.0 * M_PI)).epsilon(1e-14));
  CHECK(hermite_tilde_l2_norm({1, 1}) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("stirling2") {
  CHECK(stirling2(3, 3) == 1);
  CHECK(stirling2(3, 2) == 3);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 0) == 0);
  CHECK(stirling2(2, 5) == 0);
  CHECK_THROWS_AS(stirling2(21, 3), capability_error);
}

TEST_CASE("multiindex enumeration") {
  CHECK(multiindex_range({1}) == std::vector<MultiIndex>{{0}, {1}});
  CHECK(multiindex_range({1, 1}) ==
        std::vector<MultiIndex>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(multiindex_range({2}) == std::vector<MultiIndex>{{0}, {1}, {2}});
  CHECK(multiindices_of_degree(2, 1) == std::vector<MultiIndex>{{0, 1}, {1, 0}});
  CHECK(degree({2, 3, 1}) == 6);
  CHECK(multiindex_leq({1, 2}, {2, 2}));
  CHECK_FALSE(multiindex_leq({3, 0}, {2, 2}));
}
