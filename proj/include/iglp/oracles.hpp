#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace iglp {

// ---------------------------------------------------------------------------
// Finite differences with Richardson extrapolation
// ---------------------------------------------------------------------------

struct FDScheme {
  int order = 2;               // order of the base central stencil error, fixed even
  double base_step = 1e-2;
  int richardson_levels = 5;
};

struct FDResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// m-th time derivative of F at t via central differences plus a Richardson
// tableau in h^2. Throws capability_error if the step underflows or the
// stencil would leave t - width <= 0.
FDResult fd_time_derivative(const std::function<double(double)>& F, double t, int m,
                            const FDScheme& scheme = {});

// ---------------------------------------------------------------------------
// Weyl fractional derivative, evaluated from its integral definition:
//   ((-1)^m/Gamma(m - a)) int_t^inf d^m/du^m F(u) (u - t)^{m-a-1} du,
//   m = floor(a)+1; on e^{-lam t} this acts as lam^a.
// ---------------------------------------------------------------------------

double weyl_integral(const std::function<double(double)>& F, double t, double alpha);

// Gamma(a) lam^{-a}, the closed form of int_0^inf t^a e^{-lam t} dt/t.
double gamma_integral(double a, double lam);

// ---------------------------------------------------------------------------
// Exact symbolic differentiation of the Ornstein-Uhlenbeck kernel
//
// T_t(x,y) = R^n exp(-|y - E x|^2 R^2) with E = e^{-t}, R = (1 - E^2)^{-1/2}.
// Derivatives of T/T live in the polynomial ring Q[x_1..x_n, y_1..y_n, E, R]
// since dE/dt = -E and dR/dt = -E^2 R^3. A term table maps the exponent
// vector (x exponents, y exponents, E exponent, R exponent) to a rational
// coefficient; the represented quantity is T_t(x,y) * sum c * monomial.
// ---------------------------------------------------------------------------

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
};

using Monomial = std::vector<int>;          // length 2n + 2
using TermTable = std::map<Monomial, Rational>;

// Canonical table of d^m/dt^m T_t(x,y) / T_t(x,y), by exact repeated
// product/chain rule. m <= 3, n <= 2.
TermTable symbolic_mehler_dt(int m, int n);

// The same quantity expanded from the corrected closed-form identity
// (Stirling/binomial quadruple sum). corrected=false flips the interior sign
// pattern (-1)^{s_i + l_i} to the plausible alternative (-1)^{s_i}; it serves
// as the negative control.
TermTable mehler_dt_term_table(int m, int n, bool corrected = true);

// Numeric evaluation of table * T_t(x,y) at a point.
double eval_term_table(const TermTable& table, const std::vector<double>& x,
                       const std::vector<double>& y, double t);

// Number of monomials on which two tables disagree.
int term_table_mismatches(const TermTable& a, const TermTable& b);

}  // namespace iglp
