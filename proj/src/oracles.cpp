#include "iglp/oracles.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "iglp/errors.hpp"
#include "iglp/multiindex.hpp"
#include "iglp/quadrature.hpp"
#include "iglp/special_functions.hpp"

namespace iglp {

// ---------------------------------------------------------------------------
// finite differences
// ---------------------------------------------------------------------------

namespace {

// central m-th derivative stencil, nodes t + (m/2 - j) h, j = 0..m
double central_stencil(const std::function<double(double)>& F, double t, int m,
                       double h) {
  if (m == 0) return F(t);
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 0; j <= m; ++j) {
    double node = t + (0.5 * m - j) * h;
    sum += sign * binomial(m, j) * F(node);
    sign = -sign;
  }
  return sum / std::pow(h, m);
}

}  // namespace

FDResult fd_time_derivative(const std::function<double(double)>& F, double t, int m,
                            const FDScheme& scheme) {
  if (m < 0) throw std::invalid_argument("fd_time_derivative: negative order");
  if (m == 0) return {F(t), 0.0};
  int L = scheme.richardson_levels;
  if (L < 2) L = 2;
  double h0 = scheme.base_step;
  if (h0 / std::pow(2.0, L - 1) < 1e-14)
    throw capability_error("fd_time_derivative: step underflow in Richardson ladder");
  if (t - 0.5 * m * h0 <= 0.0)
    throw capability_error("fd_time_derivative: stencil leaves the domain t > 0");

  std::vector<std::vector<double>> A(L);
  for (int i = 0; i < L; ++i) {
    A[i].resize(i + 1);
    A[i][0] = central_stencil(F, t, m, h0 / std::pow(2.0, i));
    double pow4 = 1.0;
    for (int j = 1; j <= i; ++j) {
      pow4 *= 4.0;
      A[i][j] = (pow4 * A[i][j - 1] - A[i - 1][j - 1]) / (pow4 - 1.0);
    }
  }
  double best = A[L - 1][L - 1];
  // the diagonal difference tracks truncation; roundoff of the finest stencil
  // (cancellation of ~2^m terms divided by h^m) needs its own floor
  double h_min = h0 / std::pow(2.0, L - 1);
  double fmax = 0.0;
  for (int j = 0; j <= m; ++j)
    fmax = std::max(fmax, std::fabs(F(t + (0.5 * m - j) * h_min)));
  double noise = 4e-15 * std::pow(2.0, m) * fmax / std::pow(h_min, m);
  double err = std::fabs(best - A[L - 2][L - 2]) + noise + 1e-15 * std::fabs(best);
  return {best, err};
}

// ---------------------------------------------------------------------------
// Weyl integral
// ---------------------------------------------------------------------------

double weyl_integral(const std::function<double(double)>& F, double t, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("weyl_integral: alpha must be positive");
  int m = static_cast<int>(std::floor(alpha)) + 1;
  double mu = m - alpha;  // in (0, 1]

  // decay probe: the integral only exists for decaying F
  double far = std::fabs(F(t + 150.0));
  double near = std::fabs(F(t));
  if (!(far < 0.5 * near + 1e-100))
    throw integrability_error("weyl_integral: integrand fails the tail decay probe");

  FDScheme scheme;
  scheme.base_step = 5e-3;
  scheme.richardson_levels = 4;
  auto G = [&](double u, int extra) {
    return fd_time_derivative(F, u, m + extra, scheme).value;
  };

  // int_0^inf G(t + tau) tau^{mu - 1} dtau, G = d^m F. The endpoint power
  // is handled analytically on [0, tau0] by a second-order Taylor head
  // (exact in tau^mu), the rest by composite Gauss-Legendre in log tau.
  const double tau0 = 1e-3;
  double head = G(t, 0) * std::pow(tau0, mu) / mu +
                G(t, 1) * std::pow(tau0, mu + 1.0) / (mu + 1.0) +
                0.5 * G(t, 2) * std::pow(tau0, mu + 2.0) / (mu + 2.0);

  std::vector<double> gl_x, gl_w;
  gauss_legendre_rule(12, gl_x, gl_w);
  const double v_lo = std::log(tau0), v_hi = std::log(400.0);
  const int panels = 60;
  double tail = 0.0;
  double pw = (v_hi - v_lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double a = v_lo + p * pw;
    double mid = a + 0.5 * pw, half = 0.5 * pw;
    for (size_t i = 0; i < gl_x.size(); ++i) {
      double v = mid + half * gl_x[i];
      double tau = std::exp(v);
      tail += half * gl_w[i] * G(t + tau, 0) * std::exp(mu * v);
    }
  }
  // the Weyl derivative carries (-1)^m in front of the m-th derivative form;
  // on e^{-lam t} this yields +lam^alpha e^{-lam t}
  double sign = (m % 2) ? -1.0 : 1.0;
  return sign * (head + tail) / std::tgamma(mu);
}

double gamma_integral(double a, double lam) {
  if (a <= 0.0 || lam <= 0.0)
    throw std::invalid_argument("gamma_integral: arguments must be positive");
  return std::exp(std::lgamma(a) - a * std::log(lam));
}

// ---------------------------------------------------------------------------
// rational arithmetic
// ---------------------------------------------------------------------------

namespace {

std::int64_t checked_cast(__int128 v, const char* where) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw capability_error(std::string("rational overflow in ") + where);
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(checked_cast(n, "add"), checked_cast(d, "add"));
}

Rational Rational::operator*(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.num;
  __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(checked_cast(n, "mul"), checked_cast(d, "mul"));
}

// ---------------------------------------------------------------------------
// polynomial tables over Q[x_1..x_n, y_1..y_n, E, R]
// ---------------------------------------------------------------------------

namespace {

void add_term(TermTable& t, const Monomial& mono, const Rational& c) {
  if (c.is_zero()) return;
  auto it = t.find(mono);
  if (it == t.end()) {
    t.emplace(mono, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) t.erase(it);
  }
}

TermTable table_add(const TermTable& a, const TermTable& b) {
  TermTable out = a;
  for (const auto& [mono, c] : b) add_term(out, mono, c);
  return out;
}

TermTable table_mul(const TermTable& a, const TermTable& b) {
  TermTable out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      add_term(out, m, ca * cb);
    }
  return out;
}

TermTable table_scale(const TermTable& a, const Rational& c) {
  TermTable out;
  for (const auto& [mono, ca] : a) add_term(out, mono, ca * c);
  return out;
}

// monomial helpers for n dims: slots [x_1..x_n, y_1..y_n, E, R]
Monomial mono_unit(int n) { return Monomial(2 * n + 2, 0); }

TermTable one(int n) {
  TermTable t;
  t.emplace(mono_unit(n), Rational(1));
  return t;
}

// d/dt of a table using dE/dt = -E, dR/dt = -E^2 R^3
TermTable table_dt(const TermTable& a, int n) {
  TermTable out;
  int iE = 2 * n, iR = 2 * n + 1;
  for (const auto& [mono, c] : a) {
    int e = mono[iE], r = mono[iR];
    if (e != 0) add_term(out, mono, c * Rational(-e));
    if (r != 0) {
      Monomial m = mono;
      m[iE] += 2;
      m[iR] += 2;
      add_term(out, m, c * Rational(-r));
    }
  }
  return out;
}

// d/dt log T = -n E^2 R^2 + d/dt G with G = -|y - E x|^2 R^2
TermTable log_deriv(int n) {
  TermTable L;
  int iE = 2 * n, iR = 2 * n + 1;
  {
    Monomial m = mono_unit(n);
    m[iE] = 2;
    m[iR] = 2;
    add_term(L, m, Rational(-n));
  }
  for (int i = 0; i < n; ++i) {
    int ix = i, iy = n + i;
    Monomial m = mono_unit(n);
    m[ix] = 1; m[iy] = 1; m[iE] = 1; m[iR] = 2;
    add_term(L, m, Rational(-2));
    m = mono_unit(n);
    m[ix] = 2; m[iE] = 2; m[iR] = 2;
    add_term(L, m, Rational(2));
    m = mono_unit(n);
    m[iy] = 2; m[iE] = 2; m[iR] = 4;
    add_term(L, m, Rational(2));
    m = mono_unit(n);
    m[ix] = 1; m[iy] = 1; m[iE] = 3; m[iR] = 4;
    add_term(L, m, Rational(-4));
    m = mono_unit(n);
    m[ix] = 2; m[iE] = 4; m[iR] = 4;
    add_term(L, m, Rational(2));
  }
  return L;
}

// integer coefficients of the physicists' Hermite polynomial H_j
std::vector<std::int64_t> hermite_coeffs(int j) {
  std::vector<std::int64_t> hm{1};  // H_0
  if (j == 0) return hm;
  std::vector<std::int64_t> h{0, 2};  // H_1
  for (int d = 1; d < j; ++d) {
    std::vector<std::int64_t> hp(d + 2, 0);
    for (int p = 0; p <= d; ++p) hp[p + 1] += 2 * h[p];
    for (size_t p = 0; p < hm.size(); ++p) hp[p] -= 2 * static_cast<std::int64_t>(d) * hm[p];
    hm = std::move(h);
    h = std::move(hp);
  }
  return h;
}

// H_j applied to a linear-form table, expanded exactly
TermTable hermite_of(int j, const TermTable& arg, int n) {
  auto coef = hermite_coeffs(j);
  TermTable out;
  TermTable power = one(n);
  for (size_t p = 0; p < coef.size(); ++p) {
    if (coef[p] != 0) out = table_add(out, table_scale(power, Rational(coef[p])));
    if (p + 1 < coef.size()) power = table_mul(power, arg);
  }
  return out;
}

std::int64_t binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t multinom_ll(const MultiIndex& r) {
  int m = degree(r);
  std::int64_t out = 1;
  int used = 0;
  for (int ri : r) {
    out *= binom_ll(used + ri, ri);
    used += ri;
  }
  (void)m;
  return out;
}

}  // namespace

TermTable symbolic_mehler_dt(int m, int n) {
  if (m < 0 || m > 3 || n < 1 || n > 2)
    throw capability_error("symbolic_mehler_dt: supported range is m <= 3, n <= 2");
  TermTable P = one(n);
  TermTable L = log_deriv(n);
  for (int i = 0; i < m; ++i) P = table_add(table_dt(P, n), table_mul(P, L));
  return P;
}

TermTable mehler_dt_term_table(int m, int n, bool corrected) {
  if (m < 0 || m > 3 || n < 1 || n > 2)
    throw capability_error("mehler_dt_term_table: supported range is m <= 3, n <= 2");
  if (m == 0) return one(n);
  int iE = 2 * n, iR = 2 * n + 1;
  TermTable total;
  for (const MultiIndex& r : multiindices_of_degree(n, m)) {
    TermTable prod = one(n);
    for (int i = 0; i < n; ++i) {
      // per-dimension factor: sum over s_i <= r_i, l_i <= s_i
      TermTable fac;
      // argument (y_i - E x_i) R as a linear table
      TermTable arg;
      {
        Monomial mo = mono_unit(n);
        mo[n + i] = 1;
        mo[iR] = 1;
        add_term(arg, mo, Rational(1));
        mo = mono_unit(n);
        mo[i] = 1;
        mo[iE] = 1;
        mo[iR] = 1;
        add_term(arg, mo, Rational(-1));
      }
      TermTable xi;  // plain x_i variable
      {
        Monomial mo = mono_unit(n);
        mo[i] = 1;
        add_term(xi, mo, Rational(1));
      }
      for (int s = 0; s <= r[i]; ++s) {
        std::int64_t S = stirling2(r[i], s);
        if (S == 0) continue;
        for (int l = 0; l <= s; ++l) {
          int sign_pow = corrected ? (s + l) : s;
          Rational c(((sign_pow % 2) ? -1 : 1) * S * binom_ll(s, l), std::int64_t(1) << s);
          TermTable term = table_scale(hermite_of(l, xi, n), c);
          term = table_mul(term, hermite_of(2 * s - l, arg, n));
          // factor (E R)^{2 s - l}
          TermTable er;
          Monomial mo = mono_unit(n);
          mo[iE] = 2 * s - l;
          mo[iR] = 2 * s - l;
          add_term(er, mo, Rational(1));
          term = table_mul(term, er);
          fac = table_add(fac, term);
        }
      }
      prod = table_mul(prod, fac);
    }
    total = table_add(total, table_scale(prod, Rational(multinom_ll(r))));
  }
  if (m % 2) total = table_scale(total, Rational(-1));
  return total;
}

double eval_term_table(const TermTable& table, const std::vector<double>& x,
                       const std::vector<double>& y, double t) {
  size_t n = x.size();
  if (y.size() != n) throw std::invalid_argument("eval_term_table: dim mismatch");
  double E = std::exp(-t);
  double om = -std::expm1(-2.0 * t);  // 1 - e^{-2t}
  double R = 1.0 / std::sqrt(om);
  double quad = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = y[i] - E * x[i];
    quad += d * d;
  }
  double T = std::pow(R, static_cast<double>(n)) * std::exp(-quad * R * R);
  double sum = 0.0;
  for (const auto& [mono, c] : table) {
    double v = static_cast<double>(c.num) / static_cast<double>(c.den);
    for (size_t i = 0; i < n; ++i) v *= std::pow(x[i], mono[i]);
    for (size_t i = 0; i < n; ++i) v *= std::pow(y[i], mono[n + i]);
    v *= std::pow(E, mono[2 * n]) * std::pow(R, mono[2 * n + 1]);
    sum += v;
  }
  return T * sum;
}

int term_table_mismatches(const TermTable& a, const TermTable& b) {
  int count = 0;
  for (const auto& [mono, c] : a) {
    auto it = b.find(mono);
    if (it == b.end() || !(it->second == c)) ++count;
  }
  for (const auto& [mono, c] : b)
    if (a.find(mono) == a.end()) ++count;
  return count;
}

}  // namespace iglp
