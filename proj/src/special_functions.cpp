#include "iglp/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "iglp/errors.hpp"

namespace iglp {

double hermite(int k, double u) {
  if (k < 0) throw std::invalid_argument("hermite: negative degree");
  if (k > kMaxHermiteDegree)
    throw capability_error("hermite: degree " + std::to_string(k) + " exceeds cap " +
                           std::to_string(kMaxHermiteDegree));
  if (k == 0) return 1.0;
  if (k == 1) return 2.0 * u;
  double hm = 1.0, h = 2.0 * u;
  for (int j = 1; j < k; ++j) {
    double hp = 2.0 * u * h - 2.0 * j * hm;
    hm = h;
    h = hp;
  }
  return h;
}

double HermiteValue::reconstruct() const { return value * std::exp(log_scale); }

HermiteValue hermite_tilde_1d(int k, double u) {
  if (k < 0) throw std::invalid_argument("hermite_tilde_1d: negative degree");
  if (k > kMaxHermiteDegree)
    throw capability_error("hermite_tilde_1d: degree exceeds cap");
  // run the recurrence with renormalization; the Gaussian goes into log_scale
  double hm = 0.0, h = 1.0, log_scale = -u * u;
  for (int j = 0; j < k; ++j) {
    double hp = 2.0 * u * h - 2.0 * j * hm;
    hm = h;
    h = hp;
    double a = std::fabs(h);
    if (a > 1e120) {
      hm /= a;
      h /= a;
      log_scale += std::log(a);
    }
  }
  return {h, log_scale};
}

HermiteValue hermite_tilde_split(const MultiIndex& k, const std::vector<double>& x) {
  if (k.size() != x.size())
    throw std::invalid_argument("hermite_tilde: dim(k) != dim(x)");
  HermiteValue out{1.0, 0.0};
  for (size_t i = 0; i < k.size(); ++i) {
    HermiteValue f = hermite_tilde_1d(k[i], x[i]);
    out.value *= f.value;
    out.log_scale += f.log_scale;
  }
  return out;
}

double hermite_tilde(const MultiIndex& k, const std::vector<double>& x) {
  return hermite_tilde_split(k, x).reconstruct();
}

double hermite_tilde_l2_norm_log(const MultiIndex& k) {
  double s = 0.0;
  for (int ki : k)
    s += 0.5 * (std::log(M_PI) + ki * std::log(2.0) + log_factorial(ki));
  return s;
}

double hermite_tilde_l2_norm(const MultiIndex& k) {
  return std::exp(hermite_tilde_l2_norm_log(k));
}

std::int64_t stirling2(int N, int l) {
  if (N < 0 || l < 0) throw std::invalid_argument("stirling2: negative argument");
  if (N > 20) throw capability_error("stirling2: exact table capped at N = 20");
  if (l > N) return 0;
  // S(N, l) = l S(N-1, l) + S(N-1, l-1), S(0, 0) = 1
  std::array<std::int64_t, 21> row{};
  row[0] = 1;
  for (int i = 1; i <= N; ++i) {
    for (int j = i; j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;  // S(i, 0) = 0 for i >= 1; must not leak into the next row
  }
  return row[l];
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

double multinomial(const MultiIndex& r) {
  int m = degree(r);
  double lg = log_factorial(m);
  for (int ri : r) lg -= log_factorial(ri);
  return std::round(std::exp(lg));
}

}  // namespace iglp
