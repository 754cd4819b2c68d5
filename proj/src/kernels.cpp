#include "iglp/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "iglp/errors.hpp"
#include "iglp/quadrature.hpp"
#include "iglp/special_functions.hpp"

namespace iglp {

namespace {

void check_dims(const std::vector<double>& x, const std::vector<double>& y,
                const char* who) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

void check_t(double t, const char* who) {
  if (!(t > 0.0)) throw std::invalid_argument(std::string(who) + ": t must be positive");
}

// 1 - e^{-2t} without cancellation
inline double one_minus_e2t(double t) { return -std::expm1(-2.0 * t); }

}  // namespace

double heat_euclid(const std::vector<double>& z, double t) {
  check_t(t, "heat_euclid");
  double n = static_cast<double>(z.size());
  double z2 = 0.0;
  for (double zi : z) z2 += zi * zi;
  return std::exp(-0.5 * n * std::log(2.0 * M_PI * t) - z2 / (2.0 * t));
}

double dt_heat_euclid(double z, double u, int l) {
  check_t(u, "dt_heat_euclid");
  if (l < 0 || 2 * l > kMaxHermiteDegree)
    throw capability_error("dt_heat_euclid: derivative order out of range");
  double w = heat_euclid({z}, u);
  return std::pow(4.0 * u, -l) * hermite(2 * l, z / std::sqrt(2.0 * u)) * w;
}

double dt_heat_euclid_nd(const std::vector<double>& z, double u, int m) {
  check_t(u, "dt_heat_euclid_nd");
  int n = static_cast<int>(z.size());
  double w = heat_euclid(z, u);
  double su = std::sqrt(2.0 * u);
  double sum = 0.0;
  for (const MultiIndex& r : multiindices_of_degree(n, m)) {
    double term = multinomial(r);
    for (int i = 0; i < n; ++i) term *= hermite(2 * r[i], z[i] / su);
    sum += term;
  }
  return sum * w / std::pow(4.0 * u, m);
}

double mehler_ou(const std::vector<double>& x, const std::vector<double>& y, double t) {
  check_dims(x, y, "mehler_ou");
  check_t(t, "mehler_ou");
  double om = one_minus_e2t(t);
  double e = std::exp(-t);
  double quad = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double d = y[i] - e * x[i];
    quad += d * d;
  }
  double n = static_cast<double>(x.size());
  return std::exp(-quad / om - 0.5 * n * std::log(om));
}

double invgauss_heat_log(const std::vector<double>& x, const std::vector<double>& y,
                         double t) {
  check_dims(x, y, "invgauss_heat");
  check_t(t, "invgauss_heat");
  double om = one_minus_e2t(t);
  double e = std::exp(-t);
  double quad = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - e * y[i];
    quad += d * d;
  }
  double n = static_cast<double>(x.size());
  return -0.5 * n * std::log(M_PI) - n * t - quad / om - 0.5 * n * std::log(om);
}

double invgauss_heat(const std::vector<double>& x, const std::vector<double>& y,
                     double t) {
  return std::exp(invgauss_heat_log(x, y, t));
}

// ---------------------------------------------------------------------------
// corrected closed-form time derivatives: precomputed coefficient tables
// ---------------------------------------------------------------------------

namespace {

struct SumTerm {
  double coef = 0.0;
  std::vector<int> low;   // Hermite degree in the first slot per dimension
  std::vector<int> high;  // Hermite degree 2 s_i - l_i (+ k_i) per dimension
  int er_pow = 0;         // power of e^{-t}/sqrt(1-e^{-2t})
};

// terms of the quadruple sum for d_t^m of the Mehler kernel:
// coef * prod_i H_{low_i}(x_i) H_{high_i}(arg_i) * (E R)^{er_pow}, including
// the global (-1)^m
std::vector<SumTerm> build_ou_terms(int m, int n) {
  std::vector<SumTerm> out;
  for (const MultiIndex& r : multiindices_of_degree(n, m)) {
    double mult = multinomial(r);
    // enumerate s <= r and l <= s jointly per dimension
    std::vector<MultiIndex> svals = multiindex_range(r);
    for (const MultiIndex& s : svals) {
      std::vector<MultiIndex> lvals = multiindex_range(s);
      double sfac = 1.0;
      for (int i = 0; i < n; ++i) sfac *= static_cast<double>(stirling2(r[i], s[i]));
      if (sfac == 0.0) continue;
      for (const MultiIndex& l : lvals) {
        SumTerm term;
        term.low.resize(n);
        term.high.resize(n);
        double c = mult * sfac;
        int er = 0;
        for (int i = 0; i < n; ++i) {
          c *= ((s[i] + l[i]) % 2 ? -1.0 : 1.0) * binomial(s[i], l[i]) /
               std::pow(2.0, s[i]);
          term.low[i] = l[i];
          term.high[i] = 2 * s[i] - l[i];
          er += 2 * s[i] - l[i];
        }
        term.coef = (m % 2 ? -1.0 : 1.0) * c;
        term.er_pow = er;
        out.push_back(std::move(term));
      }
    }
  }
  return out;
}

const std::vector<SumTerm>& ou_terms(int m, int n) {
  static std::map<std::pair<int, int>, std::vector<SumTerm>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_ou_terms(m, n)).first;
  return it->second;
}

// terms for d_x^k d_t^m of the inverse Gaussian kernel: the binomial-in-j
// outer sum folds the e^{-nt} prefactor's chain contributions
std::vector<SumTerm> build_invgauss_terms(int m, int n, const MultiIndex& k) {
  std::vector<SumTerm> out;
  int kdeg = degree(k);
  for (int j = 0; j <= m; ++j) {
    double outer = binomial(m, j) * std::pow(static_cast<double>(n), m - j);
    for (const MultiIndex& r : multiindices_of_degree(n, j)) {
      double mult = multinomial(r);
      for (const MultiIndex& s : multiindex_range(r)) {
        double sfac = 1.0;
        for (int i = 0; i < n; ++i) sfac *= static_cast<double>(stirling2(r[i], s[i]));
        if (sfac == 0.0) continue;
        for (const MultiIndex& l : multiindex_range(s)) {
          SumTerm term;
          term.low.resize(n);
          term.high.resize(n);
          double c = outer * mult * sfac;
          int er = 0;
          for (int i = 0; i < n; ++i) {
            c *= ((s[i] + l[i]) % 2 ? -1.0 : 1.0) * binomial(s[i], l[i]) /
                 std::pow(2.0, s[i]);
            term.low[i] = l[i];
            term.high[i] = 2 * s[i] - l[i] + k[i];
            er += 2 * s[i] - l[i];
          }
          c *= (kdeg % 2 ? -1.0 : 1.0);
          term.coef = (m % 2 ? -1.0 : 1.0) * c;
          term.er_pow = er;
          out.push_back(std::move(term));
        }
      }
    }
  }
  return out;
}

const std::vector<SumTerm>& invgauss_terms(int m, int n, const MultiIndex& k) {
  static std::map<std::tuple<int, int, MultiIndex>, std::vector<SumTerm>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(m, n, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_invgauss_terms(m, n, k)).first;
  return it->second;
}

}  // namespace

double dt_m_ou(const std::vector<double>& x, const std::vector<double>& y, double t,
               int m) {
  check_dims(x, y, "dt_m_ou");
  check_t(t, "dt_m_ou");
  if (m < 0 || m > kMaxTimeOrder)
    throw capability_error("dt_m_ou: time order exceeds cap " +
                           std::to_string(kMaxTimeOrder));
  int n = static_cast<int>(x.size());
  if (m == 0) return mehler_ou(x, y, t);
  double om = one_minus_e2t(t);
  double e = std::exp(-t);
  double rinv = 1.0 / std::sqrt(om);
  double er = e * rinv;
  std::vector<double> arg(n);
  for (int i = 0; i < n; ++i) arg[i] = (y[i] - e * x[i]) * rinv;
  double sum = 0.0;
  for (const SumTerm& term : ou_terms(m, n)) {
    double v = term.coef * std::pow(er, term.er_pow);
    for (int i = 0; i < n; ++i)
      v *= hermite(term.low[i], x[i]) * hermite(term.high[i], arg[i]);
    sum += v;
  }
  return sum * mehler_ou(x, y, t);
}

double dxk_dtm_invgauss(const std::vector<double>& x, const std::vector<double>& y,
                        double t, int m, const MultiIndex& k) {
  check_dims(x, y, "dxk_dtm_invgauss");
  check_t(t, "dxk_dtm_invgauss");
  if (k.size() != x.size())
    throw std::invalid_argument("dxk_dtm_invgauss: dim(k) != dim(x)");
  if (m < 0 || m > kMaxTimeOrder)
    throw capability_error("dxk_dtm_invgauss: time order exceeds cap");
  int kdeg = degree(k);
  if (kdeg > kMaxSpaceOrder)
    throw capability_error("dxk_dtm_invgauss: space order exceeds cap");
  int n = static_cast<int>(x.size());
  double om = one_minus_e2t(t);
  double e = std::exp(-t);
  double rinv = 1.0 / std::sqrt(om);
  double er = e * rinv;
  std::vector<double> arg(n);
  double arg2 = 0.0;
  for (int i = 0; i < n; ++i) {
    arg[i] = (x[i] - e * y[i]) * rinv;
    arg2 += arg[i] * arg[i];
  }
  // prefactor e^{-nt} pi^{-n/2} (1-e^{-2t})^{-(n+|k|)/2} e^{-|arg|^2}; the
  // Gaussian belongs to the H~ factors of the displayed formula
  double logpre = -n * t - 0.5 * n * std::log(M_PI) -
                  0.5 * (n + kdeg) * std::log(om) - arg2;
  double pre = std::exp(logpre);
  double sum = 0.0;
  for (const SumTerm& term : invgauss_terms(m, n, k)) {
    double v = term.coef * std::pow(er, term.er_pow);
    for (int i = 0; i < n; ++i)
      v *= hermite(term.low[i], y[i]) * hermite(term.high[i], arg[i]);
    sum += v;
  }
  return pre * sum;
}

// ---------------------------------------------------------------------------
// Poisson subordination
// ---------------------------------------------------------------------------

double poisson_kernel(const std::vector<double>& x, const std::vector<double>& y,
                      double t, OperatorTag tag) {
  check_dims(x, y, "poisson_kernel");
  check_t(t, "poisson_kernel");
  // P_t = pi^{-1/2} int_0^inf e^{-u} u^{-1/2} T_{t^2/4u} du. With u = e^w the
  // integrand decays double-exponentially at both ends (e^{-e^w} for w -> inf,
  // the heat-kernel decay in s = t^2/4u for w -> -inf), so the plain trapezoid
  // rule in w converges spectrally.
  const double w_lo = -80.0, w_hi = 7.0, dw = 0.05;
  double sum = 0.0;
  for (double w = w_lo; w <= w_hi + 1e-12; w += dw) {
    double u = std::exp(w);
    double s = t * t / (4.0 * u);
    double logv = invgauss_heat_log(x, y, s) - u + 0.5 * w;  // du/u^{1/2} = e^{w/2} dw
    if (tag == OperatorTag::A_minus_I) logv += s;  // T^{A-I}_s = e^s T^A_s
    if (logv < -700.0) continue;
    sum += std::exp(logv);
  }
  return sum * dw / std::sqrt(M_PI);
}

double poisson_dtm_dxk(const std::vector<double>& x, const std::vector<double>& y,
                       double t, int m, const MultiIndex& k) {
  check_dims(x, y, "poisson_dtm_dxk");
  check_t(t, "poisson_dtm_dxk");
  if (m + 1 > kMaxHermiteDegree)
    throw capability_error("poisson_dtm_dxk: time order exceeds cap");
  // From P_t = -(1/sqrt(pi)) int_0^inf d_t(e^{-t^2/4s}) T_s ds / sqrt(s):
  //   d_t^m d_x^k P_t = -(1/sqrt(pi)) int d_t^{m+1}(e^{-t^2/4s}) d_x^k T_s ds/sqrt(s)
  // with d_t^{m+1} e^{-t^2/4s} = (-1)^{m+1} (2 sqrt(s))^{-(m+1)}
  //   H_{m+1}(t/(2 sqrt(s))) e^{-t^2/4s}.
  // Log substitution s = e^w; the integrand decays exponentially at both ends.
  const double w_lo = -26.0, w_hi = 7.0, dw = 0.05;
  double sum = 0.0;
  for (double w = w_lo; w <= w_hi + 1e-12; w += dw) {
    double s = std::exp(w);
    double rs = std::sqrt(s);
    double texp = -t * t / (4.0 * s);
    if (texp < -700.0) continue;
    double front = std::pow(-0.5 / rs, m + 1) * hermite(m + 1, t / (2.0 * rs)) *
                   std::exp(texp);
    double kernel = dxk_dtm_invgauss(x, y, s, 0, k);
    sum += front * kernel / rs * s;  // ds = s dw
  }
  return -sum * dw / std::sqrt(M_PI);
}

// ---------------------------------------------------------------------------
// Euclidean Poisson gradient kernel
// ---------------------------------------------------------------------------

double euclid_poisson_grad_kernel(const std::vector<double>& x, double t, int i) {
  check_t(t, "euclid_poisson_grad_kernel");
  int n = static_cast<int>(x.size());
  if (i < 0 || i >= n)
    throw std::invalid_argument("euclid_poisson_grad_kernel: coordinate out of range");
  double cn = -std::exp((0.5 * n + 1.0) * std::log(2.0) -
                        0.5 * (n + 1.0) * std::log(M_PI) +
                        std::lgamma(0.5 * (n + 1.0))) *
              (n + 1.0);
  double x2 = 0.0;
  for (double xi : x) x2 += xi * xi;
  return cn * x[i] * t * t * std::pow(t * t + 2.0 * x2, -0.5 * (n + 3.0));
}

FourierProfileFit poisson_grad_fourier_profile(double t, int grid_points,
                                               double half_width) {
  check_t(t, "poisson_grad_fourier_profile");
  // n = 1, odd kernel: K^(xi) = -i int K(x) sin(xi x) dx; fit the modulus
  // against C |xi| e^{-c t |xi|} by least squares in log space.
  int nx = grid_points;
  double dx = 2.0 * half_width / nx;
  std::vector<double> xs(nx), ks(nx);
  for (int j = 0; j < nx; ++j) {
    xs[j] = -half_width + (j + 0.5) * dx;
    ks[j] = euclid_poisson_grad_kernel({xs[j]}, t, 0);
  }
  std::vector<double> xis, mods;
  for (double xi = 0.25; xi <= 4.0 + 1e-12; xi += 0.25) {
    double s = 0.0;
    for (int j = 0; j < nx; ++j) s += ks[j] * std::sin(xi * xs[j]);
    s *= dx;
    xis.push_back(xi);
    mods.push_back(std::fabs(s));
  }
  // linear fit: log(mod/xi) = log C - c t xi
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int npts = static_cast<int>(xis.size());
  for (int j = 0; j < npts; ++j) {
    double X = t * xis[j];
    double Y = std::log(mods[j] / xis[j]);
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
  }
  double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
  double inter = (sy - slope * sx) / npts;
  FourierProfileFit fit;
  fit.c = -slope;
  for (int j = 0; j < npts; ++j) {
    double model = std::exp(inter + slope * t * xis[j]) * xis[j];
    double rel = std::fabs(model - mods[j]) / mods[j];
    if (rel > fit.rel_spread) fit.rel_spread = rel;
  }
  return fit;
}

}  // namespace iglp
