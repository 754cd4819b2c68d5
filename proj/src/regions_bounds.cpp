#include "iglp/regions_bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "iglp/errors.hpp"
#include "iglp/kernels.hpp"

namespace iglp {

double m_admissibility(const std::vector<double>& x) {
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  if (r2 <= 1.0) return 1.0;
  return 1.0 / r2;
}

bool in_local_region(const std::vector<double>& x, const std::vector<double>& y,
                     double nu) {
  if (x.size() != y.size())
    throw std::invalid_argument("in_local_region: dimension mismatch");
  double d2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    d2 += d * d;
  }
  double n = static_cast<double>(x.size());
  double w = nu * n * std::sqrt(m_admissibility(x));
  return std::sqrt(d2) < w;
}

// ---------------------------------------------------------------------------
// J(z)
// ---------------------------------------------------------------------------

double JRegion::z_norm() const { return eta * std::sqrt(static_cast<double>(n)); }

std::vector<double> JRegion::z() const { return std::vector<double>(n, eta); }

bool JRegion::contains(const std::vector<double>& x) const {
  if (x.size() != static_cast<size_t>(n))
    throw std::invalid_argument("JRegion::contains: dimension mismatch");
  double zn = z_norm();
  double xz = 0.0;
  const double invsq = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) xz += x[i] * invsq;
  double perp2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double p = x[i] - xz * invsq;
    perp2 += p * p;
  }
  return std::sqrt(perp2) < 1.0 && std::fabs(xz) > 4.0 * zn / 3.0 &&
         std::fabs(xz) < 1.5 * zn;
}

std::vector<double> JRegion::sample(Rng& rng) const {
  double zn = z_norm();
  double xz = rng.uniform(4.0 * zn / 3.0, 1.5 * zn);
  const double invsq = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> x(n, xz * invsq);
  if (n > 1) {
    // rejection-sample the orthogonal offset in the unit ball of z^perp
    while (true) {
      std::vector<double> p(n);
      double pz = 0.0;
      for (int i = 0; i < n; ++i) {
        p[i] = rng.uniform(-1.0, 1.0);
        pz += p[i] * invsq;
      }
      double norm2 = 0.0;
      for (int i = 0; i < n; ++i) {
        p[i] -= pz * invsq;
        norm2 += p[i] * p[i];
      }
      if (norm2 < 1.0) {
        for (int i = 0; i < n; ++i) x[i] += p[i];
        break;
      }
    }
  }
  return x;
}

double log_int_exp_square(double a, double b) {
  std::vector<double> u, w;
  gauss_legendre_rule(64, u, w);
  double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double peak = std::max(a * a, b * b);
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    double x = mid + half * u[i];
    s += w[i] * std::exp(x * x - peak);
  }
  return peak + std::log(half * s);
}

double JRegion::log_measure() const {
  double zn = z_norm();
  // gamma_{-1} factorizes: pi^{n/2} e^{|x|^2} = pi^{1/2} e^{x_z^2} times the
  // orthogonal Gaussian-growth factors
  double lm = 0.5 * n * std::log(M_PI) + log_int_exp_square(4.0 * zn / 3.0, 1.5 * zn);
  if (n > 1) {
    // e^{|x_perp|^2} mass of the unit ball in n-1 dims (n <= 3 supported)
    if (n == 2) {
      lm += std::log(2.9253035883701401);  // int_{-1}^{1} e^{u^2} du
    } else if (n == 3) {
      lm += std::log(M_PI * (M_E - 1.0));  // 2 pi int_0^1 r e^{r^2} dr
    } else {
      throw capability_error("JRegion::log_measure: n <= 3 supported");
    }
  }
  return lm;
}

// ---------------------------------------------------------------------------
// sampled-inequality verification
// ---------------------------------------------------------------------------

BoundReport verify_bound(const std::string& bound_id, const BoundSampler& sampler,
                         const BoundSide& lhs, const BoundSide& rhs_shape,
                         std::size_t nsamples, Rng& rng) {
  if (nsamples == 0) throw std::invalid_argument("verify_bound: zero samples");
  BoundReport report;
  report.bound_id = bound_id;
  report.samples = nsamples;
  for (std::size_t i = 0; i < nsamples; ++i) {
    BoundSample s = sampler(rng);
    double l = lhs(s);
    double r = rhs_shape(s);
    if (!std::isfinite(l) || !std::isfinite(r)) {
      ++report.nonfinite;
      continue;
    }
    // both sides can underflow to zero far out in the tails; that carries no
    // information about the constant. A vanishing right side with a positive
    // left side, however, is a genuine violation.
    if (r <= 0.0 && l == 0.0) continue;
    if (r <= 0.0) {
      std::ostringstream os;
      os << "verify_bound[" << bound_id << "]: non-finite evaluation at x = (";
      for (size_t d = 0; d < s.x.size(); ++d) os << (d ? ", " : "") << s.x[d];
      os << "), y = (";
      for (size_t d = 0; d < s.y.size(); ++d) os << (d ? ", " : "") << s.y[d];
      os << "), t = " << s.t;
      throw evaluation_error(os.str());
    }
    double ratio = l / r;
    if (ratio > report.fitted_constant) {
      report.fitted_constant = ratio;
      report.max_ratio_location = s;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// concrete bound problems
// ---------------------------------------------------------------------------

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double vi : v) s += vi * vi;
  return s;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<double> gaussian_point(Rng& rng, int n, double sigma) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = sigma * rng.normal();
  return x;
}

MultiIndex resolve_k(const BoundParams& p) {
  return p.k.empty() ? MultiIndex(p.n, 0) : p.k;
}

// L^q(dt/t) norm of t^{m+|k|/2} d_x^k d_t^m T_t^A(x, y)
double rmk(const BoundParams& p, const MultiIndex& k, double extra_half_k,
           const std::vector<double>& x, const std::vector<double>& y) {
  double pw = p.m + extra_half_k;
  return time_lq_norm(p.tgrid, [&](double t) {
    return std::pow(t, pw) * dxk_dtm_invgauss(x, y, t, p.m, k);
  }, p.q);
}

}  // namespace

BoundProblem make_bound_problem(const std::string& bound_id, const BoundParams& p) {
  BoundProblem prob;
  MultiIndex k = resolve_k(p);
  int kdeg = degree(k);
  int n = p.n;

  if (bound_id == "AcotDeriv") {
    prob.sampler = [n](Rng& rng) {
      BoundSample s;
      s.x = gaussian_point(rng, n, 1.5);
      s.y = gaussian_point(rng, n, 1.5);
      s.t = rng.log_uniform(1e-3, 10.0);
      return s;
    };
    prob.lhs = [p, k, kdeg](const BoundSample& s) {
      return std::fabs(std::pow(s.t, p.m + 0.5 * kdeg) *
                       dxk_dtm_invgauss(s.x, s.y, s.t, p.m, k));
    };
    prob.rhs = [p, n](const BoundSample& s) {
      double om = -std::expm1(-2.0 * s.t);
      double e = std::exp(-s.t);
      double quad = 0.0;
      for (int i = 0; i < n; ++i) {
        double d = s.x[i] - e * s.y[i];
        quad += d * d;
      }
      return std::exp(-0.5 * s.t - 0.5 * n * std::log(om) +
                      0.5 * (p.eta - p.delta) * (norm2(s.y) - norm2(s.x)) -
                      p.delta * quad / om);
    };
    return prob;
  }

  if (bound_id == "A2") {
    int branch = p.a2_branch;
    prob.sampler = [n, branch](Rng& rng) {
      // global region sampling, stratified by the sign of <x,y>
      for (int tries = 0; tries < 100000; ++tries) {
        BoundSample s;
        s.x = gaussian_point(rng, n, 2.0);
        s.y = gaussian_point(rng, n, 2.0);
        if (in_local_region(s.x, s.y, 1.0)) continue;
        double ip = 0.0;
        for (int i = 0; i < n; ++i) ip += s.x[i] * s.y[i];
        if ((branch == 0) != (ip <= 0.0)) continue;
        return s;
      }
      throw evaluation_error("A2 sampler: region rejection failed");
    };
    prob.lhs = [p, k, kdeg](const BoundSample& s) {
      return rmk(p, k, 0.5 * kdeg, s.x, s.y);
    };
    prob.rhs = [p, n, branch](const BoundSample& s) {
      double x2 = norm2(s.x), y2 = norm2(s.y);
      if (branch == 0)
        return std::exp(-0.5 * (p.eta + p.delta) * x2 + 0.5 * (p.eta - p.delta) * y2);
      std::vector<double> sum(s.x.size());
      for (size_t i = 0; i < s.x.size(); ++i) sum[i] = s.x[i] + s.y[i];
      double sp = std::sqrt(norm2(sum));
      double dm = dist(s.x, s.y);
      return std::pow(sp, n) *
             std::exp(0.5 * p.eta * (y2 - x2) - 0.5 * p.delta * sp * dm);
    };
    return prob;
  }

  if (bound_id == "b" || bound_id == "c") {
    double nu = (p.nu > 0.0) ? p.nu : 2.0;
    prob.sampler = [n, nu](Rng& rng) {
      BoundSample s;
      s.x = gaussian_point(rng, n, 1.5);
      double w = nu * n * std::sqrt(m_admissibility(s.x));
      double r = rng.log_uniform(1e-3 * w, 0.999 * w);
      std::vector<double> dir(n);
      double dn = 0.0;
      do {
        dn = 0.0;
        for (int i = 0; i < n; ++i) {
          dir[i] = rng.normal();
          dn += dir[i] * dir[i];
        }
      } while (dn == 0.0);
      dn = std::sqrt(dn);
      s.y = s.x;
      for (int i = 0; i < n; ++i) s.y[i] += r * dir[i] / dn;
      return s;
    };
    if (bound_id == "b") {
      prob.lhs = [p, k, kdeg](const BoundSample& s) {
        return rmk(p, k, 0.5 * kdeg, s.x, s.y);
      };
      prob.rhs = [n](const BoundSample& s) {
        return std::pow(dist(s.x, s.y), -static_cast<double>(n));
      };
    } else {
      MultiIndex kg = k;
      ++kg[0];  // gradient variant: one extra x-derivative, time power unchanged
      prob.lhs = [p, kg, kdeg](const BoundSample& s) {
        return rmk(p, kg, 0.5 * kdeg, s.x, s.y);
      };
      prob.rhs = [n](const BoundSample& s) {
        return std::pow(dist(s.x, s.y), -static_cast<double>(n) - 1.0);
      };
    }
    return prob;
  }

  if (bound_id == "diferencia") {
    double nu = (p.nu > 0.0) ? p.nu : 1.0;
    prob.sampler = [n, nu](Rng& rng) {
      BoundSample s;
      s.x = gaussian_point(rng, n, 1.5);
      double w = nu * n * std::sqrt(m_admissibility(s.x));
      double r = rng.log_uniform(1e-3 * w, 0.999 * w);
      std::vector<double> dir(n);
      double dn = 0.0;
      do {
        dn = 0.0;
        for (int i = 0; i < n; ++i) {
          dir[i] = rng.normal();
          dn += dir[i] * dir[i];
        }
      } while (dn == 0.0);
      dn = std::sqrt(dn);
      s.y = s.x;
      for (int i = 0; i < n; ++i) s.y[i] += r * dir[i] / dn;
      return s;
    };
    prob.lhs = [p, n](const BoundSample& s) {
      std::vector<double> z(s.x.size());
      for (size_t i = 0; i < s.x.size(); ++i) z[i] = s.x[i] - s.y[i];
      MultiIndex k0(n, 0);
      return time_lq_norm(p.tgrid, [&](double t) {
        return t * (dt_heat_euclid_nd(z, t, 1) - dxk_dtm_invgauss(s.x, s.y, t, 1, k0));
      }, p.q);
    };
    prob.rhs = [n](const BoundSample& s) {
      return std::sqrt(1.0 + std::sqrt(norm2(s.x))) *
             std::pow(dist(s.x, s.y), -(n - 0.5));
    };
    return prob;
  }

  throw std::invalid_argument("make_bound_problem: unknown bound id '" + bound_id + "'");
}

}  // namespace iglp
