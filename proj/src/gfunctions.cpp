#include "iglp/gfunctions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "iglp/errors.hpp"
#include "iglp/kernels.hpp"
#include "iglp/regions_bounds.hpp"
#include "iglp/special_functions.hpp"

namespace iglp {

double lr_norm(const NormSpec& norm, const std::vector<double>& v) {
  if (v.size() != static_cast<size_t>(norm.m))
    throw std::invalid_argument("lr_norm: dimension mismatch");
  if (std::isinf(norm.r)) {
    double mx = 0.0;
    for (double vi : v) mx = std::max(mx, std::fabs(vi));
    return mx;
  }
  if (norm.r < 1.0) throw std::invalid_argument("lr_norm: r must be >= 1");
  double s = 0.0;
  for (double vi : v) {
    double a = std::fabs(vi);
    if (a > 0.0) s += std::exp(norm.r * std::log(a));
  }
  return s > 0.0 ? std::exp(std::log(s) / norm.r) : 0.0;
}

namespace {

struct Mode {
  double rate = 0.0;                // semigroup decay rate lambda
  double hval = 0.0;                // H~_{l+k}(x)
  const std::vector<double>* c = nullptr;
};

void check_spec(const GFunctionSpec& spec, const HermiteExpansion& f) {
  if (!(spec.q > 1.0)) throw std::invalid_argument("g_value: q must be > 1");
  if (!(spec.beta > 0.0)) throw std::invalid_argument("g_value: beta must be > 0");
  if (f.vdim != spec.norm.m)
    throw std::invalid_argument("g_value: expansion vdim does not match NormSpec");
  if (!spec.k.empty() && spec.k.size() != static_cast<size_t>(f.n))
    throw std::invalid_argument("g_value: derivative multi-index dimension mismatch");
}

// spectral evaluation path (full region): exact in k and beta
double g_value_spectral(const GFunctionSpec& spec, const HermiteExpansion& f,
                        const std::vector<double>& x, const TimeGrid& tgrid) {
  MultiIndex k = spec.k.empty() ? MultiIndex(f.n, 0) : spec.k;
  int kdeg = degree(k);
  std::vector<Mode> modes;
  modes.reserve(f.terms.size());
  for (const auto& [l, c] : f.terms) {
    Mode mode;
    mode.rate = semigroup_rate(spec.semigroup_tag, f.n, l);
    MultiIndex lk = l;
    for (int i = 0; i < f.n; ++i) lk[i] += k[i];
    // d_x^k H~_l = (-1)^{|k|} H~_{l+k}
    mode.hval = (kdeg % 2 ? -1.0 : 1.0) * hermite_tilde(lk, x);
    mode.c = &c;
    modes.push_back(mode);
  }
  std::vector<double> vec(f.vdim);
  auto F = [&](double t) {
    for (int j = 0; j < f.vdim; ++j) vec[j] = 0.0;
    for (const Mode& mode : modes) {
      if (mode.rate == 0.0) continue;  // Weyl derivative kills the flat mode
      double mult = std::exp(spec.beta * std::log(mode.rate) - mode.rate * t) * mode.hval;
      for (int j = 0; j < f.vdim; ++j) vec[j] += mult * (*mode.c)[j];
    }
    return std::pow(t, spec.beta + kdeg) * lr_norm(spec.norm, vec);
  };
  return time_lq_norm(tgrid, F, spec.q);
}

// kernel-quadrature path for local/global regions (integer beta only)
double g_value_kernel(const GFunctionSpec& spec, const HermiteExpansion& f,
                      const std::vector<double>& x, const TimeGrid& tgrid) {
  double mint;
  double frac = std::modf(spec.beta, &mint);
  if (frac != 0.0)
    throw capability_error("g_value: local/global regions require integer beta");
  int m = static_cast<int>(mint);
  MultiIndex k = spec.k.empty() ? MultiIndex(f.n, 0) : spec.k;
  if (spec.semigroup_tag == SemigroupTag::poisson_A_minus_I)
    throw capability_error("g_value: no pointwise kernel for the A - I Poisson semigroup");
  bool heat = spec.semigroup_tag == SemigroupTag::heat_A;

  // quadrature grid between the expansion's mass (origin) and x
  std::vector<double> center(f.n);
  for (int i = 0; i < f.n; ++i) center[i] = 0.5 * x[i];
  SpaceGrid ygrid = gauss_hermite_grid(72, f.n, center, 3.0, MeasureTag::lebesgue);

  bool want_local = spec.region == RegionMode::local;
  std::vector<double> vec(f.vdim);
  auto F = [&](double t) {
    for (int j = 0; j < f.vdim; ++j) vec[j] = 0.0;
    for (size_t i = 0; i < ygrid.nodes.size(); ++i) {
      const auto& y = ygrid.nodes[i];
      if (in_local_region(x, y, spec.nu) != want_local) continue;
      double kv = heat ? dxk_dtm_invgauss(x, y, t, m, k)
                       : poisson_dtm_dxk(x, y, t, m, k);
      std::vector<double> fy = f.evaluate(y);
      for (int j = 0; j < f.vdim; ++j) vec[j] += ygrid.weights[i] * kv * fy[j];
    }
    return std::pow(t, spec.beta + degree(k)) * lr_norm(spec.norm, vec);
  };
  return time_lq_norm(tgrid, F, spec.q);
}

}  // namespace

double g_value(const GFunctionSpec& spec, const HermiteExpansion& f,
               const std::vector<double>& x, const TimeGrid& tgrid) {
  check_spec(spec, f);
  if (spec.region == RegionMode::full) return g_value_spectral(spec, f, x, tgrid);
  return g_value_kernel(spec, f, x, tgrid);
}

double g_lp_norm(const GFunctionSpec& spec, const HermiteExpansion& f, double p,
                 const SpaceGrid& sgrid, const TimeGrid& tgrid) {
  if (!(p >= 1.0)) throw std::invalid_argument("g_lp_norm: p must be >= 1");
  return lp_norm(sgrid, [&](const std::vector<double>& x) {
    return g_value(spec, f, x, tgrid);
  }, p);
}

RatioReport ratio_probe(const GFunctionSpec& spec,
                        const std::vector<HermiteExpansion>& corpus, double p,
                        const SpaceGrid& sgrid, const TimeGrid& tgrid) {
  if (corpus.empty()) throw std::invalid_argument("ratio_probe: empty corpus");
  RatioReport report;
  size_t usable = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const HermiteExpansion& f = corpus[i];
    RatioRecord rec;
    rec.member = i;
    double fn = lp_norm(sgrid, [&](const std::vector<double>& x) {
      return lr_norm(spec.norm, f.evaluate(x));
    }, p);
    if (fn <= 0.0) {
      rec.skipped = true;
      report.records.push_back(rec);
      continue;
    }
    double gn = g_lp_norm(spec, f, p, sgrid, tgrid);
    rec.upper = gn / fn;
    rec.lower = gn > 0.0 ? fn / gn : std::numeric_limits<double>::infinity();
    if (rec.upper > report.max_upper) {
      report.max_upper = rec.upper;
      report.worst_upper_member = i;
    }
    if (rec.lower > report.max_lower) {
      report.max_lower = rec.lower;
      report.worst_lower_member = i;
    }
    report.records.push_back(rec);
    ++usable;
  }
  if (usable == 0)
    throw std::invalid_argument("ratio_probe: no usable corpus member after filtering");
  return report;
}

double maximal_value(int m, const MultiIndex& k, const HermiteExpansion& f,
                     const std::vector<double>& x, const TimeGrid& tgrid) {
  if (f.vdim != 1) throw std::invalid_argument("maximal_value: scalar expansions only");
  MultiIndex kk = k.empty() ? MultiIndex(f.n, 0) : k;
  int kdeg = degree(kk);
  std::vector<Mode> modes;
  for (const auto& [l, c] : f.terms) {
    Mode mode;
    mode.rate = static_cast<double>(f.n + degree(l));
    MultiIndex lk = l;
    for (int i = 0; i < f.n; ++i) lk[i] += kk[i];
    mode.hval = (kdeg % 2 ? -1.0 : 1.0) * hermite_tilde(lk, x);
    mode.c = &c;
    modes.push_back(mode);
  }
  double best = 0.0;
  for (double t : tgrid.nodes) {
    double s = 0.0;
    for (const Mode& mode : modes)
      s += std::pow(mode.rate, m) * std::exp(-mode.rate * t) * mode.hval * (*mode.c)[0];
    best = std::max(best, std::pow(t, m + 0.5 * kdeg) * std::fabs(s));
  }
  return best;
}

}  // namespace iglp
