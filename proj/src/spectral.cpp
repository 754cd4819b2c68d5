#include "iglp/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "iglp/errors.hpp"
#include "iglp/special_functions.hpp"

namespace iglp {

std::vector<double> HermiteExpansion::evaluate(const std::vector<double>& x) const {
  if (x.size() != static_cast<size_t>(n))
    throw std::invalid_argument("HermiteExpansion::evaluate: dimension mismatch");
  std::vector<double> out(vdim, 0.0);
  for (const auto& [k, c] : terms) {
    double h = hermite_tilde(k, x);
    for (int j = 0; j < vdim; ++j) out[j] += c[j] * h;
  }
  return out;
}

double HermiteExpansion::evaluate_scalar(const std::vector<double>& x) const {
  if (vdim != 1)
    throw std::invalid_argument("HermiteExpansion::evaluate_scalar: vector-valued");
  return evaluate(x)[0];
}

int HermiteExpansion::max_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms) d = std::max(d, degree(k));
  return d;
}

double semigroup_rate(SemigroupTag tag, int n, const MultiIndex& k) {
  double lam = n + degree(k);
  switch (tag) {
    case SemigroupTag::heat_A:
      return lam;
    case SemigroupTag::poisson_A:
      return std::sqrt(lam);
    case SemigroupTag::poisson_A_minus_I:
      return std::sqrt(lam - 1.0);
  }
  return lam;
}

HermiteExpansion expand(const std::function<double(const std::vector<double>&)>& f,
                        int n, int max_degree, const SpaceGrid& grid) {
  if (grid.measure_tag != MeasureTag::inverse_gauss)
    throw std::invalid_argument("expand: grid must carry the inverse Gaussian measure");
  if (grid.dimension != n) throw std::invalid_argument("expand: grid dimension mismatch");
  if (max_degree > kDegreeCapPerDim * n)
    throw capability_error("expand: degree exceeds cap");
  // integrability probe: the folded inverse-Gaussian weights grow like
  // e^{|x|^2}, so f must decay at least like e^{-|x|^2/2} (with polynomial
  // slack) for the coefficient quadrature to converge; probe the outer nodes
  double r2max = 0.0;
  for (const auto& node : grid.nodes) {
    double r2 = 0.0;
    for (double v : node) r2 += v * v;
    r2max = std::max(r2max, r2);
  }
  for (const auto& node : grid.nodes) {
    double r2 = 0.0;
    for (double v : node) r2 += v * v;
    if (r2 > 0.8 * r2max) {
      double fv = f(node);
      if (std::fabs(fv) * std::exp(0.5 * r2) > 1e6)
        throw integrability_error("expand: integrand fails the tail decay check");
    }
  }
  HermiteExpansion out;
  out.n = n;
  out.vdim = 1;
  for (const MultiIndex& k : multiindices_up_to_degree(n, max_degree)) {
    double num = integrate(grid, [&](const std::vector<double>& x) {
      return f(x) * hermite_tilde(k, x);
    });
    double norm2 = std::exp(2.0 * hermite_tilde_l2_norm_log(k));
    out.terms[k] = {num / norm2};
  }
  return out;
}

namespace {

HermiteExpansion scaled_copy(const HermiteExpansion& f,
                             const std::function<double(const MultiIndex&)>& mult,
                             std::set<MultiIndex>* flagged = nullptr) {
  HermiteExpansion out;
  out.n = f.n;
  out.vdim = f.vdim;
  for (const auto& [k, c] : f.terms) {
    double m = mult(k);
    std::vector<double> nc(c.size());
    for (size_t j = 0; j < c.size(); ++j) nc[j] = m * c[j];
    out.terms[k] = std::move(nc);
  }
  if (flagged) out.flagged_modes = *flagged;
  return out;
}

}  // namespace

HermiteExpansion heat_action(const HermiteExpansion& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_action: t must be >= 0");
  return scaled_copy(f, [&](const MultiIndex& k) {
    return std::exp(-(f.n + degree(k)) * t);
  });
}

HermiteExpansion poisson_action(const HermiteExpansion& f, double t, OperatorTag tag) {
  if (t < 0.0) throw std::invalid_argument("poisson_action: t must be >= 0");
  std::set<MultiIndex> flagged;
  SemigroupTag stag =
      tag == OperatorTag::A ? SemigroupTag::poisson_A : SemigroupTag::poisson_A_minus_I;
  HermiteExpansion out = scaled_copy(f, [&](const MultiIndex& k) {
    double lam = semigroup_rate(stag, f.n, k);
    if (lam == 0.0) {
      flagged.insert(k);
      return 1.0;  // constant-in-t mode
    }
    return std::exp(-lam * t);
  });
  out.flagged_modes = flagged;
  return out;
}

HermiteExpansion weyl_time_derivative(const HermiteExpansion& f, double t, double beta,
                                      SemigroupTag tag) {
  if (!(beta > 0.0)) throw std::invalid_argument("weyl_time_derivative: beta <= 0");
  if (!(t > 0.0)) throw std::invalid_argument("weyl_time_derivative: t <= 0");
  std::set<MultiIndex> flagged;
  HermiteExpansion out = scaled_copy(f, [&](const MultiIndex& k) {
    double lam = semigroup_rate(tag, f.n, k);
    if (lam == 0.0) {
      flagged.insert(k);
      return 0.0;  // Weyl derivative annihilates the constant mode
    }
    return std::exp(beta * std::log(lam) - lam * t);
  });
  out.flagged_modes = flagged;
  return out;
}

HermiteExpansion riesz_transform(const HermiteExpansion& f, int i) {
  if (i < 0 || i >= f.n)
    throw std::invalid_argument("riesz_transform: coordinate out of range");
  HermiteExpansion out;
  out.n = f.n;
  out.vdim = f.vdim;
  for (const auto& [k, c] : f.terms) {
    MultiIndex kk = k;
    ++kk[i];
    if (kk[i] > kDegreeCapPerDim)
      throw capability_error("riesz_transform: degree cap overflow");
    double m = -1.0 / std::sqrt(static_cast<double>(f.n + degree(k)));
    std::vector<double> nc(c.size());
    for (size_t j = 0; j < c.size(); ++j) nc[j] = m * c[j];
    auto it = out.terms.find(kk);
    if (it == out.terms.end()) {
      out.terms[kk] = std::move(nc);
    } else {
      for (size_t j = 0; j < c.size(); ++j) it->second[j] += nc[j];
    }
  }
  return out;
}

HermiteExpansion e0_projection(const HermiteExpansion& f) {
  HermiteExpansion out;
  out.n = f.n;
  out.vdim = f.vdim;
  MultiIndex zero(f.n, 0);
  auto it = f.terms.find(zero);
  if (it != f.terms.end()) out.terms[zero] = it->second;
  return out;
}

std::string expansion_to_json(const HermiteExpansion& f) {
  nlohmann::ordered_json doc;
  doc["n"] = f.n;
  doc["m"] = f.vdim;
  doc["terms"] = nlohmann::ordered_json::array();
  for (const auto& [k, c] : f.terms) {
    nlohmann::ordered_json term;
    term["k"] = k;
    term["c"] = c;
    doc["terms"].push_back(std::move(term));
  }
  return doc.dump(2);
}

HermiteExpansion expansion_from_json(const std::string& doc) {
  auto j = nlohmann::json::parse(doc);
  HermiteExpansion f;
  f.n = j.at("n").get<int>();
  f.vdim = j.at("m").get<int>();
  for (const auto& term : j.at("terms")) {
    MultiIndex k = term.at("k").get<MultiIndex>();
    std::vector<double> c = term.at("c").get<std::vector<double>>();
    if (k.size() != static_cast<size_t>(f.n) || c.size() != static_cast<size_t>(f.vdim))
      throw std::invalid_argument("expansion_from_json: malformed term");
    f.terms[k] = std::move(c);
  }
  return f;
}

}  // namespace iglp
