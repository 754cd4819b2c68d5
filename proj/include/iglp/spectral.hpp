#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "iglp/kernels.hpp"
#include "iglp/multiindex.hpp"
#include "iglp/quadrature.hpp"

namespace iglp {

enum class SemigroupTag { heat_A, poisson_A, poisson_A_minus_I };

inline constexpr int kDegreeCapPerDim = 24;

// Finite spectral representation sum_k c_k H~_k of a (possibly vector-valued)
// function; coefficients are vdim-long per multi-index.
struct HermiteExpansion {
  int n = 1;      // spatial dimension
  int vdim = 1;   // coordinate count of the target space
  std::map<MultiIndex, std::vector<double>> terms;
  // modes whose semigroup eigenvalue degenerated to zero in the last action
  // applied (A - I Poisson with n = 1, k = 0)
  std::set<MultiIndex> flagged_modes;

  std::vector<double> evaluate(const std::vector<double>& x) const;
  double evaluate_scalar(const std::vector<double>& x) const;
  int max_degree() const;
};

// semigroup decay rate of mode k: n+|k| (heat), sqrt(n+|k|) (Poisson of A),
// sqrt(n+|k|-1) (Poisson of A-I)
double semigroup_rate(SemigroupTag tag, int n, const MultiIndex& k);

// c_k = integrate(f H~_k) / ||H~_k||^2 for |k| <= max_degree; the grid must
// carry the inverse Gaussian measure.
HermiteExpansion expand(const std::function<double(const std::vector<double>&)>& f,
                        int n, int max_degree, const SpaceGrid& grid);

HermiteExpansion heat_action(const HermiteExpansion& f, double t);
HermiteExpansion poisson_action(const HermiteExpansion& f, double t, OperatorTag tag);

// Multiplies c_k by lambda^beta e^{-lambda t} (the Weyl derivative of the
// semigroup factor); a zero rate with beta > 0 annihilates the mode.
HermiteExpansion weyl_time_derivative(const HermiteExpansion& f, double t, double beta,
                                      SemigroupTag tag);

// R_i: k -> k + e_i with coefficient -c_k / sqrt(n + |k|).
HermiteExpansion riesz_transform(const HermiteExpansion& f, int i);

// Projection onto the H~_0 mode.
HermiteExpansion e0_projection(const HermiteExpansion& f);

// JSON document {n, m, terms: [{k: [..], c: [..]}]} with fixed field order.
std::string expansion_to_json(const HermiteExpansion& f);
HermiteExpansion expansion_from_json(const std::string& doc);

}  // namespace iglp
