#pragma once

#include <vector>

#include "iglp/multiindex.hpp"
#include "iglp/quadrature.hpp"
#include "iglp/spectral.hpp"

namespace iglp {

// Finite-dimensional l^r norm on R^m (r may be infinity).
struct NormSpec {
  double r = 2.0;
  int m = 1;
};

double lr_norm(const NormSpec& norm, const std::vector<double>& v);

enum class RegionMode { full, local, global };

// Littlewood-Paley g-function parameters: the L^q(dt/t) norm of
// t^{beta+|k|} d_x^k d_t^beta S_t f(x), measured in the l^r norm for
// vector-valued f.
struct GFunctionSpec {
  double beta = 1.0;
  MultiIndex k;
  double q = 2.0;
  SemigroupTag semigroup_tag = SemigroupTag::heat_A;
  NormSpec norm;
  RegionMode region = RegionMode::full;
  double nu = 1.0;
};

double g_value(const GFunctionSpec& spec, const HermiteExpansion& f,
               const std::vector<double>& x, const TimeGrid& tgrid);

double g_lp_norm(const GFunctionSpec& spec, const HermiteExpansion& f, double p,
                 const SpaceGrid& sgrid, const TimeGrid& tgrid);

struct RatioRecord {
  size_t member = 0;
  double upper = 0.0;  // ||g(f)||_p / ||f||_p
  double lower = 0.0;  // ||f||_p / ||g(f)||_p
  bool skipped = false;
};

struct RatioReport {
  double max_upper = 0.0;
  double max_lower = 0.0;
  size_t worst_upper_member = 0;
  size_t worst_lower_member = 0;
  std::vector<RatioRecord> records;
};

RatioReport ratio_probe(const GFunctionSpec& spec,
                        const std::vector<HermiteExpansion>& corpus, double p,
                        const SpaceGrid& sgrid, const TimeGrid& tgrid);

// sup_t |t^{m+|k|/2} d_t^m d_x^k T_t^A f(x)| over the time grid.
double maximal_value(int m, const MultiIndex& k, const HermiteExpansion& f,
                     const std::vector<double>& x, const TimeGrid& tgrid);

}  // namespace iglp
