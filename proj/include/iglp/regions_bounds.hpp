#pragma once

#include <functional>
#include <string>
#include <vector>

#include "iglp/multiindex.hpp"
#include "iglp/quadrature.hpp"
#include "iglp/rng.hpp"

namespace iglp {

// m(x) = min{1, |x|^{-2}}, m(0) = 1; calibrates the local region width.
double m_admissibility(const std::vector<double>& x);

// local region N_nu = {(x,y): |x - y| < nu n sqrt(m(x))}, strict inequality
bool in_local_region(const std::vector<double>& x, const std::vector<double>& y,
                     double nu);

// Counterexample slab J(z) around z = (eta, ..., eta):
// |x_perp| < 1, 4|z|/3 < |x_z| < 3|z|/2.
struct JRegion {
  double eta = 3.0;
  int n = 1;

  double z_norm() const;
  std::vector<double> z() const;
  bool contains(const std::vector<double>& x) const;
  // uniform sample over the positive-x_z side of the slab
  std::vector<double> sample(Rng& rng) const;
  // log of the gamma_{-1} measure of the positive-side slab, by quadrature
  double log_measure() const;
};

// log of int_a^b e^{x^2} dx, stable for large endpoints; used for
// gamma_{-1} masses of intervals
double log_int_exp_square(double a, double b);

struct BoundSample {
  std::vector<double> x;
  std::vector<double> y;
  double t = 0.0;  // used by bounds quantified over t
};

struct BoundReport {
  std::string bound_id;
  std::size_t samples = 0;
  double fitted_constant = 0.0;  // max sampled lhs/rhs
  BoundSample max_ratio_location;
  std::size_t violations_at_fitted = 0;  // zero by construction
  std::size_t nonfinite = 0;
};

using BoundSampler = std::function<BoundSample(Rng&)>;
using BoundSide = std::function<double(const BoundSample&)>;

BoundReport verify_bound(const std::string& bound_id, const BoundSampler& sampler,
                         const BoundSide& lhs, const BoundSide& rhs_shape,
                         std::size_t nsamples, Rng& rng);

// Parameters shared by the concrete kernel estimates below.
struct BoundParams {
  int n = 1;
  int m = 1;
  MultiIndex k;          // defaults to zero multi-index
  double q = 2.0;
  double eta = 0.9;
  double delta = 0.6;
  double nu = 1.0;       // region scale where applicable
  int a2_branch = 0;     // 0: <x,y> <= 0 branch, 1: <x,y> > 0 branch
  TimeGrid tgrid;        // L^q(dt/t) grid for the time-norm bounds
};

struct BoundProblem {
  BoundSampler sampler;
  BoundSide lhs;
  BoundSide rhs;
};

// bound_id in {AcotDeriv, A2, b, c, diferencia}
BoundProblem make_bound_problem(const std::string& bound_id, const BoundParams& params);

}  // namespace iglp
