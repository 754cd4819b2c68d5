#pragma once

#include <cstdint>
#include <vector>

#include "iglp/multiindex.hpp"

namespace iglp {

inline constexpr int kMaxHermiteDegree = 64;

// Physicists' Hermite polynomial H_k(u), three-term recurrence.
double hermite(int k, double u);

// Split representation value * exp(log_scale), used above degree 30 where
// 2^k k! growth and the Gaussian factor fight each other.
struct HermiteValue {
  double value = 0.0;
  double log_scale = 0.0;
  double reconstruct() const;
};

// e^{-u^2} H_k(u) in one dimension, split representation.
HermiteValue hermite_tilde_1d(int k, double u);

// H~_k(x) = e^{-|x|^2} prod_i H_{k_i}(x_i).
double hermite_tilde(const MultiIndex& k, const std::vector<double>& x);
HermiteValue hermite_tilde_split(const MultiIndex& k, const std::vector<double>& x);

// ||H~_k||_{L^2(gamma_{-1})} = prod_i sqrt(pi 2^{k_i} k_i!), computed in logs.
double hermite_tilde_l2_norm(const MultiIndex& k);
double hermite_tilde_l2_norm_log(const MultiIndex& k);  // log of the above

// Stirling number of the second kind S(N, l), exact up to N = 20.
std::int64_t stirling2(int N, int l);

double log_factorial(int n);
double binomial(int n, int k);
// m! / (r_1! ... r_n!) for |r| = m.
double multinomial(const MultiIndex& r);

}  // namespace iglp
