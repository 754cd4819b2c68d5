#pragma once

#include <vector>

#include "iglp/multiindex.hpp"

namespace iglp {

enum class OperatorTag { A, A_minus_I };

inline constexpr int kMaxTimeOrder = 8;
inline constexpr int kMaxSpaceOrder = 6;

// Evaluation request for the kernel routines. time_order holds integer m;
// fractional orders are served by the spectral module.
struct KernelQuery {
  std::vector<double> x;
  std::vector<double> y;
  double t = 1.0;
  int time_order = 0;
  MultiIndex space_order;
};

// Classical heat kernel W_t(z) = (2 pi t)^{-n/2} e^{-|z|^2 / 2t}.
double heat_euclid(const std::vector<double>& z, double t);

// d^l/du^l W_u(z) in one dimension: (4u)^{-l} H_{2l}(z / sqrt(2u)) W_u(z).
double dt_heat_euclid(double z, double u, int l);

// n-dimensional m-th time derivative via the multinomial expansion.
double dt_heat_euclid_nd(const std::vector<double>& z, double u, int m);

// Ornstein-Uhlenbeck (Mehler) kernel
// T_t(x,y) = e^{-|y - e^{-t}x|^2/(1-e^{-2t})} / (1-e^{-2t})^{n/2}.
double mehler_ou(const std::vector<double>& x, const std::vector<double>& y, double t);

// Inverse Gaussian heat kernel
// T_t(x,y) = pi^{-n/2} e^{-nt} e^{-|x - e^{-t}y|^2/(1-e^{-2t})} (1-e^{-2t})^{-n/2}.
double invgauss_heat(const std::vector<double>& x, const std::vector<double>& y,
                     double t);
double invgauss_heat_log(const std::vector<double>& x, const std::vector<double>& y,
                         double t);

// m-th time derivative of the Mehler kernel via the corrected closed form
// (Stirling/binomial quadruple sum).
double dt_m_ou(const std::vector<double>& x, const std::vector<double>& y, double t,
               int m);

// Mixed derivative d_x^k d_t^m of the inverse Gaussian heat kernel.
double dxk_dtm_invgauss(const std::vector<double>& x, const std::vector<double>& y,
                        double t, int m, const MultiIndex& k);

// Subordinated Poisson kernel P_t = pi^{-1/2} int_0^inf e^{-s} s^{-1/2}
// T_{t^2/4s} ds for the A or A - I semigroup.
double poisson_kernel(const std::vector<double>& x, const std::vector<double>& y,
                      double t, OperatorTag tag);

// d_t^m d_x^k P_t^A(x,y) by differentiating under the subordination integral.
double poisson_dtm_dxk(const std::vector<double>& x, const std::vector<double>& y,
                       double t, int m, const MultiIndex& k);

// Euclidean Poisson gradient convolution kernel
// K_t^i(x) = c_n x_i t^2 (t^2 + 2|x|^2)^{-(n+3)/2}.
double euclid_poisson_grad_kernel(const std::vector<double>& x, double t, int i);

// Fits |K^(f.t.)| against C |xi| e^{-c t |xi|} on a symmetric grid (n = 1).
struct FourierProfileFit {
  double c = 0.0;          // fitted decay rate
  double rel_spread = 0.0; // max relative deviation from the fitted profile
};
FourierProfileFit poisson_grad_fourier_profile(double t, int grid_points = 4096,
                                               double half_width = 40.0);

}  // namespace iglp
