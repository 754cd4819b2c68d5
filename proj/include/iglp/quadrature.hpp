#pragma once

#include <functional>
#include <vector>

#include "iglp/multiindex.hpp"

namespace iglp {

enum class MeasureTag { lebesgue, gauss, inverse_gauss };

// Tensorized Gauss-Hermite grid. Weights fold in the affine Jacobian and the
// measure density, so integrate() is a plain weighted sum.
struct SpaceGrid {
  int dimension = 1;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  MeasureTag measure_tag = MeasureTag::gauss;
};

// 1-D Gauss-Hermite nodes/weights for weight e^{-u^2} (Golub-Welsch values
// via Newton iteration on the recurrence).
void gauss_hermite_rule(int points, std::vector<double>& nodes,
                        std::vector<double>& weights);

// 1-D Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre_rule(int points, std::vector<double>& nodes,
                         std::vector<double>& weights);

SpaceGrid gauss_hermite_grid(int points_per_dim, int dimension,
                             const std::vector<double>& shift, double scale,
                             MeasureTag tag = MeasureTag::gauss);

double integrate(const SpaceGrid& grid,
                 const std::function<double(const std::vector<double>&)>& f);

double lp_norm(const SpaceGrid& grid,
               const std::function<double(const std::vector<double>&)>& f, double p);

// Log grid for int_0^inf F(t) dt/t: uniform trapezoid in u = log t.
struct TimeGrid {
  double t_min = 1e-8;
  double t_max = 64.0;
  int points = 4096;
  std::vector<double> nodes;
  std::vector<double> weights;
};

TimeGrid make_time_grid(double t_min = 1e-8, double t_max = 64.0, int points = 4096);

double time_integral(const TimeGrid& grid, const std::function<double(double)>& F);

double time_lq_norm(const TimeGrid& grid, const std::function<double(double)>& F,
                    double q);

}  // namespace iglp
