#include "iglp/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "iglp/errors.hpp"

namespace iglp {

void gauss_hermite_rule(int points, std::vector<double>& nodes,
                        std::vector<double>& weights) {
  // above ~190 points the Newton initial guesses stop converging and the
  // computed weights collapse; refuse rather than return a broken rule
  if (points < 2 || points > 190)
    throw capability_error("gauss_hermite_rule: points_per_dim must be in [2, 190]");
  const int n = points;
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    // initial guesses, largest root first
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * nodes[1];
    } else {
      z = 2.0 * z - nodes[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // orthonormal Hermite recurrence
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-15 * (1.0 + std::fabs(z))) break;
    }
    nodes[i] = z;
    nodes[n - 1 - i] = -z;
    weights[i] = 2.0 / (pp * pp);
    weights[n - 1 - i] = weights[i];
  }
  // return ascending
  std::vector<double> xr(n), wr(n);
  for (int i = 0; i < n; ++i) {
    xr[i] = nodes[n - 1 - i];
    wr[i] = weights[n - 1 - i];
  }
  nodes = std::move(xr);
  weights = std::move(wr);
}

void gauss_legendre_rule(int points, std::vector<double>& nodes,
                         std::vector<double>& weights) {
  if (points < 2) throw capability_error("gauss_legendre_rule: points must be >= 2");
  nodes.assign(points, 0.0);
  weights.assign(points, 0.0);
  int m = (points + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (points + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < points; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = points * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[points - 1 - i] = z;
    weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[points - 1 - i] = weights[i];
  }
}

SpaceGrid gauss_hermite_grid(int points_per_dim, int dimension,
                             const std::vector<double>& shift, double scale,
                             MeasureTag tag) {
  if (dimension < 1) throw std::invalid_argument("gauss_hermite_grid: dimension < 1");
  if (scale <= 0.0) throw std::invalid_argument("gauss_hermite_grid: scale <= 0");
  if (shift.size() != static_cast<size_t>(dimension))
    throw std::invalid_argument("gauss_hermite_grid: shift dimension mismatch");
  double total = std::pow(static_cast<double>(points_per_dim), dimension);
  if (total > 1e7) throw capability_error("gauss_hermite_grid: node count exceeds 1e7");

  std::vector<double> u, v;
  gauss_hermite_rule(points_per_dim, u, v);

  SpaceGrid grid;
  grid.dimension = dimension;
  grid.measure_tag = tag;
  size_t count = static_cast<size_t>(total);
  grid.nodes.reserve(count);
  grid.weights.reserve(count);
  std::vector<int> idx(dimension, 0);
  const double log_pi = std::log(M_PI);
  while (true) {
    std::vector<double> y(dimension);
    double logw = 0.0;
    double y2 = 0.0, u2 = 0.0;
    for (int d = 0; d < dimension; ++d) {
      double ud = u[idx[d]];
      y[d] = shift[d] + scale * ud;
      logw += std::log(v[idx[d]]) + std::log(scale);
      y2 += y[d] * y[d];
      u2 += ud * ud;
    }
    // weight = jacobian * measure density * e^{|u|^2} (undoing the GH weight)
    switch (tag) {
      case MeasureTag::lebesgue:
        logw += u2;
        break;
      case MeasureTag::gauss:
        logw += u2 - y2;
        break;
      case MeasureTag::inverse_gauss:
        logw += u2 + y2 + 0.5 * dimension * log_pi;
        break;
    }
    grid.nodes.push_back(std::move(y));
    grid.weights.push_back(std::exp(logw));
    int d = dimension - 1;
    for (; d >= 0; --d) {
      if (++idx[d] < points_per_dim) break;
      idx[d] = 0;
    }
    if (d < 0) break;
  }
  return grid;
}

namespace {

// pairwise (cascade) summation for deterministic, low-error reduction
double pairwise_sum(const std::vector<double>& vals, size_t lo, size_t hi) {
  size_t len = hi - lo;
  if (len <= 8) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += vals[i];
    return s;
  }
  size_t mid = lo + len / 2;
  return pairwise_sum(vals, lo, mid) + pairwise_sum(vals, mid, hi);
}

}  // namespace

double integrate(const SpaceGrid& grid,
                 const std::function<double(const std::vector<double>&)>& f) {
  std::vector<double> terms(grid.nodes.size());
  for (size_t i = 0; i < grid.nodes.size(); ++i) {
    double fx = f(grid.nodes[i]);
    if (!std::isfinite(fx)) {
      std::ostringstream os;
      os << "integrate: non-finite integrand at node (";
      for (size_t d = 0; d < grid.nodes[i].size(); ++d)
        os << (d ? ", " : "") << grid.nodes[i][d];
      os << ")";
      throw evaluation_error(os.str());
    }
    terms[i] = grid.weights[i] * fx;
  }
  return pairwise_sum(terms, 0, terms.size());
}

double lp_norm(const SpaceGrid& grid,
               const std::function<double(const std::vector<double>&)>& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  double val = integrate(grid, [&](const std::vector<double>& x) {
    double a = std::fabs(f(x));
    return a == 0.0 ? 0.0 : std::exp(p * std::log(a));
  });
  if (val <= 0.0) return 0.0;
  return std::exp(std::log(val) / p);
}

TimeGrid make_time_grid(double t_min, double t_max, int points) {
  if (!(t_min > 0.0) || !(t_min < t_max))
    throw std::invalid_argument("make_time_grid: need 0 < t_min < t_max");
  if (points < 16) throw std::invalid_argument("make_time_grid: points must be >= 16");
  TimeGrid g;
  g.t_min = t_min;
  g.t_max = t_max;
  g.points = points;
  g.nodes.resize(points);
  g.weights.resize(points);
  double lo = std::log(t_min), hi = std::log(t_max);
  double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    g.nodes[i] = std::exp(lo + i * h);
    g.weights[i] = (i == 0 || i == points - 1) ? 0.5 * h : h;
  }
  return g;
}

double time_integral(const TimeGrid& grid, const std::function<double(double)>& F) {
  std::vector<double> terms(grid.nodes.size());
  for (size_t i = 0; i < grid.nodes.size(); ++i) {
    double v = F(grid.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "time_integral: non-finite integrand at t = " << grid.nodes[i];
      throw evaluation_error(os.str());
    }
    terms[i] = grid.weights[i] * v;
  }
  return pairwise_sum(terms, 0, terms.size());
}

double time_lq_norm(const TimeGrid& grid, const std::function<double(double)>& F,
                    double q) {
  if (q < 1.0) throw std::invalid_argument("time_lq_norm: q must be >= 1");
  double val = time_integral(grid, [&](double t) {
    double a = std::fabs(F(t));
    return a == 0.0 ? 0.0 : std::exp(q * std::log(a));
  });
  if (val <= 0.0) return 0.0;
  return std::exp(std::log(val) / q);
}

}  // namespace iglp
