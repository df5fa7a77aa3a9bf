#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rigidlab {

/// Nodes and weights on [-1, 1]; n nodes integrate degree 2n-1 exactly.
struct QuadratureRule {
  std::vector<double> nodes, weights;
};

inline QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("gauss_legendre: node count out of range [1, 64]");
  }
  QuadratureRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int m = 0; m < n; ++m) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * m + 1) * x * p1 - m * p2) / (m + 1);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

/// Integrates f over [lo, hi] with the given rule.
template <class F>
double quad_integrate(const QuadratureRule& r, double lo, double hi, F&& f) {
  const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s += r.weights[i] * f(c + h * r.nodes[i]);
  }
  return s * h;
}

}  // namespace rigidlab
