#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qtcert {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] with n nodes (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// n-point midpoint rule on [lo, hi].
QuadratureRule midpoint_grid(int n, double lo, double hi);

/// Quadrature choice for theta averages: Gauss-Legendre or a uniform grid.
struct QuadratureSpec {
  enum class Kind { gauss, grid } kind = Kind::gauss;
  int n = 64;

  /// Parses "gauss_64" / "grid_200".
  static QuadratureSpec parse(const std::string& text);
  std::string label() const;
  QuadratureRule on(double lo, double hi) const;
};

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace qtcert
