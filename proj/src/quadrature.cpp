#include "qtcert/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "qtcert/types.hpp"

namespace qtcert {

QuadratureRule gauss_legendre(int n) {
  if (n < 2) throw ConfigError("quadrature resolution must be at least 2");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th root, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  QuadratureRule rule = gauss_legendre(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

QuadratureRule midpoint_grid(int n, double lo, double hi) {
  if (n < 2) throw ConfigError("quadrature resolution must be at least 2");
  QuadratureRule rule;
  const double h = (hi - lo) / n;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(lo + (i + 0.5) * h);
    rule.weights.push_back(h);
  }
  return rule;
}

QuadratureSpec QuadratureSpec::parse(const std::string& text) {
  const auto sep = text.find('_');
  if (sep == std::string::npos) throw ConfigError("quadrature must look like gauss_64 or grid_200");
  QuadratureSpec spec;
  const std::string kind = text.substr(0, sep);
  if (kind == "gauss") {
    spec.kind = Kind::gauss;
  } else if (kind == "grid") {
    spec.kind = Kind::grid;
  } else {
    throw ConfigError("unknown quadrature kind '" + kind + "'");
  }
  try {
    std::size_t used = 0;
    spec.n = std::stoi(text.substr(sep + 1), &used);
    if (used != text.size() - sep - 1) throw ConfigError("trailing characters");
  } catch (const std::exception&) {
    throw ConfigError("bad quadrature resolution in '" + text + "'");
  }
  if (spec.n < 2) throw ConfigError("quadrature resolution must be at least 2");
  return spec;
}

std::string QuadratureSpec::label() const {
  return (kind == Kind::gauss ? "gauss_" : "grid_") + std::to_string(n);
}

QuadratureRule QuadratureSpec::on(double lo, double hi) const {
  return kind == Kind::gauss ? gauss_legendre(n, lo, hi) : midpoint_grid(n, lo, hi);
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

}  // namespace qtcert
