#pragma once

#include <functional>
#include <vector>

namespace lowrank {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels of `order` points.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order = 16);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace lowrank
