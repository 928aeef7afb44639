#pragma once

#include <vector>

#include "lasertherm/mesh.hpp"

namespace lts {

/// Tensor-product Gauss-Legendre rule on the bi-unit cube. `points` and
/// `weights` have order^3 entries and the weights sum to 8.
struct QuadratureRule {
  int order = 0;
  std::vector<BiUnitPoint> points;
  std::vector<double> weights;
};

/// One-dimensional Gauss-Legendre abscissae and weights on [-1, 1].
/// Supported orders: 1, 2, 3. Throws std::invalid_argument otherwise.
void gauss_rule_1d(int order, std::vector<double>& points, std::vector<double>& weights);

/// Tensor-product rule of order^3 points, x index fastest. An order-p rule
/// integrates polynomials of per-axis degree <= 2p - 1 exactly.
QuadratureRule gauss_rule(int order);

}  // namespace lts
