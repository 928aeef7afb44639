#include "lasertherm/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lts {

void gauss_rule_1d(int order, std::vector<double>& points, std::vector<double>& weights) {
  switch (order) {
    case 1:
      points = {0.0};
      weights = {2.0};
      return;
    case 2: {
      const double p = 1.0 / std::sqrt(3.0);
      points = {-p, p};
      weights = {1.0, 1.0};
      return;
    }
    case 3: {
      const double p = std::sqrt(3.0 / 5.0);
      points = {-p, 0.0, p};
      weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      return;
    }
    default:
      throw std::invalid_argument("unsupported quadrature order " + std::to_string(order) +
                                  " (supported: 1, 2, 3)");
  }
}

QuadratureRule gauss_rule(int order) {
  std::vector<double> p1, w1;
  gauss_rule_1d(order, p1, w1);

  QuadratureRule rule;
  rule.order = order;
  rule.points.reserve(static_cast<size_t>(order) * order * order);
  rule.weights.reserve(rule.points.capacity());
  for (size_t k = 0; k < p1.size(); ++k) {
    for (size_t j = 0; j < p1.size(); ++j) {
      for (size_t i = 0; i < p1.size(); ++i) {
        rule.points.push_back({p1[i], p1[j], p1[k]});
        rule.weights.push_back(w1[i] * w1[j] * w1[k]);
      }
    }
  }
  return rule;
}

}  // namespace lts
