#pragma once

#include <vector>

namespace hlcu {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);
// Gauss-Hermite rule for the standard normal weight: sum w_i f(x_i) ~ E[f(Z)].
QuadratureRule gauss_hermite_normal(int n);

}  // namespace hlcu
