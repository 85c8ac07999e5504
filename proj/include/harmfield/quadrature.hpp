#pragma once

#include <vector>

namespace harmfield {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order on [lo, hi] (Golub-Welsch).
QuadratureRule gauss_legendre(int order, double lo = -1.0, double hi = 1.0);

}  // namespace harmfield
