#include "harmfield/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "harmfield/errors.hpp"

namespace harmfield {

QuadratureRule gauss_legendre(int order, double lo, double hi) {
  if (order < 1) throw PreconditionError("quadrature order must be positive");
  // Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  QuadratureRule rule;
  for (int i = 0; i < order; ++i) {
    const double v0 = eig.eigenvectors()(0, i);
    rule.nodes.push_back(mid + half * eig.eigenvalues()(i));
    rule.weights.push_back(2.0 * v0 * v0 * half);
  }
  return rule;
}

}  // namespace harmfield
