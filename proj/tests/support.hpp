#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "harmfield/pseudolin.hpp"

namespace testing_support {

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// eta K for a random antisymmetric K: skew for the signature.
inline Eigen::MatrixXd random_skew(const harmfield::Signature& s, std::uint64_t seed,
                                   double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int d = s.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      k(i, j) = scale * normal(rng);
      k(j, i) = -k(i, j);
    }
  return s.gram() * k;
}

inline Eigen::VectorXd random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace testing_support

#include "harmfield/polynomial.hpp"

namespace testing_support {

/// Dense random polynomial map R^dim -> R^dim of total degree <= degree.
inline harmfield::PolyVector<double> random_poly_map(int dim, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  harmfield::PolyVector<double> out;
  for (int c = 0; c < dim; ++c) {
    harmfield::Polynomial<double> p(dim);
    std::vector<int> e(dim, 0);
    // Enumerate exponent vectors of total degree <= degree.
    while (true) {
      int total = 0;
      for (int k : e) total += k;
      if (total <= degree) p.add_term(e, coef(rng));
      int i = 0;
      while (i < dim && ++e[i] > degree) e[i++] = 0;
      if (i == dim) break;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace testing_support
