#pragma once

// Indefinite linear algebra on pseudo-Euclidean space R^{n+1}_u.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "harmfield/errors.hpp"

namespace harmfield {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Diagonal signature (+,...,+,-,...,-) of a pseudo-Euclidean inner product.
/// Positive indicators always precede negative ones; the index is the number
/// of negative entries.
class Signature {
 public:
  Signature() = default;
  Signature(int positive, int negative) : positive_(positive), negative_(negative) {
    if (positive < 0 || negative < 0 || positive + negative == 0)
      throw PreconditionError("signature needs a non-negative split of a positive dimension");
  }

  /// Builds a signature from an explicit list of indicators, rejecting
  /// anything that is not a run of +1 followed by a run of -1.
  static Signature from_indicators(const std::vector<int>& indicators) {
    int pos = 0;
    int neg = 0;
    for (int e : indicators) {
      if (e == 1) {
        if (neg > 0) throw PreconditionError("signature must list +1 entries before -1 entries");
        ++pos;
      } else if (e == -1) {
        ++neg;
      } else {
        throw PreconditionError("indicator symbols must be +1 or -1");
      }
    }
    return Signature(pos, neg);
  }

  int size() const { return positive_ + negative_; }
  int index() const { return negative_; }
  int positive() const { return positive_; }
  int operator[](int i) const { return i < positive_ ? 1 : -1; }
  int determinant() const { return negative_ % 2 == 0 ? 1 : -1; }

  template <typename Scalar = double>
  Vector<Scalar> diagonal() const {
    Vector<Scalar> d(size());
    for (int i = 0; i < size(); ++i) d(i) = Scalar((*this)[i]);
    return d;
  }

  /// The Gram matrix of the standard basis.
  template <typename Scalar = double>
  Matrix<Scalar> gram() const {
    return diagonal<Scalar>().asDiagonal();
  }

  std::string to_string() const {
    std::string out = "(";
    for (int i = 0; i < size(); ++i) {
      if (i) out += ',';
      out += (*this)[i] > 0 ? '+' : '-';
    }
    return out + ")";
  }

  bool operator==(const Signature&) const = default;

 private:
  int positive_ = 1;
  int negative_ = 0;
};

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& x,
                                const Eigen::MatrixBase<DerivedB>& y, const Signature& s) {
  using Scalar = typename DerivedA::Scalar;
  if (x.size() != s.size() || y.size() != s.size())
    throw DimensionMismatch("inner: vector length does not match signature");
  Scalar acc(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (s[static_cast<int>(i)] > 0)
      acc += x(i) * y(i);
    else
      acc -= x(i) * y(i);
  }
  return acc;
}

/// Q(x) = <x, x>.
template <typename Derived>
typename Derived::Scalar quadratic_form(const Eigen::MatrixBase<Derived>& x, const Signature& s) {
  return inner(x, x, s);
}

/// Entrywise test of a_ij = -e_i e_j a_ji.
template <typename Derived>
bool is_skew(const Eigen::MatrixBase<Derived>& a, const Signature& s, double tol) {
  using std::abs;
  if (a.rows() != a.cols() || a.rows() != s.size()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const int sign = s[static_cast<int>(i)] * s[static_cast<int>(j)];
      if (abs(a(i, j) + typename Derived::Scalar(sign) * a(j, i)) > tol) return false;
    }
  return true;
}

/// Pseudo-length <A,A> = sum_i e_i <A e_i, A e_i> on V* (x) V.
template <typename Derived>
typename Derived::Scalar skew_norm(const Eigen::MatrixBase<Derived>& a, const Signature& s) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols() || a.rows() != s.size())
    throw DimensionMismatch("skew_norm: matrix does not match signature");
  Scalar acc(0);
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < a.rows(); ++j)
      acc += Scalar(s[static_cast<int>(i)] * s[static_cast<int>(j)]) * a(j, i) * a(j, i);
  return acc;
}

/// A linear map of V that is skew-adjoint for the pseudo-Euclidean form.
template <typename Scalar = double>
class SkewMatrix {
 public:
  SkewMatrix(Matrix<Scalar> entries, Signature signature, double tol = 1e-12)
      : entries_(std::move(entries)), signature_(signature) {
    if (!is_skew(entries_, signature_, tol))
      throw PreconditionError("matrix is not skew-adjoint for signature " + signature_.to_string());
  }

  const Matrix<Scalar>& matrix() const { return entries_; }
  const Signature& signature() const { return signature_; }
  Scalar pseudo_length() const { return skew_norm(entries_, signature_); }

  /// Odd powers of a skew map stay skew.
  SkewMatrix cube() const {
    return SkewMatrix(entries_ * entries_ * entries_, signature_, kUnchecked);
  }

 private:
  static constexpr double kUnchecked = 1e300;
  Matrix<Scalar> entries_;
  Signature signature_;
};

/// Orthonormal family with its indicator symbols <E_i, E_i> = +-1.
struct Frame {
  std::vector<Eigen::VectorXd> vectors;
  std::vector<int> indicators;

  int size() const { return static_cast<int>(vectors.size()); }
  /// Vectors as the columns of a matrix.
  Eigen::MatrixXd matrix() const;
};

/// Largest deviation of the Gram matrix of `frame` from diag(indicators).
double frame_residual(const Frame& frame, const Signature& s);

/// Pivoted Gram-Schmidt for an indefinite form: at each step the remaining
/// candidate of largest |<v,v>| (after projection) is normalized. Stops after
/// `rank` vectors when given, otherwise after using every input.
///
/// Throws NullPivot when every remaining candidate is (numerically) null.
Frame orthonormalize(const std::vector<Eigen::VectorXd>& basis, const Signature& s,
                     std::optional<int> rank = std::nullopt, double null_threshold = 1e-8);

template <typename Derived>
typename Derived::Scalar isometry_residual(const Eigen::MatrixBase<Derived>& p, const Signature& dom,
                                           const Signature& cod, int sign) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  if (p.rows() != cod.size() || p.cols() != dom.size())
    throw DimensionMismatch("isometry test: matrix shape does not match signatures");
  const Matrix<Scalar> pulled = p.transpose() * cod.gram<Scalar>() * p;
  const Matrix<Scalar> target = Scalar(sign) * dom.gram<Scalar>();
  return (pulled - target).cwiseAbs().maxCoeff();
}

/// <Px, Py>_cod = <x, y>_dom for all x, y.
template <typename Derived>
bool is_isometry(const Eigen::MatrixBase<Derived>& p, const Signature& dom, const Signature& cod,
                 double tol) {
  return p.rows() == p.cols() && isometry_residual(p, dom, cod, +1) <= tol;
}

/// <Px, Py>_cod = -<x, y>_dom for all x, y.
template <typename Derived>
bool is_anti_isometry(const Eigen::MatrixBase<Derived>& p, const Signature& dom,
                      const Signature& cod, double tol) {
  return p.rows() == p.cols() && isometry_residual(p, dom, cod, -1) <= tol;
}

}  // namespace harmfield
