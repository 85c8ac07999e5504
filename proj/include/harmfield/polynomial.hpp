#pragma once

// Multivariate polynomials with exact differentiation.

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <vector>

#include "harmfield/errors.hpp"
#include "harmfield/pseudolin.hpp"

namespace harmfield {

template <typename Scalar>
class Polynomial {
 public:
  using Exponent = std::vector<int>;
  using TermMap = std::map<Exponent, Scalar>;

  explicit Polynomial(int variables = 0) : variables_(variables) {}

  static Polynomial constant(int variables, const Scalar& c) {
    Polynomial p(variables);
    p.add_term(Exponent(variables, 0), c);
    return p;
  }

  static Polynomial variable(int variables, int i) {
    Exponent e(variables, 0);
    e.at(i) = 1;
    Polynomial p(variables);
    p.add_term(e, Scalar(1));
    return p;
  }

  static Polynomial monomial(const Exponent& e, const Scalar& c) {
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  /// Linear form sum_i c_i x_i.
  template <typename Derived>
  static Polynomial linear(const Eigen::MatrixBase<Derived>& c) {
    const int n = static_cast<int>(c.size());
    Polynomial p(n);
    for (int i = 0; i < n; ++i) p += variable(n, i) * Scalar(c(i));
    return p;
  }

  int variables() const { return variables_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int total = 0;
      for (int k : e) total += k;
      d = std::max(d, total);
    }
    return d;
  }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const Exponent& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != variables_)
      throw DimensionMismatch("polynomial term has the wrong number of variables");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  Polynomial derivative(int var) const {
    Polynomial d(variables_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent lowered = e;
      --lowered[var];
      d.add_term(lowered, c * Scalar(e[var]));
    }
    return d;
  }

  template <typename Derived>
  Scalar operator()(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != variables_) throw DimensionMismatch("polynomial evaluated at wrong dimension");
    Scalar acc(0);
    for (const auto& [e, c] : terms_) {
      Scalar term = c;
      for (int i = 0; i < variables_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= Scalar(x(i));
      acc += term;
    }
    return acc;
  }

  /// The polynomial y -> p(M y).
  Polynomial substitute_linear(const Matrix<Scalar>& m) const {
    if (m.rows() != variables_) throw DimensionMismatch("substitution matrix has wrong shape");
    const int out_vars = static_cast<int>(m.cols());
    std::vector<Polynomial> images;
    images.reserve(variables_);
    for (int i = 0; i < variables_; ++i) images.push_back(Polynomial::linear(m.row(i).transpose()));
    Polynomial result(out_vars);
    for (const auto& [e, c] : terms_) {
      Polynomial term = constant(out_vars, c);
      for (int i = 0; i < variables_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= images[i];
      result += term;
    }
    return result;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) {
    check(o);
    Polynomial product(variables_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        Exponent e(variables_);
        for (int i = 0; i < variables_; ++i) e[i] = ea[i] + eb[i];
        product.add_term(e, ca * cb);
      }
    *this = std::move(product);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.variables_ != variables_) throw DimensionMismatch("polynomials in different variables");
  }

  int variables_;
  TermMap terms_;
};

template <typename Scalar>
using PolyVector = std::vector<Polynomial<Scalar>>;

/// <P(x), Q(x)> as a polynomial, for polynomial vectors P, Q.
template <typename Scalar>
Polynomial<Scalar> inner(const PolyVector<Scalar>& a, const PolyVector<Scalar>& b,
                         const Signature& s) {
  if (static_cast<int>(a.size()) != s.size() || static_cast<int>(b.size()) != s.size())
    throw DimensionMismatch("polynomial inner product: length mismatch");
  Polynomial<Scalar> acc(a.empty() ? 0 : a.front().variables());
  for (int i = 0; i < s.size(); ++i) acc += Scalar(s[i]) * (a[i] * b[i]);
  return acc;
}

template <typename Scalar, typename Derived>
Vector<Scalar> evaluate(const PolyVector<Scalar>& v, const Eigen::MatrixBase<Derived>& x) {
  Vector<Scalar> out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i](x);
  return out;
}

}  // namespace harmfield
