#pragma once

// Vector fields on unit hyperquadrics and their covariant derivatives.
//
// Every field is evaluated as an ambient-vector-valued map. Covariant
// derivatives follow the Gauss formula: the ambient directional derivative
// projected back to T_xM.

#include <Eigen/Dense>

#include <variant>
#include <vector>

#include "harmfield/polynomial.hpp"
#include "harmfield/quadric.hpp"

namespace harmfield {

/// sigma = grad alpha for alpha(x) = <x, a>; equivalently sigma(x) = a - eps alpha(x) x.
class ConformalGradientField {
 public:
  ConformalGradientField(Quadric quadric, Eigen::VectorXd pole);

  const Quadric& quadric() const { return quadric_; }
  const Eigen::VectorXd& pole() const { return pole_; }
  /// mu = <a, a>.
  double mu() const { return inner(pole_, pole_, quadric_.ambient()); }
  double alpha(const Eigen::VectorXd& x) const { return inner(x, pole_, quadric_.ambient()); }

 private:
  Quadric quadric_;
  Eigen::VectorXd pole_;
};

/// Restriction of a skew-adjoint ambient map A (its linear extension).
class KillingField {
 public:
  KillingField(Quadric quadric, Eigen::MatrixXd matrix, double skew_tol = 1e-10);

  const Quadric& quadric() const { return quadric_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  /// <A, A> over an orthonormal basis of the ambient space.
  double pseudo_length() const { return skew_norm(matrix_, quadric_.ambient()); }

 private:
  Quadric quadric_;
  Eigen::MatrixXd matrix_;
};

/// Value, Jacobian and Hessian of an ambient polynomial map at one point.
struct Jet {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  /// hessian[i](j, k) = d^2 V_i / dx_j dx_k.
  std::vector<Eigen::MatrixXd> hessian;

  /// D^2 V [X, Y].
  Eigen::VectorXd second(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

/// A field given by n+1 polynomial components in the ambient coordinates.
/// Only its restriction to the quadric matters; it must be tangent there.
class AmbientPolyField {
 public:
  AmbientPolyField(Quadric quadric, PolyVector<double> components);

  const Quadric& quadric() const { return quadric_; }
  const PolyVector<double>& components() const { return components_; }
  Eigen::VectorXd value(const Eigen::VectorXd& x) const { return evaluate(components_, x); }
  Jet jet(const Eigen::VectorXd& x) const;
  /// max |<V(x), x>| over the given points.
  double tangency_residual(const std::vector<Eigen::VectorXd>& points) const;

 private:
  Quadric quadric_;
  PolyVector<double> components_;
  std::vector<PolyVector<double>> jacobian_;
  std::vector<std::vector<PolyVector<double>>> hessian_;
};

using VectorField = std::variant<ConformalGradientField, KillingField, AmbientPolyField>;

const Quadric& quadric_of(const VectorField& field);

/// Exact polynomial form of any field.
AmbientPolyField to_poly(const VectorField& field);

/// Projects an arbitrary ambient polynomial map onto the quadric's tangent
/// spaces: W - eps <W, y> y.
AmbientPolyField tangential_poly_field(const Quadric& m, const PolyVector<double>& ambient);

Eigen::VectorXd evaluate(const VectorField& field, const Eigen::VectorXd& x);

Eigen::VectorXd cgf_eval(const ConformalGradientField& f, const Eigen::VectorXd& x);
/// -eps alpha(x) X.
Eigen::VectorXd cgf_cov_deriv(const ConformalGradientField& f, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& tangent);
/// -eps <sigma, X> Y.
Eigen::VectorXd cgf_second_cov_deriv(const ConformalGradientField& f, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& along_x, const Eigen::VectorXd& along_y);

Eigen::VectorXd killing_eval(const KillingField& k, const Eigen::VectorXd& x);
/// A X - eps <A X, x> x.
Eigen::VectorXd killing_cov_deriv(const KillingField& k, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& tangent);

/// Tangential projection of the ambient derivative D_X V at x.
Eigen::VectorXd generic_cov_deriv(const AmbientPolyField& v, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& tangent);

/// nabla^2_{X,Y} sigma, extending Y by its projected constant
/// Y~(y) = Y - eps <Y, y> y.
Eigen::VectorXd second_cov_deriv(const AmbientPolyField& v, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& along_x, const Eigen::VectorXd& along_y);

/// -sum_i e_i nabla^2_{E_i,E_i} sigma over tangent_frame(x).
Eigen::VectorXd rough_laplacian(const AmbientPolyField& v, const Eigen::VectorXd& x);

/// Covariant derivative through the closed form for cgf/Killing input and the
/// polynomial engine otherwise.
Eigen::VectorXd cov_deriv(const VectorField& field, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& tangent);

enum class Route { Auto, ClosedForm, Generic };

/// Pointwise ingredients of the Euler-Lagrange operator, with F = <sigma,sigma>/2.
struct SectionTerms {
  Eigen::VectorXd sigma;
  double F = 0.0;
  Eigen::VectorXd grad_F;
  /// g(grad F, grad F)
  double grad_F_sq = 0.0;
  /// <nabla sigma, nabla sigma> = sum_i e_i <nabla_{E_i} sigma, nabla_{E_i} sigma>
  double nabla_sigma_sq = 0.0;
  /// Delta F = -div grad F
  double laplacian_F = 0.0;
  /// nabla* nabla sigma
  Eigen::VectorXd rough_laplacian;
  /// nabla_{grad F} sigma
  Eigen::VectorXd cov_along_grad_F;
};

/// Route::Auto uses closed forms for cgf and Killing input. Route::ClosedForm
/// on a polynomial field falls back to the generic engine.
SectionTerms section_terms(const VectorField& field, const Eigen::VectorXd& x,
                           Route route = Route::Auto);

Eigen::VectorXd grad_F(const VectorField& field, const Eigen::VectorXd& x,
                       Route route = Route::Auto);
double laplacian_F(const VectorField& field, const Eigen::VectorXd& x, Route route = Route::Auto);

/// Killing field of A^3.
KillingField hat_field(const KillingField& k);

/// phi.sigma = dphi o sigma o phi^{-1} for the linear map P taking the field's
/// quadric onto `target` (isometry or anti-isometry of the ambient forms).
VectorField push_forward(const VectorField& field, const Eigen::MatrixXd& p, const Quadric& target);

/// Para-Kaehler structure of a neutral surface at a point: JA = A on the null
/// line L1, JB = -B on L2, extended by zero on the normal direction.
struct ParaKahlerOperator {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd null_plus;
  Eigen::VectorXd null_minus;

  Eigen::VectorXd operator()(const Eigen::VectorXd& v) const { return matrix * v; }
};

bool is_neutral_surface(const Quadric& m);

ParaKahlerOperator para_kahler_J(const Quadric& m, const Eigen::VectorXd& x);

/// Orientation sign making J(x) X = kappa * eta (x cross X) agree with para_kahler_J.
int para_kahler_sign(const Quadric& m);

/// J applied pointwise. Conformal gradient fields map to Killing fields and
/// back; polynomial fields stay polynomial.
VectorField j_twist(const VectorField& field);

struct ClosedConformalReport {
  bool closed_conformal = false;
  double max_residual = 0.0;
  /// Fitted psi(x) with nabla_X sigma = psi X, one per sample.
  std::vector<double> psi;
};

ClosedConformalReport is_closed_conformal(const VectorField& field,
                                          const std::vector<Eigen::VectorXd>& samples,
                                          double tol = 1e-8);

struct KillingReport {
  bool killing = false;
  double max_residual = 0.0;
};

KillingReport is_killing(const VectorField& field, const std::vector<Eigen::VectorXd>& samples,
                         double tol = 1e-8);

}  // namespace harmfield
