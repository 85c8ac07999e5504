#pragma once

// The Euler-Lagrange operator tau_{p,q} and the algebra of preharmonic fields.

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "harmfield/cgmetric.hpp"
#include "harmfield/fields.hpp"
#include "harmfield/quadric.hpp"
#include "harmfield/rational.hpp"

namespace harmfield {

struct EulerLagrangeResult {
  /// (1 + 2F) nabla* nabla sigma + 2p nabla_{grad F} sigma
  Eigen::VectorXd T_p;
  /// p <nabla sigma, nabla sigma> - pq g(grad F, grad F) - q (1 + 2F) Delta F
  double phi = 0.0;
  /// T_p - phi sigma
  Eigen::VectorXd tau;
};

/// Defined at every point, including where <sigma, sigma> = -1.
EulerLagrangeResult tau_pq(const VectorField& field, const Eigen::VectorXd& x,
                           const MetricParams& params, Route route = Route::Auto);

EulerLagrangeResult tau_from_terms(const SectionTerms& t, const MetricParams& params);

struct HarmonicityReport {
  bool harmonic = false;
  /// max over samples of ||tau||_inf
  double max_residual = 0.0;
  int samples = 0;
};

inline constexpr double kClosedFormTol = 1e-9;
inline constexpr double kGenericTol = 1e-6;

HarmonicityReport is_pq_harmonic(const VectorField& field, const MetricParams& params,
                                 const SamplingOptions& sampling = {}, double tol = kClosedFormTol,
                                 Route route = Route::Auto);

HarmonicityReport is_pq_harmonic(const VectorField& field, const MetricParams& params,
                                 const std::vector<Eigen::VectorXd>& points, double tol,
                                 Route route = Route::Auto);

/// lambda with A^3 = lambda A, if one exists. Throws ZeroField for A = 0.
std::optional<double> preharmonic_lambda(const KillingField& k, double tol = 1e-9);

/// nabla* nabla sigma = nu sigma, nabla_{grad F} sigma = zeta sigma and
/// Delta F, with zeta and Delta F affine in F.
template <typename Scalar>
struct PreharmonicData {
  Scalar nu{};
  /// zeta = zeta0 + zeta1 F
  Scalar zeta0{};
  Scalar zeta1{};
  /// Delta F = delta0 + delta1 F
  Scalar delta0{};
  Scalar delta1{};
};

template <typename Scalar>
PreharmonicData<Scalar> cgf_data(int n, int eps, const Scalar& mu) {
  const Scalar e(eps);
  return {e, e * mu, Scalar(-2) * e, -e * Scalar(n) * mu, Scalar(2) * e * Scalar(n + 1)};
}

/// a_norm = <A, A>.
template <typename Scalar>
PreharmonicData<Scalar> killing_data(int n, int eps, const Scalar& lambda, const Scalar& a_norm) {
  const Scalar e(eps);
  return {e * Scalar(n - 1), -lambda, Scalar(-2) * e, -a_norm, Scalar(2) * e * Scalar(n + 1)};
}

/// Throws NotPreharmonic for a Killing field without lambda and
/// PreconditionError for polynomial fields.
PreharmonicData<double> spinnaker(const VectorField& field, double tol = 1e-9);

/// Coefficients of F^0, F^1, F^2 in
/// (p + q + 2qF) Delta F + 2p (1 + qF) zeta + (1 + 2(1 - p) F) nu.
template <typename Scalar>
std::array<Scalar, 3> harmonicity_polynomial(const PreharmonicData<Scalar>& d, const Scalar& p,
                                             const Scalar& q) {
  const Scalar one(1), two(2);
  std::array<Scalar, 3> c;
  c[0] = (p + q) * d.delta0 + two * p * d.zeta0 + d.nu;
  c[1] = (p + q) * d.delta1 + two * q * d.delta0 + two * p * d.zeta1 + two * p * q * d.zeta0 +
         two * (one - p) * d.nu;
  c[2] = two * q * (d.delta1 + p * d.zeta1);
  return c;
}

using ParamPair = std::pair<Rational, Rational>;

/// All (p, q) annihilating the harmonicity polynomial, in exact arithmetic,
/// sorted. Throws PreconditionError when F is forced constant or the
/// solution set is not finite.
std::vector<ParamPair> solve_metric_params(const PreharmonicData<Rational>& data);

/// Rationalizes the coefficients first.
std::vector<ParamPair> solve_metric_params(const PreharmonicData<double>& data);

/// Closed-form classification of harmonic conformal gradient fields.
std::vector<ParamPair> classify_cgf(int n, const Rational& mu);

/// (3, -1/2) when lambda = eps.
std::optional<ParamPair> killing_harmonic_condition_2d(int eps, double lambda, double tol = 1e-12);

/// Coefficients of (2F)^0, (2F)^1, (2F)^2 of the harmonicity condition of a
/// preharmonic Killing field in dimension n.
std::array<double, 3> general_killing_condition(int n, int eps, double lambda, double a_norm,
                                                const MetricParams& params);

struct ConstantLengthReport {
  bool holds = false;
  /// max || (1 + k) nabla* nabla sigma - p <nabla sigma, nabla sigma> sigma ||
  double max_residual = 0.0;
  /// max || tau - reduced || (the two must agree when F is constant)
  double tau_agreement = 0.0;
};

/// Throws NotConstantLength when <sigma, sigma> deviates from k at a sample
/// and PreconditionError for k = -1 (handled by tau_pq directly).
ConstantLengthReport constant_length_check(const VectorField& field, double k,
                                           const MetricParams& params,
                                           const std::vector<Eigen::VectorXd>& samples,
                                           double tol = 1e-9);

/// |<nabla* nabla sigma, sigma> - <nabla sigma, nabla sigma> - Delta F| via the generic engine.
double weitzenbock_residual(const VectorField& field, const Eigen::VectorXd& x);

}  // namespace harmfield
