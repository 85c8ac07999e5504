#pragma once

// Killing fields on the six unit quadrics of dimension two.

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "harmfield/fields.hpp"
#include "harmfield/harmonic.hpp"
#include "harmfield/quadric.hpp"

namespace harmfield {

/// The Killing field of the matrix
///   [ 0                a           b        ]
///   [ -e1 e2 a         0           c        ]
///   [ -e1 e3 b    -e2 e3 c         0        ]
/// with (e1, e2, e3) the ambient indicators.
struct Killing2D {
  Quadric quadric;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  Killing2D(Quadric m, double a, double b, double c);

  Eigen::Matrix3d matrix() const;
  KillingField field() const;
  bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0; }

  /// Reads (a, b, c) off a skew matrix. Throws NotKilling if it is not skew.
  static Killing2D from_matrix(const Quadric& m, const Eigen::Matrix3d& matrix, double tol = 1e-10);
};

/// lambda = -e1 e2 a^2 - e1 e3 b^2 - e2 e3 c^2, so that A^3 = lambda A.
double lambda_2d(const Killing2D& k);

/// Kernel direction w of the linear extension: A x = eta (w cross x).
Eigen::Vector3d kernel_vector(const Eigen::Matrix3d& a, const Signature& s);

/// Central projection of H^2_1 onto the open cylinder |x| < 1, y^2 + z^2 = 1.
Eigen::Vector3d cylinder_project(const Eigen::Vector3d& x);

/// Inverse of cylinder_project on the open cylinder.
Eigen::Vector3d cylinder_lift(const Eigen::Vector3d& xbar);

/// The Killing field of (a, b, c) on H^2_1 transported to the closed cylinder.
Eigen::Vector3d project_field(const Killing2D& k, const Eigen::Vector3d& xbar);

enum class FixedPointCategory { NoFixedPoints, TwoIdeal, TwoFixed };

const char* to_string(FixedPointCategory c);

struct FixedPointReport {
  FixedPointCategory category = FixedPointCategory::NoFixedPoints;
  double lambda = 0.0;
  /// Points of H^2_1 for TwoFixed, of the boundary circles x = +-1 of the
  /// cylinder for TwoIdeal.
  std::vector<Eigen::Vector3d> points;
  /// Every zero of the projected field on the boundary circles: none for
  /// lambda < 0, the two ideal fixed points for lambda = 0, and four points
  /// (two per circle) for lambda > 0.
  std::vector<Eigen::Vector3d> ideal_points;
};

/// Throws ZeroField for a = b = c = 0 and PreconditionError off H^2_1.
FixedPointReport fixed_points(const Killing2D& k, double tol = 1e-12);

/// Normal form of a Killing field on H^2_1 for the given lambda.
Eigen::Matrix3d normal_form_matrix(double lambda, double tol = 1e-12);

struct NormalFormResult {
  double lambda = 0.0;
  Eigen::Matrix3d normal;
  /// P with P^{-1} A P = normal.
  Eigen::Matrix3d conjugator;
  double conjugation_residual = 0.0;
  double isometry_residual = 0.0;
};

NormalFormResult normal_form(const Killing2D& k, double tol = 1e-12);

/// An ambient isometry P of the quadric with P A P^{-1} = B for two skew
/// matrices with the same lambda. Null kernels are matched through null frames.
std::optional<Eigen::Matrix3d> find_conjugator(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b,
                                               const Signature& s, double tol = 1e-9);

/// The representative with lambda = eps; absent on S^2_0.
std::optional<Killing2D> harmonic_killing_catalog(const Quadric& m);

/// Same quadric and equal lambda. Throws ZeroField for a zero input.
bool killing_congruent(const Killing2D& k1, const Killing2D& k2, double tol = 1e-9);

/// Least-squares (a, b, c) for a field sampled at points; throws NotKilling
/// when the best fit misses by more than tol.
Killing2D fit_killing(const VectorField& field, const std::vector<Eigen::VectorXd>& points,
                      double tol = 1e-10);

struct TwistResult {
  VectorField source;
  /// J sigma on the same quadric.
  VectorField twisted;
  /// J sigma fitted as a Killing field (cgf input).
  std::optional<Killing2D> twisted_killing;
  /// Pole of J sigma (Killing input).
  std::optional<Eigen::Vector3d> twisted_pole;
  /// phi.(J sigma) on the other neutral quadric.
  VectorField pushed;
  Quadric target;
  /// Harmonic parameters of J sigma and of phi.(J sigma).
  std::vector<ParamPair> twisted_params;
  std::vector<ParamPair> pushed_params;
  /// max |J J sigma - sigma| over the samples.
  double round_trip_residual = 0.0;
};

/// Twist correspondence between conformal gradient and Killing fields on a
/// neutral quadric, followed by the canonical anti-isometry.
TwistResult twist_correspondence(const VectorField& field, const SamplingOptions& sampling = {});

/// Canonical anti-isometry from the neutral quadric m onto the other one.
Eigen::Matrix3d neutral_anti_isometry(const Quadric& m);

}  // namespace harmfield
