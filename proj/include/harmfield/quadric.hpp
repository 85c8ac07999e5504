#pragma once

// Pseudo-spheres S^n_v(r) and pseudo-hyperbolic spaces H^n_v(r).

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "harmfield/pseudolin.hpp"

namespace harmfield {

enum class QuadricKind { Sphere, Hyperbolic };

/// S^n_v(r) = {Q(x) = r^2} in R^{n+1}_v, or H^n_v(r) = {Q(x) = -r^2} in R^{n+1}_{v+1}.
class Quadric {
 public:
  Quadric(QuadricKind kind, int n, int v, double radius = 1.0);

  static Quadric sphere(int n, int v, double radius = 1.0) {
    return Quadric(QuadricKind::Sphere, n, v, radius);
  }
  static Quadric hyperbolic(int n, int v, double radius = 1.0) {
    return Quadric(QuadricKind::Hyperbolic, n, v, radius);
  }

  QuadricKind kind() const { return kind_; }
  int dim() const { return n_; }
  int index() const { return v_; }
  double radius() const { return radius_; }
  /// Sign of the curvature; the defining equation is <x,x> = epsilon r^2.
  int epsilon() const { return kind_ == QuadricKind::Sphere ? 1 : -1; }
  int ambient_dim() const { return n_ + 1; }
  const Signature& ambient() const { return ambient_; }
  /// Tangent signature: n-v positive and v negative directions.
  Signature tangent_signature() const { return Signature(n_ - v_, v_); }
  bool unit() const { return radius_ == 1.0; }
  /// "S^2_1", "H^3_1(2)", ...
  std::string name() const;

  bool operator==(const Quadric&) const = default;

 private:
  QuadricKind kind_;
  int n_;
  int v_;
  double radius_;
  Signature ambient_;
};

/// The six unit quadrics of dimension two: S^2_0, S^2_1, S^2_2, H^2_0, H^2_1, H^2_2.
std::vector<Quadric> two_dim_quadrics();

bool contains(const Quadric& m, const Eigen::VectorXd& x, double tol = 1e-9);

/// Throws PreconditionError unless m is unit radius and x lies on it.
void require_point(const Quadric& m, const Eigen::VectorXd& x, double tol = 1e-8);

/// w - eps <w,x> x, the tangential part of w at x on the unit quadric.
Eigen::VectorXd tangent_project(const Quadric& m, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& w);

/// An orthonormal basis of T_xM. Appending x (indicator eps) gives an
/// orthonormal basis of the ambient space.
Frame tangent_frame(const Quadric& m, const Eigen::VectorXd& x);

double curvature(const Quadric& m);

/// The coordinate permutation (x_{n+1-v},...,x_{n+1},x_1,...,x_{n-v}) carrying
/// H^n_v anti-isometrically onto S^n_{n-v}.
Eigen::MatrixXd canonical_anti_isometry(int n, int v);

struct SamplingOptions {
  int count = 200;
  std::uint64_t seed = 20240607;
  /// Directions are drawn on the Euclidean unit sphere; those with
  /// |Q(u)| below this bound are rejected before scaling onto the quadric.
  double min_abs_q = 0.1;
};

/// Deterministic pseudo-random points of the unit quadric.
std::vector<Eigen::VectorXd> sample_points(const Quadric& m, const SamplingOptions& options = {});

/// Random tangent vector at x (combination of a tangent frame, unit-normal coefficients).
Eigen::VectorXd random_tangent(const Quadric& m, const Eigen::VectorXd& x, std::uint64_t seed);

/// Random ambient isometry exp(S) for S skew with respect to the ambient form,
/// optionally composed with a reflection of a coordinate.
Eigen::MatrixXd random_ambient_isometry(const Signature& s, std::uint64_t seed, double scale = 0.7);

}  // namespace harmfield
