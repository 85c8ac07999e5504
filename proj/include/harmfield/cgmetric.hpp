#pragma once

// The two-parameter family h_{p,q} of metrics on the tangent bundle.

#include <Eigen/Dense>

#include "harmfield/fields.hpp"
#include "harmfield/quadric.hpp"

namespace harmfield {

struct MetricParams {
  double p = 0.0;
  double q = 0.0;
};

/// A tangent vector to TM at the fiber point e over x, split into its
/// horizontal part dpi(A) and vertical part K(A).
struct TangentBundleVector {
  Eigen::VectorXd base;
  Eigen::VectorXd fiber;
  Eigen::VectorXd horizontal;
  Eigen::VectorXd vertical;
};

/// 1 / |1 + <e,e>|. Throws Singular on the sphere bundle <e,e> = -1.
double omega(double e_len, double tol = 1e-12);

/// g(dpi A, dpi B) + omega^p (<KA, KB> + q <KA, e><e, KB>).
double h_pq(const Quadric& m, const MetricParams& params, const TangentBundleVector& a,
            const TangentBundleVector& b);

enum class SignatureClass { SasakiLike, Degenerate, IndexShifted };

const char* to_string(SignatureClass c);

/// Where the fiber point e (through <e,e>) sits relative to the degeneracy
/// locus <e,e> = -1/q.
SignatureClass signature_class(const MetricParams& params, double e_len, double tol = 1e-12);

/// 1/2 omega^p(sigma) (<nabla sigma, nabla sigma> + q g(grad F, grad F)).
double vertical_energy_density(const VectorField& field, const Eigen::VectorXd& x,
                               const MetricParams& params, Route route = Route::Auto);

/// n/2 plus the vertical part.
double energy_density(const VectorField& field, const Eigen::VectorXd& x,
                      const MetricParams& params, Route route = Route::Auto);

}  // namespace harmfield
