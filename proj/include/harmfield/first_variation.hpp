#pragma once

// Numerical first variation of the vertical energy on a coordinate patch.

#include <Eigen/Dense>

#include "harmfield/cgmetric.hpp"
#include "harmfield/fields.hpp"

namespace harmfield {

/// Graph chart over a coordinate box: every ambient coordinate except
/// `solved` is a chart coordinate, and the solved one is recovered from the
/// quadric equation on the branch of the given sign.
struct GraphPatch {
  int solved = 0;
  int branch = 1;
  Eigen::VectorXd center;
  double half_width = 0.1;
  int order = 24;
};

/// Cutoff prod_i (1 - s_i^2)^power in box-normalized coordinates s in [-1,1]^n.
struct Bump {
  int power = 3;
};

struct FirstVariationOptions {
  MetricParams params;
  double dt = 1e-4;
  Bump bump;
  /// Minimum |1 + <sigma_t, sigma_t>| tolerated on the patch.
  double singular_margin = 1e-3;
};

struct FirstVariationResult {
  /// Central difference of E^v(sigma + t rho~) at t = 0 with one Richardson step.
  double numeric = 0.0;
  /// Integral of sign(1 + 2F) omega^{p+1} <tau_{p,q}(sigma), rho~>.
  double analytic = 0.0;
  int nodes = 0;

  double relative_error() const;
};

/// Throws SingularPatch when <sigma + t rho~, sigma + t rho~> comes near -1 on
/// the patch and PreconditionError when the chart leaves the quadric.
FirstVariationResult first_variation(const VectorField& field, const AmbientPolyField& rho,
                                     const GraphPatch& patch,
                                     const FirstVariationOptions& options);

/// Vertical energy of sigma + t rho~ over the patch.
double patch_vertical_energy(const VectorField& field, const AmbientPolyField& rho,
                             const GraphPatch& patch, const FirstVariationOptions& options,
                             double t);

}  // namespace harmfield
