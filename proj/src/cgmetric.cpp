#include "harmfield/cgmetric.hpp"

#include <cmath>

namespace harmfield {

double omega(double e_len, double tol) {
  const double d = 1.0 + e_len;
  if (std::abs(d) <= tol) throw Singular("omega is singular where <e,e> = -1");
  return 1.0 / std::abs(d);
}

double h_pq(const Quadric& m, const MetricParams& params, const TangentBundleVector& a,
            const TangentBundleVector& b) {
  if ((a.base - b.base).cwiseAbs().maxCoeff() > 0.0 ||
      (a.fiber - b.fiber).cwiseAbs().maxCoeff() > 0.0)
    throw PreconditionError("h_pq: vectors live at different points of TM");
  const Signature& s = m.ambient();
  const Eigen::VectorXd& e = a.fiber;
  const double w = std::pow(omega(inner(e, e, s)), params.p);
  const double vert = inner(a.vertical, b.vertical, s) +
                      params.q * inner(a.vertical, e, s) * inner(e, b.vertical, s);
  return inner(a.horizontal, b.horizontal, s) + w * vert;
}

const char* to_string(SignatureClass c) {
  switch (c) {
    case SignatureClass::SasakiLike:
      return "SasakiLike";
    case SignatureClass::Degenerate:
      return "Degenerate";
    case SignatureClass::IndexShifted:
      return "IndexShifted";
  }
  return "?";
}

SignatureClass signature_class(const MetricParams& params, double e_len, double tol) {
  const double q = params.q;
  if (q == 0.0) return SignatureClass::SasakiLike;
  // The radial vertical direction has length 1 + q<e,e> relative to Sasaki.
  const double radial = 1.0 + q * e_len;
  if (std::abs(radial) <= tol * std::max(1.0, std::abs(q))) return SignatureClass::Degenerate;
  return radial > 0 ? SignatureClass::SasakiLike : SignatureClass::IndexShifted;
}

double vertical_energy_density(const VectorField& field, const Eigen::VectorXd& x,
                               const MetricParams& params, Route route) {
  const SectionTerms t = section_terms(field, x, route);
  const double w = std::pow(omega(2.0 * t.F), params.p);
  return 0.5 * w * (t.nabla_sigma_sq + params.q * t.grad_F_sq);
}

double energy_density(const VectorField& field, const Eigen::VectorXd& x,
                      const MetricParams& params, Route route) {
  return 0.5 * quadric_of(field).dim() + vertical_energy_density(field, x, params, route);
}

}  // namespace harmfield
