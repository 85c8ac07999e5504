#include "harmfield/harmonic.hpp"

#include <algorithm>
#include <cmath>

namespace harmfield {

EulerLagrangeResult tau_from_terms(const SectionTerms& t, const MetricParams& params) {
  const double p = params.p;
  const double q = params.q;
  const double lift = 1.0 + 2.0 * t.F;
  EulerLagrangeResult r;
  r.T_p = lift * t.rough_laplacian + 2.0 * p * t.cov_along_grad_F;
  r.phi = p * t.nabla_sigma_sq - p * q * t.grad_F_sq - q * lift * t.laplacian_F;
  r.tau = r.T_p - r.phi * t.sigma;
  return r;
}

EulerLagrangeResult tau_pq(const VectorField& field, const Eigen::VectorXd& x,
                           const MetricParams& params, Route route) {
  return tau_from_terms(section_terms(field, x, route), params);
}

HarmonicityReport is_pq_harmonic(const VectorField& field, const MetricParams& params,
                                 const std::vector<Eigen::VectorXd>& points, double tol,
                                 Route route) {
  HarmonicityReport report;
  for (const auto& x : points) {
    const EulerLagrangeResult r = tau_pq(field, x, params, route);
    report.max_residual = std::max(report.max_residual, r.tau.cwiseAbs().maxCoeff());
  }
  report.samples = static_cast<int>(points.size());
  report.harmonic = report.max_residual <= tol;
  return report;
}

HarmonicityReport is_pq_harmonic(const VectorField& field, const MetricParams& params,
                                 const SamplingOptions& sampling, double tol, Route route) {
  return is_pq_harmonic(field, params, sample_points(quadric_of(field), sampling), tol, route);
}

std::optional<double> preharmonic_lambda(const KillingField& k, double tol) {
  const Eigen::MatrixXd& a = k.matrix();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw ZeroField("preharmonic_lambda: zero Killing field");
  const Eigen::MatrixXd cube = a * a * a;
  const double lambda = (cube.array() * a.array()).sum() / a.squaredNorm();
  const double residual = (cube - lambda * a).cwiseAbs().maxCoeff();
  if (residual > tol * std::max(1.0, scale * scale * scale)) return std::nullopt;
  return lambda;
}

PreharmonicData<double> spinnaker(const VectorField& field, double tol) {
  const Quadric& m = quadric_of(field);
  if (const auto* f = std::get_if<ConformalGradientField>(&field))
    return cgf_data<double>(m.dim(), m.epsilon(), f->mu());
  if (const auto* k = std::get_if<KillingField>(&field)) {
    const auto lambda = preharmonic_lambda(*k, tol);
    if (!lambda) throw NotPreharmonic("Killing field has no lambda with A^3 = lambda A");
    return killing_data<double>(m.dim(), m.epsilon(), *lambda, k->pseudo_length());
  }
  throw PreconditionError("spinnaker data is only known for cgf and Killing fields");
}

namespace {

// Solutions of a q + b = 0 and c q + d = 0 simultaneously, where "any" means
// every value solves both.
struct LinearPair {
  bool any = false;
  std::optional<Rational> value;
};

LinearPair solve_two_linear(const Rational& a, const Rational& b, const Rational& c,
                            const Rational& d) {
  LinearPair out;
  if (a == 0 && c == 0) {
    out.any = (b == 0 && d == 0);
    return out;
  }
  const Rational v = a != 0 ? Rational(-b / a) : Rational(-d / c);
  if (a * v + b == 0 && c * v + d == 0) out.value = v;
  return out;
}

}  // namespace

std::vector<ParamPair> solve_metric_params(const PreharmonicData<Rational>& d) {
  if (d.zeta1 == 0 && d.delta1 == 0)
    throw PreconditionError("F is constant for this data; use the constant-length reduction");
  std::vector<ParamPair> out;

  // q = 0: the F^2 coefficient vanishes and the rest is linear in p.
  {
    const LinearPair p = solve_two_linear(d.delta0 + 2 * d.zeta0, d.nu,
                                          d.delta1 + 2 * d.zeta1 - 2 * d.nu, 2 * d.nu);
    if (p.any) throw PreconditionError("every (p, 0) solves the harmonicity polynomial");
    if (p.value) out.emplace_back(*p.value, Rational(0));
  }

  // q != 0: the F^2 coefficient forces delta1 + p zeta1 = 0.
  if (d.zeta1 != 0) {
    const Rational p = -d.delta1 / d.zeta1;
    const LinearPair q = solve_two_linear(d.delta0, p * d.delta0 + 2 * p * d.zeta0 + d.nu,
                                          d.delta1 + 2 * d.delta0 + 2 * p * d.zeta0,
                                          p * d.delta1 + 2 * p * d.zeta1 + 2 * (1 - p) * d.nu);
    if (q.any) throw PreconditionError("a whole line of (p, q) solves the harmonicity polynomial");
    if (q.value && *q.value != 0) out.emplace_back(p, *q.value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ParamPair> solve_metric_params(const PreharmonicData<double>& d) {
  return solve_metric_params(PreharmonicData<Rational>{rationalize(d.nu), rationalize(d.zeta0),
                                                       rationalize(d.zeta1), rationalize(d.delta0),
                                                       rationalize(d.delta1)});
}

std::vector<ParamPair> classify_cgf(int n, const Rational& mu) {
  if (n < 2) throw PreconditionError("classify_cgf needs n >= 2");
  std::vector<ParamPair> out;
  if (n > 2 && mu == Rational(1, n - 2)) out.emplace_back(Rational(n + 1), Rational(2 - n));
  if (mu == -1) {
    out.emplace_back(Rational(n + 1), Rational(1 + n - n * n, n));
    if (n > 2) out.emplace_back(Rational(-1, n - 2), Rational(0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ParamPair> killing_harmonic_condition_2d(int eps, double lambda, double tol) {
  if (std::abs(lambda - eps) > tol) return std::nullopt;
  return ParamPair{Rational(3), Rational(-1, 2)};
}

std::array<double, 3> general_killing_condition(int n, int eps, double lambda, double a_norm,
                                                const MetricParams& params) {
  const double p = params.p;
  const double q = params.q;
  const double e = eps;
  return {e * (n - 1) - 2.0 * p * lambda - (p + q) * a_norm,
          e * (n - 1 + (n + 1) * q) - p * q * lambda - q * a_norm,
          e * (n + 1 - p) * q};
}

ConstantLengthReport constant_length_check(const VectorField& field, double k,
                                           const MetricParams& params,
                                           const std::vector<Eigen::VectorXd>& samples,
                                           double tol) {
  if (std::abs(1.0 + k) <= 1e-12)
    throw PreconditionError("k = -1 is covered by tau_pq: T_p vanishes identically there");
  ConstantLengthReport report;
  const Signature& s = quadric_of(field).ambient();
  for (const auto& x : samples) {
    const SectionTerms t = section_terms(field, x);
    const double len = inner(t.sigma, t.sigma, s);
    if (std::abs(len - k) > tol * std::max(1.0, std::abs(k)))
      throw NotConstantLength("<sigma, sigma> differs from the declared constant");
    const Eigen::VectorXd reduced =
        (1.0 + k) * t.rough_laplacian - params.p * t.nabla_sigma_sq * t.sigma;
    report.max_residual = std::max(report.max_residual, reduced.cwiseAbs().maxCoeff());
    const Eigen::VectorXd tau = tau_from_terms(t, params).tau;
    report.tau_agreement = std::max(report.tau_agreement, (tau - reduced).cwiseAbs().maxCoeff());
  }
  report.holds = report.max_residual <= tol;
  return report;
}

double weitzenbock_residual(const VectorField& field, const Eigen::VectorXd& x) {
  const SectionTerms t = section_terms(field, x, Route::Generic);
  const double lhs = inner(t.rough_laplacian, t.sigma, quadric_of(field).ambient());
  return std::abs(lhs - t.nabla_sigma_sq - t.laplacian_F);
}

}  // namespace harmfield
