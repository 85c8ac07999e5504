#include "harmfield/fields.hpp"

#include <cmath>
#include <type_traits>

namespace harmfield {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& a) {
  Eigen::Matrix3d m;
  m << 0, -a(2), a(1), a(2), 0, -a(0), -a(1), a(0), 0;
  return m;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

}  // namespace

// ---------------------------------------------------------------------------
// Field types

ConformalGradientField::ConformalGradientField(Quadric quadric, Eigen::VectorXd pole)
    : quadric_(std::move(quadric)), pole_(std::move(pole)) {
  if (!quadric_.unit()) throw PreconditionError("conformal gradient fields live on unit quadrics");
  if (pole_.size() != quadric_.ambient_dim())
    throw DimensionMismatch("pole vector must have dimension n+1");
}

KillingField::KillingField(Quadric quadric, Eigen::MatrixXd matrix, double skew_tol)
    : quadric_(std::move(quadric)), matrix_(std::move(matrix)) {
  if (!quadric_.unit()) throw PreconditionError("Killing fields live on unit quadrics");
  if (matrix_.rows() != quadric_.ambient_dim() || matrix_.cols() != quadric_.ambient_dim())
    throw DimensionMismatch("Killing matrix must be (n+1)x(n+1)");
  if (!is_skew(matrix_, quadric_.ambient(), skew_tol))
    throw PreconditionError("Killing matrix is not skew for " + quadric_.ambient().to_string());
}

Eigen::VectorXd Jet::second(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(hessian.size()));
  for (std::size_t i = 0; i < hessian.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = x.dot(hessian[i] * y);
  return out;
}

AmbientPolyField::AmbientPolyField(Quadric quadric, PolyVector<double> components)
    : quadric_(std::move(quadric)), components_(std::move(components)) {
  const int dim = quadric_.ambient_dim();
  if (static_cast<int>(components_.size()) != dim)
    throw DimensionMismatch("polynomial field needs n+1 components");
  for (const auto& c : components_)
    if (c.variables() != dim) throw DimensionMismatch("component polynomial has wrong arity");

  jacobian_.resize(dim);
  hessian_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    hessian_[i].resize(dim);
    for (int j = 0; j < dim; ++j) {
      jacobian_[i].push_back(components_[i].derivative(j));
      for (int k = 0; k < dim; ++k) hessian_[i][j].push_back(jacobian_[i][j].derivative(k));
    }
  }
}

Jet AmbientPolyField::jet(const Eigen::VectorXd& x) const {
  const int dim = quadric_.ambient_dim();
  Jet out;
  out.value = value(x);
  out.jacobian.resize(dim, dim);
  out.hessian.assign(dim, Eigen::MatrixXd(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      out.jacobian(i, j) = jacobian_[i][j](x);
      for (int k = j; k < dim; ++k) {
        const double h = hessian_[i][j][k](x);
        out.hessian[i](j, k) = h;
        out.hessian[i](k, j) = h;
      }
    }
  return out;
}

double AmbientPolyField::tangency_residual(const std::vector<Eigen::VectorXd>& points) const {
  double worst = 0.0;
  for (const auto& x : points)
    worst = std::max(worst, std::abs(inner(value(x), x, quadric_.ambient())));
  return worst;
}

const Quadric& quadric_of(const VectorField& field) {
  return std::visit([](const auto& f) -> const Quadric& { return f.quadric(); }, field);
}

AmbientPolyField tangential_poly_field(const Quadric& m, const PolyVector<double>& ambient) {
  const int dim = m.ambient_dim();
  PolyVector<double> position;
  for (int i = 0; i < dim; ++i) position.push_back(Polynomial<double>::variable(dim, i));
  const Polynomial<double> normal_part = inner(ambient, position, m.ambient());
  PolyVector<double> out;
  for (int i = 0; i < dim; ++i)
    out.push_back(ambient[i] - double(m.epsilon()) * (normal_part * position[i]));
  return AmbientPolyField(m, std::move(out));
}

AmbientPolyField to_poly(const VectorField& field) {
  return std::visit(
      overloaded{
          [](const ConformalGradientField& f) {
            const int dim = f.quadric().ambient_dim();
            PolyVector<double> constant;
            for (int i = 0; i < dim; ++i)
              constant.push_back(Polynomial<double>::constant(dim, f.pole()(i)));
            return tangential_poly_field(f.quadric(), constant);
          },
          [](const KillingField& k) {
            PolyVector<double> comps;
            for (int i = 0; i < k.quadric().ambient_dim(); ++i)
              comps.push_back(Polynomial<double>::linear(k.matrix().row(i).transpose()));
            return AmbientPolyField(k.quadric(), std::move(comps));
          },
          [](const AmbientPolyField& v) { return v; },
      },
      field);
}

// ---------------------------------------------------------------------------
// Closed forms

Eigen::VectorXd cgf_eval(const ConformalGradientField& f, const Eigen::VectorXd& x) {
  return f.pole() - f.quadric().epsilon() * f.alpha(x) * x;
}

Eigen::VectorXd cgf_cov_deriv(const ConformalGradientField& f, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& tangent) {
  return -f.quadric().epsilon() * f.alpha(x) * tangent;
}

Eigen::VectorXd cgf_second_cov_deriv(const ConformalGradientField& f, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& along_x,
                                     const Eigen::VectorXd& along_y) {
  const double s = inner(cgf_eval(f, x), along_x, f.quadric().ambient());
  return -f.quadric().epsilon() * s * along_y;
}

Eigen::VectorXd killing_eval(const KillingField& k, const Eigen::VectorXd& x) {
  return k.matrix() * x;
}

Eigen::VectorXd killing_cov_deriv(const KillingField& k, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& tangent) {
  const Eigen::VectorXd ax = k.matrix() * tangent;
  return ax - k.quadric().epsilon() * inner(ax, x, k.quadric().ambient()) * x;
}

Eigen::VectorXd evaluate(const VectorField& field, const Eigen::VectorXd& x) {
  return std::visit(overloaded{
                        [&](const ConformalGradientField& f) { return cgf_eval(f, x); },
                        [&](const KillingField& k) { return killing_eval(k, x); },
                        [&](const AmbientPolyField& v) { return v.value(x); },
                    },
                    field);
}

// ---------------------------------------------------------------------------
// Generic engine

Eigen::VectorXd generic_cov_deriv(const AmbientPolyField& v, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& tangent) {
  const Jet jet = v.jet(x);
  return tangent_project(v.quadric(), x, jet.jacobian * tangent);
}

namespace {

// nabla^2_{X,Y} sigma from a jet. Y is extended as Y~(y) = Y - eps <Y,y> y and
// nabla^2_{X,Y} = nabla_X (nabla_{Y~} sigma) - nabla_{nabla_X Y~} sigma.
Eigen::VectorXd second_from_jet(const Quadric& m, const Jet& jet, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& vx, const Eigen::VectorXd& vy) {
  const Signature& s = m.ambient();
  const double eps = m.epsilon();

  // Y~ and its ambient derivative along X, at x.
  const Eigen::VectorXd y_ext = vy - eps * inner(vy, x, s) * x;
  const Eigen::VectorXd dy_ext = -eps * inner(vy, vx, s) * x - eps * inner(vy, x, s) * vx;

  // U(y) = DV(y) Y~(y); W(y) = U - eps <U, y> y is nabla_{Y~} sigma.
  const Eigen::VectorXd u = jet.jacobian * y_ext;
  const Eigen::VectorXd du = jet.second(vx, y_ext) + jet.jacobian * dy_ext;
  const Eigen::VectorXd dw =
      du - eps * (inner(du, x, s) + inner(u, vx, s)) * x - eps * inner(u, x, s) * vx;
  const Eigen::VectorXd outer = tangent_project(m, x, dw);

  const Eigen::VectorXd correction = tangent_project(m, x, dy_ext);
  return outer - tangent_project(m, x, jet.jacobian * correction);
}

}  // namespace

Eigen::VectorXd second_cov_deriv(const AmbientPolyField& v, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& along_x, const Eigen::VectorXd& along_y) {
  return second_from_jet(v.quadric(), v.jet(x), x, along_x, along_y);
}

Eigen::VectorXd rough_laplacian(const AmbientPolyField& v, const Eigen::VectorXd& x) {
  const Frame frame = tangent_frame(v.quadric(), x);
  const Jet jet = v.jet(x);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.size());
  for (int i = 0; i < frame.size(); ++i)
    acc -= frame.indicators[i] *
           second_from_jet(v.quadric(), jet, x, frame.vectors[i], frame.vectors[i]);
  return acc;
}

Eigen::VectorXd cov_deriv(const VectorField& field, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& tangent) {
  return std::visit(
      overloaded{
          [&](const ConformalGradientField& f) { return cgf_cov_deriv(f, x, tangent); },
          [&](const KillingField& k) { return killing_cov_deriv(k, x, tangent); },
          [&](const AmbientPolyField& v) { return generic_cov_deriv(v, x, tangent); },
      },
      field);
}

namespace {

SectionTerms generic_terms(const AmbientPolyField& v, const Eigen::VectorXd& x) {
  const Quadric& m = v.quadric();
  const Signature& s = m.ambient();
  const double eps = m.epsilon();
  const Frame frame = tangent_frame(m, x);
  const Jet jet = v.jet(x);

  SectionTerms t;
  t.sigma = jet.value;
  t.F = 0.5 * inner(t.sigma, t.sigma, s);
  t.grad_F = Eigen::VectorXd::Zero(x.size());
  t.rough_laplacian = Eigen::VectorXd::Zero(x.size());

  // Ambient extension F~ = <V,V>/2: dF~(x) enters the Hessian through the
  // second fundamental form.
  const double dF_normal = inner(Eigen::VectorXd(jet.jacobian * x), t.sigma, s);

  for (int i = 0; i < frame.size(); ++i) {
    const Eigen::VectorXd& e = frame.vectors[i];
    const double ei = frame.indicators[i];
    const Eigen::VectorXd dv = jet.jacobian * e;
    const Eigen::VectorXd nabla = tangent_project(m, x, dv);
    t.nabla_sigma_sq += ei * inner(nabla, nabla, s);
    t.grad_F += ei * inner(nabla, t.sigma, s) * e;
    t.rough_laplacian -= ei * second_from_jet(m, jet, x, e, e);
    const double hess = inner(Eigen::VectorXd(jet.second(e, e)), t.sigma, s) + inner(dv, dv, s) -
                        eps * dF_normal * inner(e, e, s);
    t.laplacian_F -= ei * hess;
  }
  t.grad_F_sq = inner(t.grad_F, t.grad_F, s);
  t.cov_along_grad_F = tangent_project(m, x, jet.jacobian * t.grad_F);
  return t;
}

SectionTerms cgf_terms(const ConformalGradientField& f, const Eigen::VectorXd& x) {
  const Quadric& m = f.quadric();
  const double eps = m.epsilon();
  const double n = m.dim();
  const double alpha = f.alpha(x);
  SectionTerms t;
  t.sigma = cgf_eval(f, x);
  t.F = 0.5 * (f.mu() - eps * alpha * alpha);
  t.grad_F = -eps * alpha * t.sigma;
  t.grad_F_sq = alpha * alpha * 2.0 * t.F;
  t.nabla_sigma_sq = n * alpha * alpha;
  t.laplacian_F = 2.0 * eps * (1.0 + n) * t.F - eps * n * f.mu();
  t.rough_laplacian = eps * t.sigma;
  t.cov_along_grad_F = alpha * alpha * t.sigma;
  return t;
}

SectionTerms killing_terms(const KillingField& k, const Eigen::VectorXd& x) {
  const Quadric& m = k.quadric();
  const Signature& s = m.ambient();
  const double eps = m.epsilon();
  const double n = m.dim();
  const Eigen::MatrixXd& a = k.matrix();
  const double norm_a = k.pseudo_length();
  SectionTerms t;
  t.sigma = a * x;
  t.F = 0.5 * inner(t.sigma, t.sigma, s);
  t.grad_F = -(a * t.sigma) - 2.0 * eps * t.F * x;
  t.grad_F_sq = inner(t.grad_F, t.grad_F, s);
  t.nabla_sigma_sq = norm_a - 4.0 * eps * t.F;
  t.laplacian_F = 2.0 * eps * (n + 1.0) * t.F - norm_a;
  t.rough_laplacian = eps * (n - 1.0) * t.sigma;
  t.cov_along_grad_F = -(a * (a * t.sigma)) - 2.0 * eps * t.F * t.sigma;
  return t;
}

}  // namespace

SectionTerms section_terms(const VectorField& field, const Eigen::VectorXd& x, Route route) {
  require_point(quadric_of(field), x);
  if (route == Route::Generic) return generic_terms(to_poly(field), x);
  return std::visit(overloaded{
                        [&](const ConformalGradientField& f) { return cgf_terms(f, x); },
                        [&](const KillingField& k) { return killing_terms(k, x); },
                        [&](const AmbientPolyField& v) { return generic_terms(v, x); },
                    },
                    field);
}

Eigen::VectorXd grad_F(const VectorField& field, const Eigen::VectorXd& x, Route route) {
  return section_terms(field, x, route).grad_F;
}

double laplacian_F(const VectorField& field, const Eigen::VectorXd& x, Route route) {
  return section_terms(field, x, route).laplacian_F;
}

// ---------------------------------------------------------------------------
// Transformations

KillingField hat_field(const KillingField& k) {
  const Eigen::MatrixXd& a = k.matrix();
  return KillingField(k.quadric(), a * a * a, 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff()));
}

VectorField push_forward(const VectorField& field, const Eigen::MatrixXd& p, const Quadric& target) {
  const Quadric& source = quadric_of(field);
  if (p.rows() != source.ambient_dim() || p.cols() != source.ambient_dim() ||
      target.ambient_dim() != source.ambient_dim())
    throw DimensionMismatch("push_forward: map has the wrong shape");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(p);
  if (!lu.isInvertible()) throw NonInvertible("push_forward: map is not invertible");

  // P must carry {<x,x> = eps} onto {<y,y> = eps'}: P^T eta' P = (eps'/eps) eta.
  const int sign = source.epsilon() * target.epsilon();
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if (isometry_residual(p, source.ambient(), target.ambient(), sign) > 1e-9 * scale * scale)
    throw PreconditionError("push_forward: map does not carry " + source.name() + " onto " +
                            target.name());
  const Eigen::MatrixXd p_inv = lu.inverse();

  return std::visit(
      overloaded{
          [&](const ConformalGradientField& f) -> VectorField {
            return ConformalGradientField(target, p * f.pole());
          },
          [&](const KillingField& k) -> VectorField {
            return KillingField(target, p * k.matrix() * p_inv, 1e-9 * scale * scale);
          },
          [&](const AmbientPolyField& v) -> VectorField {
            const int dim = source.ambient_dim();
            PolyVector<double> pulled;
            for (const auto& c : v.components()) pulled.push_back(c.substitute_linear(p_inv));
            PolyVector<double> out(dim, Polynomial<double>(dim));
            for (int i = 0; i < dim; ++i)
              for (int j = 0; j < dim; ++j)
                if (p(i, j) != 0.0) out[i] += p(i, j) * pulled[j];
            return AmbientPolyField(target, std::move(out));
          },
      },
      field);
}

bool is_neutral_surface(const Quadric& m) {
  return m.dim() == 2 && m.index() == 1 && m.unit();
}

int para_kahler_sign(const Quadric& m) {
  if (!is_neutral_surface(m)) throw PreconditionError("para-Kaehler structure needs S^2_1 or H^2_1");
  // Fixed by (J sigma)(x,y,z) = (y,x,0) for the cgf with pole (0,0,1) on H^2_1,
  // and on S^2_1 by para-holomorphy of the canonical anti-isometry.
  return m.kind() == QuadricKind::Hyperbolic ? 1 : -1;
}

ParaKahlerOperator para_kahler_J(const Quadric& m, const Eigen::VectorXd& x) {
  const int kappa = para_kahler_sign(m);
  const Signature& s = m.ambient();
  const Frame frame = tangent_frame(m, x);
  // Tangent signature is (+,-): E_plus +- E_minus are the two null directions.
  const int plus = frame.indicators[0] > 0 ? 0 : 1;
  const Eigen::Vector3d e_plus = frame.vectors[plus];
  const Eigen::Vector3d e_minus = frame.vectors[1 - plus];
  Eigen::Vector3d a = e_plus + e_minus;
  Eigen::Vector3d b = e_plus - e_minus;
  // (A, B) positively oriented against the normal x, with A + B space-like.
  Eigen::Matrix3d orient;
  orient << a, b, Eigen::Vector3d(x);
  if (orient.determinant() < 0) std::swap(a, b);
  const double ab = inner(a, b, s);
  if (std::abs(ab) < 1e-12) throw DegenerateTangent("null directions are not independent");

  const Eigen::Matrix3d eta = s.gram();
  ParaKahlerOperator j;
  j.matrix = kappa * (a * (eta * b).transpose() - b * (eta * a).transpose()) / ab;
  j.null_plus = kappa > 0 ? a : b;
  j.null_minus = kappa > 0 ? b : a;
  return j;
}

VectorField j_twist(const VectorField& field) {
  const Quadric& m = quadric_of(field);
  const double kappa = para_kahler_sign(m);
  const Eigen::Matrix3d eta = m.ambient().gram();
  return std::visit(
      overloaded{
          [&](const ConformalGradientField& f) -> VectorField {
            // J sigma = kappa eta (x cross (a - eps alpha x)) = -kappa eta [a]_x x.
            const Eigen::Matrix3d b = -kappa * eta * cross_matrix(f.pole());
            return KillingField(m, b);
          },
          [&](const KillingField& k) -> VectorField {
            // Inverse of the map above: [a]_x = -kappa eta A.
            const Eigen::Matrix3d a = k.matrix();
            return ConformalGradientField(m, vee(-kappa * eta * a));
          },
          [&](const AmbientPolyField& v) -> VectorField {
            const int dim = 3;
            PolyVector<double> pos;
            for (int i = 0; i < dim; ++i) pos.push_back(Polynomial<double>::variable(dim, i));
            const auto& c = v.components();
            PolyVector<double> cross = {pos[1] * c[2] - pos[2] * c[1], pos[2] * c[0] - pos[0] * c[2],
                                        pos[0] * c[1] - pos[1] * c[0]};
            for (int i = 0; i < dim; ++i) cross[i] *= kappa * eta(i, i);
            return AmbientPolyField(m, std::move(cross));
          },
      },
      field);
}

// ---------------------------------------------------------------------------
// Structural tests

ClosedConformalReport is_closed_conformal(const VectorField& field,
                                          const std::vector<Eigen::VectorXd>& samples, double tol) {
  const Quadric& m = quadric_of(field);
  const Signature& s = m.ambient();
  ClosedConformalReport report;
  for (const auto& x : samples) {
    const Frame frame = tangent_frame(m, x);
    const int n = frame.size();
    // Coefficients of nabla_{E_j} sigma in the frame.
    Eigen::MatrixXd op(n, n);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd d = cov_deriv(field, x, frame.vectors[j]);
      for (int i = 0; i < n; ++i) op(i, j) = frame.indicators[i] * inner(d, frame.vectors[i], s);
    }
    const double psi = op.trace() / n;
    report.psi.push_back(psi);
    const double r = (op - psi * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    report.max_residual = std::max(report.max_residual, r);
  }
  report.closed_conformal = report.max_residual <= tol;
  return report;
}

KillingReport is_killing(const VectorField& field, const std::vector<Eigen::VectorXd>& samples,
                         double tol) {
  const Quadric& m = quadric_of(field);
  const Signature& s = m.ambient();
  KillingReport report;
  for (const auto& x : samples) {
    const Frame frame = tangent_frame(m, x);
    std::vector<Eigen::VectorXd> d;
    for (const auto& e : frame.vectors) d.push_back(cov_deriv(field, x, e));
    for (int i = 0; i < frame.size(); ++i)
      for (int j = 0; j < frame.size(); ++j) {
        const double r = inner(d[i], frame.vectors[j], s) + inner(frame.vectors[i], d[j], s);
        report.max_residual = std::max(report.max_residual, std::abs(r));
      }
  }
  report.killing = report.max_residual <= tol;
  return report;
}

}  // namespace harmfield
