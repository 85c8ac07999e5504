#include "harmfield/surfaces2d.hpp"

#include <cmath>

namespace harmfield {

namespace {

Eigen::Vector3d cross(const Eigen::Vector3d& u, const Eigen::Vector3d& v) { return u.cross(v); }

void require_surface(const Quadric& m) {
  if (m.dim() != 2 || !m.unit()) throw PreconditionError("expected a unit quadric of dimension two");
}

void require_h21(const Quadric& m) {
  if (!(m == Quadric::hyperbolic(2, 1))) throw PreconditionError("this operation is defined on H^2_1");
}

}  // namespace

Killing2D::Killing2D(Quadric m, double a_, double b_, double c_)
    : quadric(std::move(m)), a(a_), b(b_), c(c_) {
  require_surface(quadric);
}

Eigen::Matrix3d Killing2D::matrix() const {
  const Signature& s = quadric.ambient();
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 1) = a;
  m(0, 2) = b;
  m(1, 2) = c;
  m(1, 0) = -s[0] * s[1] * a;
  m(2, 0) = -s[0] * s[2] * b;
  m(2, 1) = -s[1] * s[2] * c;
  return m;
}

KillingField Killing2D::field() const { return KillingField(quadric, matrix()); }

Killing2D Killing2D::from_matrix(const Quadric& m, const Eigen::Matrix3d& matrix, double tol) {
  require_surface(m);
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if (!is_skew(matrix, m.ambient(), tol * scale)) throw NotKilling("matrix is not skew");
  return Killing2D(m, matrix(0, 1), matrix(0, 2), matrix(1, 2));
}

double lambda_2d(const Killing2D& k) {
  const Signature& s = k.quadric.ambient();
  return -s[0] * s[1] * k.a * k.a - s[0] * s[2] * k.b * k.b - s[1] * s[2] * k.c * k.c;
}

Eigen::Vector3d kernel_vector(const Eigen::Matrix3d& a, const Signature& s) {
  const Eigen::Matrix3d m = s.gram() * a;
  return {m(2, 1), m(0, 2), m(1, 0)};
}

Eigen::Vector3d cylinder_project(const Eigen::Vector3d& x) {
  return x / std::sqrt(1.0 + x(0) * x(0));
}

Eigen::Vector3d cylinder_lift(const Eigen::Vector3d& xbar) {
  const double d = 1.0 - xbar(0) * xbar(0);
  if (d <= 0.0) throw PreconditionError("boundary points of the cylinder have no preimage");
  return xbar / std::sqrt(d);
}

Eigen::Vector3d project_field(const Killing2D& k, const Eigen::Vector3d& p) {
  require_h21(k.quadric);
  const double x = p(0), y = p(1), z = p(2);
  const Eigen::Vector3d radial(1.0 - x * x, -x * y, -x * z);
  return (k.a * y + k.b * z) * radial + Eigen::Vector3d(0.0, k.a * x + k.c * z, k.b * x - k.c * y);
}

const char* to_string(FixedPointCategory c) {
  switch (c) {
    case FixedPointCategory::NoFixedPoints:
      return "NoFixedPoints";
    case FixedPointCategory::TwoIdeal:
      return "TwoIdeal";
    case FixedPointCategory::TwoFixed:
      return "TwoFixed";
  }
  return "?";
}

FixedPointReport fixed_points(const Killing2D& k, double tol) {
  require_h21(k.quadric);
  if (k.is_zero()) throw ZeroField("fixed_points: zero Killing field");
  FixedPointReport r;
  r.lambda = lambda_2d(k);
  const double scale = k.a * k.a + k.b * k.b + k.c * k.c;
  if (std::abs(r.lambda) <= tol * scale) {
    r.category = FixedPointCategory::TwoIdeal;
    const Eigen::Vector3d p(1.0, k.b / k.c, -k.a / k.c);
    r.points = {p, -p};
    r.ideal_points = r.points;
  } else if (r.lambda > 0) {
    r.category = FixedPointCategory::TwoFixed;
    const Eigen::Vector3d p = Eigen::Vector3d(k.c, k.b, -k.a) / std::sqrt(r.lambda);
    r.points = {p, -p};
    // On xbar = s the zeros satisfy a zbar - b ybar + s c = 0 on the unit circle.
    const double ab = std::hypot(k.a, k.b);
    const Eigen::Vector2d normal(-k.b / ab, k.a / ab);
    const Eigen::Vector2d along(k.a / ab, k.b / ab);
    for (double s : {1.0, -1.0}) {
      const double d = -s * k.c / ab;
      const double h = std::sqrt(std::max(0.0, 1.0 - d * d));
      for (double t : {h, -h}) {
        const Eigen::Vector2d yz = d * normal + t * along;
        r.ideal_points.emplace_back(s, yz(0), yz(1));
      }
    }
  }
  return r;
}

Eigen::Matrix3d normal_form_matrix(double lambda, double tol) {
  Eigen::Matrix3d n = Eigen::Matrix3d::Zero();
  if (std::abs(lambda) <= tol) {
    n << 0, 1, 0, 1, 0, 1, 0, -1, 0;
  } else if (lambda < 0) {
    const double c0 = std::sqrt(-lambda);
    n(1, 2) = c0;
    n(2, 1) = -c0;
  } else {
    const double r = std::sqrt(lambda);
    n(0, 1) = r;
    n(1, 0) = r;
  }
  return n;
}

namespace {

// Columns (w, e1, e2): w rescaled to unit length, e1 and e2 an orthonormal
// basis of its complement with positive indicators first.
std::optional<Eigen::Matrix3d> adapted_frame(const Eigen::Vector3d& w, const Signature& s,
                                             double tol) {
  const double q = inner(w, w, s);
  Eigen::Matrix3d f;
  if (std::abs(q) > tol) {
    f.col(0) = w / std::sqrt(std::abs(q));
    std::vector<Eigen::VectorXd> candidates;
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
      candidates.push_back(e - (inner(e, w, s) / q) * w);
    }
    Frame frame = orthonormalize(candidates, s, 2);
    if (frame.indicators[0] < frame.indicators[1]) {
      std::swap(frame.vectors[0], frame.vectors[1]);
      std::swap(frame.indicators[0], frame.indicators[1]);
    }
    f.col(1) = frame.vectors[0];
    f.col(2) = frame.vectors[1];
    return f;
  }
  // Null w: complete to a null pair (w, u) with <w, u> = 1 and add the unit
  // vector eta (w x u) orthogonal to both.
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(inner(Eigen::Vector3d(Eigen::Vector3d::Unit(i)), w, s)) >
        std::abs(inner(Eigen::Vector3d(Eigen::Vector3d::Unit(best)), w, s)))
      best = i;
  const Eigen::Vector3d t = Eigen::Vector3d::Unit(best);
  const double tw = inner(t, w, s);
  if (std::abs(tw) <= tol) return std::nullopt;
  const Eigen::Vector3d u = (t - (inner(t, t, s) / (2.0 * tw)) * w) / tw;
  Eigen::Vector3d e = s.gram() * cross(w, u);
  const double ee = inner(e, e, s);
  if (std::abs(ee) <= tol) return std::nullopt;
  e /= std::sqrt(std::abs(ee));
  f.col(0) = w;
  f.col(1) = u;
  f.col(2) = e;
  return f;
}

}  // namespace

std::optional<Eigen::Matrix3d> find_conjugator(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b,
                                               const Signature& s, double tol) {
  const Eigen::Vector3d wa = kernel_vector(a, s);
  const Eigen::Vector3d wb = kernel_vector(b, s);
  const double scale = std::max({1.0, wa.squaredNorm(), wb.squaredNorm()});
  if (std::abs(inner(wa, wa, s) - inner(wb, wb, s)) > tol * scale) return std::nullopt;
  if (wa.isZero(0.0) || wb.isZero(0.0)) {
    if (wa.isZero(0.0) && wb.isZero(0.0)) return Eigen::Matrix3d::Identity();
    return std::nullopt;
  }
  // When <w,w> vanishes for one it vanishes for both, up to tol.
  const double null_tol = tol * scale;
  const auto fa = adapted_frame(wa, s, null_tol);
  auto fb = adapted_frame(wb, s, null_tol);
  if (!fa || !fb) return std::nullopt;
  // A x = eta (w cross x): matching the frames sends w_a to w_b; det P = +1
  // keeps the cross product, hence the conjugation, intact.
  Eigen::Matrix3d p = *fb * fa->inverse();
  if (p.determinant() < 0) {
    fb->col(2) *= -1.0;
    p = *fb * fa->inverse();
  }
  const double res = (p * a * p.inverse() - b).cwiseAbs().maxCoeff();
  const double mscale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  if (res > 1e3 * tol * mscale) return std::nullopt;
  return p;
}

NormalFormResult normal_form(const Killing2D& k, double tol) {
  require_h21(k.quadric);
  if (k.is_zero()) throw ZeroField("normal_form: zero Killing field");
  NormalFormResult r;
  r.lambda = lambda_2d(k);
  const double scale = k.a * k.a + k.b * k.b + k.c * k.c;
  const double lambda_tol = tol * scale;
  r.normal = normal_form_matrix(r.lambda, lambda_tol);
  const Eigen::Matrix3d a = k.matrix();
  const Signature& s = k.quadric.ambient();

  if (r.lambda < -lambda_tol) {
    // Flow of the boost with generator [[0,al,be],[al,0,0],[be,0,0]] at the
    // time where cosh t0 = c / c0; for c < 0 first reflect z.
    Eigen::Matrix3d pre = Eigen::Matrix3d::Identity();
    double aa = k.a, bb = k.b, cc = k.c;
    if (cc < 0) {
      pre(2, 2) = -1.0;
      bb = -bb;
      cc = -cc;
    }
    const double c0 = std::sqrt(-r.lambda);
    const double ab2 = aa * aa + bb * bb;
    Eigen::Matrix3d phi = Eigen::Matrix3d::Identity();
    if (ab2 > 0.0) {
      const double big_c = (cc - c0) / ab2;
      phi << cc, bb, -aa, bb, c0 + bb * bb * big_c, -aa * bb * big_c, -aa, -aa * bb * big_c,
          c0 + aa * aa * big_c;
      phi /= c0;
    }
    r.conjugator = pre * phi;
  } else {
    const auto p = find_conjugator(r.normal, a, s, 1e-9);
    if (!p) throw PreconditionError("normal_form: no conjugating isometry found");
    r.conjugator = *p;
  }
  r.conjugation_residual =
      (r.conjugator.inverse() * a * r.conjugator - r.normal).cwiseAbs().maxCoeff();
  r.isometry_residual = isometry_residual(r.conjugator, s, s, 1);
  return r;
}

std::optional<Killing2D> harmonic_killing_catalog(const Quadric& m) {
  require_surface(m);
  const int neg = m.ambient().index();
  // Ambient index 0: S^2_0, the exception.
  switch (neg) {
    case 0:
      return std::nullopt;
    case 1:
      // S^2_1 (+,+,-) and H^2_0 (+,+,-).
      if (m.kind() == QuadricKind::Sphere) return Killing2D(m, 0, 0, 1);
      return Killing2D(m, 1, 0, 0);
    case 2:
      // S^2_2 and H^2_1, both (+,-,-).
      if (m.kind() == QuadricKind::Sphere) return Killing2D(m, 1, 0, 0);
      return Killing2D(m, 0, 0, 1);
    default:
      // H^2_2, negative definite ambient space.
      return Killing2D(m, 1, 0, 0);
  }
}

bool killing_congruent(const Killing2D& k1, const Killing2D& k2, double tol) {
  if (!(k1.quadric == k2.quadric)) throw PreconditionError("fields live on different quadrics");
  if (k1.is_zero() || k2.is_zero()) throw ZeroField("congruence of a zero Killing field");
  return std::abs(lambda_2d(k1) - lambda_2d(k2)) <= tol;
}

Killing2D fit_killing(const VectorField& field, const std::vector<Eigen::VectorXd>& points,
                      double tol) {
  const Quadric& m = quadric_of(field);
  require_surface(m);
  if (points.size() < 3) throw PreconditionError("fit_killing needs at least three points");
  const Signature& s = m.ambient();
  const int rows = 3 * static_cast<int>(points.size());
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, 3);
  Eigen::VectorXd rhs(rows);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Eigen::VectorXd& x = points[k];
    const Eigen::VectorXd v = evaluate(field, x);
    const int r = 3 * static_cast<int>(k);
    // Columns: coefficient of a, b, c in A x.
    design(r + 0, 0) = x(1);
    design(r + 1, 0) = -s[0] * s[1] * x(0);
    design(r + 0, 1) = x(2);
    design(r + 2, 1) = -s[0] * s[2] * x(0);
    design(r + 1, 2) = x(2);
    design(r + 2, 2) = -s[1] * s[2] * x(1);
    rhs.segment(r, 3) = v;
  }
  const Eigen::Vector3d abc = design.colPivHouseholderQr().solve(rhs);
  const double residual = (design * abc - rhs).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (residual > tol * scale) throw NotKilling("sampled field is not a Killing field");
  auto clean = [](double v) { return std::abs(v) < 1e-14 ? 0.0 : v; };
  return Killing2D(m, clean(abc(0)), clean(abc(1)), clean(abc(2)));
}

Eigen::Matrix3d neutral_anti_isometry(const Quadric& m) {
  if (!is_neutral_surface(m)) throw PreconditionError("expected S^2_1 or H^2_1");
  const Eigen::Matrix3d p = canonical_anti_isometry(2, 1);
  return m.kind() == QuadricKind::Hyperbolic ? p : Eigen::Matrix3d(p.transpose());
}

namespace {

std::vector<ParamPair> harmonic_params_2d(const VectorField& field,
                                          const std::vector<Eigen::VectorXd>& points) {
  const Quadric& m = quadric_of(field);
  if (const auto* f = std::get_if<ConformalGradientField>(&field))
    return classify_cgf(2, rationalize(f->mu()));
  if (std::holds_alternative<KillingField>(field)) {
    const Killing2D k = fit_killing(field, points);
    if (auto pq = killing_harmonic_condition_2d(m.epsilon(), lambda_2d(k), 1e-9)) return {*pq};
  }
  return {};
}

}  // namespace

TwistResult twist_correspondence(const VectorField& field, const SamplingOptions& sampling) {
  const Quadric& m = quadric_of(field);
  if (!is_neutral_surface(m)) throw PreconditionError("twist needs S^2_1 or H^2_1");
  const std::vector<Eigen::VectorXd> points = sample_points(m, sampling);
  const Eigen::Matrix3d phi = neutral_anti_isometry(m);
  const Quadric target = m.kind() == QuadricKind::Hyperbolic ? Quadric::sphere(2, 1)
                                                             : Quadric::hyperbolic(2, 1);
  VectorField twisted = j_twist(field);
  VectorField pushed = push_forward(twisted, phi, target);
  TwistResult r{field, twisted, std::nullopt, std::nullopt, pushed, target, {}, {}, 0.0};

  if (std::holds_alternative<KillingField>(twisted)) r.twisted_killing = fit_killing(twisted, points);
  if (const auto* f = std::get_if<ConformalGradientField>(&twisted))
    r.twisted_pole = Eigen::Vector3d(f->pole());

  std::vector<Eigen::VectorXd> target_points;
  for (const auto& x : points) target_points.push_back(phi * x);
  r.twisted_params = harmonic_params_2d(twisted, points);
  r.pushed_params = harmonic_params_2d(pushed, target_points);

  const VectorField back = j_twist(twisted);
  for (const auto& x : points)
    r.round_trip_residual = std::max(r.round_trip_residual,
                                     (evaluate(back, x) - evaluate(field, x)).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace harmfield
