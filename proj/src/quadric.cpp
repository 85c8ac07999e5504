#include "harmfield/quadric.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>
#include <sstream>

namespace harmfield {

namespace {

Signature ambient_for(QuadricKind kind, int n, int v) {
  const int index = kind == QuadricKind::Sphere ? v : v + 1;
  return Signature(n + 1 - index, index);
}

}  // namespace

Quadric::Quadric(QuadricKind kind, int n, int v, double radius)
    : kind_(kind), n_(n), v_(v), radius_(radius), ambient_(1, 0) {
  if (n < 2) throw PreconditionError("quadric dimension must be at least 2");
  if (v < 0 || v > n) throw PreconditionError("quadric index must lie in [0, n]");
  if (!(radius > 0.0)) throw PreconditionError("quadric radius must be positive");
  ambient_ = ambient_for(kind, n, v);
}

std::string Quadric::name() const {
  std::ostringstream out;
  out << (kind_ == QuadricKind::Sphere ? 'S' : 'H') << '^' << n_ << '_' << v_;
  if (!unit()) out << '(' << radius_ << ')';
  return out.str();
}

std::vector<Quadric> two_dim_quadrics() {
  return {Quadric::sphere(2, 0),     Quadric::sphere(2, 1),     Quadric::sphere(2, 2),
          Quadric::hyperbolic(2, 0), Quadric::hyperbolic(2, 1), Quadric::hyperbolic(2, 2)};
}

bool contains(const Quadric& m, const Eigen::VectorXd& x, double tol) {
  if (x.size() != m.ambient_dim()) throw DimensionMismatch("contains: point has wrong dimension");
  const double target = m.epsilon() * m.radius() * m.radius();
  return std::abs(quadratic_form(x, m.ambient()) - target) <= tol;
}

void require_point(const Quadric& m, const Eigen::VectorXd& x, double tol) {
  if (!m.unit()) throw PreconditionError("field computations require a unit-radius quadric");
  if (!contains(m, x, tol)) throw PreconditionError("point does not lie on " + m.name());
}

Eigen::VectorXd tangent_project(const Quadric& m, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& w) {
  return w - m.epsilon() * inner(w, x, m.ambient()) * x;
}

Frame tangent_frame(const Quadric& m, const Eigen::VectorXd& x) {
  require_point(m, x);
  std::vector<Eigen::VectorXd> candidates;
  candidates.reserve(m.ambient_dim());
  for (int i = 0; i < m.ambient_dim(); ++i)
    candidates.push_back(tangent_project(m, x, Eigen::VectorXd::Unit(m.ambient_dim(), i)));
  return orthonormalize(candidates, m.ambient(), m.dim());
}

double curvature(const Quadric& m) { return m.epsilon() / (m.radius() * m.radius()); }

Eigen::MatrixXd canonical_anti_isometry(int n, int v) {
  if (n < 0 || v < 0 || v > n) throw PreconditionError("anti-isometry needs 0 <= v <= n");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n + 1, n + 1);
  // Output slot k reads input coordinate n-v+k for the first v+1 slots, then 0, 1, ...
  for (int k = 0; k <= v; ++k) p(k, n - v + k) = 1.0;
  for (int j = 0; j < n - v; ++j) p(v + 1 + j, j) = 1.0;
  return p;
}

std::vector<Eigen::VectorXd> sample_points(const Quadric& m, const SamplingOptions& options) {
  if (!m.unit()) throw PreconditionError("sampling is defined on unit quadrics");
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> points;
  points.reserve(options.count);
  const int dim = m.ambient_dim();
  while (static_cast<int>(points.size()) < options.count) {
    Eigen::VectorXd u(dim);
    for (int i = 0; i < dim; ++i) u(i) = normal(rng);
    u.normalize();
    const double q = quadratic_form(u, m.ambient());
    if (std::abs(q) < options.min_abs_q || q * m.epsilon() < 0) continue;
    points.push_back(u / std::sqrt(std::abs(q)));
  }
  return points;
}

Eigen::VectorXd random_tangent(const Quadric& m, const Eigen::VectorXd& x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Frame frame = tangent_frame(m, x);
  Eigen::VectorXd t = Eigen::VectorXd::Zero(m.ambient_dim());
  for (const auto& e : frame.vectors) t += normal(rng) * e;
  return t;
}

Eigen::MatrixXd random_ambient_isometry(const Signature& s, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int dim = s.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      k(i, j) = scale * normal(rng);
      k(j, i) = -k(i, j);
    }
  // eta K is skew-adjoint for eta whenever K is antisymmetric.
  const Eigen::MatrixXd generator = s.gram() * k;
  Eigen::MatrixXd p = generator.exp();
  std::uniform_int_distribution<int> coin(0, dim);
  const int flip = coin(rng);
  if (flip < dim) p.row(flip) *= -1.0;
  return p;
}

}  // namespace harmfield
