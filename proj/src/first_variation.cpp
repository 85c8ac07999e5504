#include "harmfield/first_variation.hpp"

#include <cmath>

#include "harmfield/harmonic.hpp"
#include "harmfield/quadrature.hpp"

namespace harmfield {

double FirstVariationResult::relative_error() const {
  const double scale = std::max(std::abs(numeric), std::abs(analytic));
  return scale == 0.0 ? 0.0 : std::abs(numeric - analytic) / scale;
}

namespace {

struct Node {
  double weight = 0.0;  // quadrature weight times volume element
  Eigen::VectorXd x;
  std::vector<Eigen::VectorXd> partials;
  Eigen::MatrixXd metric_inv;
  double bump = 0.0;
  Eigen::VectorXd bump_grad;
  Eigen::VectorXd sigma;
  std::vector<Eigen::VectorXd> nabla_sigma;
  Eigen::VectorXd rho;
  std::vector<Eigen::VectorXd> nabla_rho;
};

class Chart {
 public:
  Chart(const Quadric& m, const GraphPatch& patch) : m_(m), patch_(patch) {
    const int dim = m.ambient_dim();
    if (patch.solved < 0 || patch.solved >= dim)
      throw PreconditionError("patch: solved coordinate out of range");
    if (patch.center.size() != m.dim()) throw DimensionMismatch("patch: center needs n coordinates");
    if (!(patch.half_width > 0.0)) throw PreconditionError("patch: half width must be positive");
    for (int i = 0; i < dim; ++i)
      if (i != patch.solved) free_.push_back(i);
  }

  double radicand(const Eigen::VectorXd& u) const {
    const Signature& s = m_.ambient();
    double rest = m_.epsilon();
    for (int j = 0; j < m_.dim(); ++j) rest -= s[free_[j]] * u(j) * u(j);
    return s[patch_.solved] * rest;
  }

  Eigen::VectorXd point(const Eigen::VectorXd& u) const {
    const double r = radicand(u);
    if (r <= 0.0) throw PreconditionError("patch leaves the domain of the graph chart");
    Eigen::VectorXd x(m_.ambient_dim());
    for (int j = 0; j < m_.dim(); ++j) x(free_[j]) = u(j);
    x(patch_.solved) = patch_.branch * std::sqrt(r);
    return x;
  }

  std::vector<Eigen::VectorXd> partials(const Eigen::VectorXd& x) const {
    const Signature& s = m_.ambient();
    const int k = patch_.solved;
    std::vector<Eigen::VectorXd> out;
    for (int j = 0; j < m_.dim(); ++j) {
      Eigen::VectorXd d = Eigen::VectorXd::Zero(m_.ambient_dim());
      const int i = free_[j];
      d(i) = 1.0;
      d(k) = -s[k] * s[i] * x(i) / x(k);
      out.push_back(std::move(d));
    }
    return out;
  }

 private:
  const Quadric& m_;
  const GraphPatch& patch_;
  std::vector<int> free_;
};

std::vector<Node> build_nodes(const VectorField& field, const AmbientPolyField& rho,
                              const GraphPatch& patch, const FirstVariationOptions& options) {
  const Quadric& m = quadric_of(field);
  if (!(rho.quadric() == m)) throw PreconditionError("variation lives on a different quadric");
  const Signature& s = m.ambient();
  const Chart chart(m, patch);
  const int n = m.dim();
  const QuadratureRule rule = gauss_legendre(patch.order);
  const int per_axis = patch.order;
  const double h = patch.half_width;
  const int power = options.bump.power;

  // The chart must stay valid on the closed box, corners included.
  for (int corner = 0; corner < (1 << n); ++corner) {
    Eigen::VectorXd u = patch.center;
    for (int j = 0; j < n; ++j) u(j) += ((corner >> j) & 1 ? h : -h);
    if (chart.radicand(u) <= 0.0) throw PreconditionError("patch leaves the graph chart domain");
  }

  long total = 1;
  for (int j = 0; j < n; ++j) total *= per_axis;
  std::vector<Node> nodes;
  nodes.reserve(total);
  std::vector<int> idx(n, 0);
  for (long flat = 0; flat < total; ++flat) {
    long rest = flat;
    for (int j = 0; j < n; ++j) {
      idx[j] = static_cast<int>(rest % per_axis);
      rest /= per_axis;
    }
    Node node;
    Eigen::VectorXd u(n), sv(n);
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      sv(j) = rule.nodes[idx[j]];
      u(j) = patch.center(j) + h * sv(j);
      w *= h * rule.weights[idx[j]];
    }
    node.x = chart.point(u);
    node.partials = chart.partials(node.x);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = inner(node.partials[i], node.partials[j], s);
    node.metric_inv = g.inverse();
    node.weight = w * std::sqrt(std::abs(g.determinant()));

    Eigen::VectorXd factor(n);
    for (int j = 0; j < n; ++j) factor(j) = std::pow(1.0 - sv(j) * sv(j), power);
    node.bump = factor.prod();
    node.bump_grad.resize(n);
    for (int j = 0; j < n; ++j) {
      const double others = node.bump == 0.0 ? 0.0 : node.bump / factor(j);
      node.bump_grad(j) = others * power * std::pow(1.0 - sv(j) * sv(j), power - 1) *
                          (-2.0 * sv(j)) / h;
    }

    node.sigma = evaluate(field, node.x);
    node.rho = rho.value(node.x);
    for (int j = 0; j < n; ++j) {
      node.nabla_sigma.push_back(cov_deriv(field, node.x, node.partials[j]));
      node.nabla_rho.push_back(generic_cov_deriv(rho, node.x, node.partials[j]));
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

double energy_at(const std::vector<Node>& nodes, const Signature& s, const MetricParams& params,
                 double t, double margin, int* lift_sign) {
  double total = 0.0;
  for (const auto& node : nodes) {
    const int n = static_cast<int>(node.partials.size());
    const Eigen::VectorXd sigma = node.sigma + t * node.bump * node.rho;
    std::vector<Eigen::VectorXd> d(n);
    Eigen::VectorXd dF(n);
    for (int j = 0; j < n; ++j) {
      d[j] = node.nabla_sigma[j] + t * (node.bump_grad(j) * node.rho + node.bump * node.nabla_rho[j]);
      dF(j) = inner(d[j], sigma, s);
    }
    const double lift = 1.0 + inner(sigma, sigma, s);
    if (std::abs(lift) < margin) throw SingularPatch("the patch meets <sigma, sigma> = -1");
    const int sign = lift > 0 ? 1 : -1;
    if (*lift_sign == 0) *lift_sign = sign;
    if (sign != *lift_sign) throw SingularPatch("the patch straddles <sigma, sigma> = -1");

    double grad_sq = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) grad_sq += node.metric_inv(i, j) * inner(d[i], d[j], s);
    const double grad_F_sq = dF.dot(node.metric_inv * dF);
    const double w = std::pow(1.0 / std::abs(lift), params.p);
    total += node.weight * 0.5 * w * (grad_sq + params.q * grad_F_sq);
  }
  return total;
}

}  // namespace

double patch_vertical_energy(const VectorField& field, const AmbientPolyField& rho,
                             const GraphPatch& patch, const FirstVariationOptions& options,
                             double t) {
  const std::vector<Node> nodes = build_nodes(field, rho, patch, options);
  int sign = 0;
  return energy_at(nodes, quadric_of(field).ambient(), options.params, t, options.singular_margin,
                   &sign);
}

FirstVariationResult first_variation(const VectorField& field, const AmbientPolyField& rho,
                                     const GraphPatch& patch,
                                     const FirstVariationOptions& options) {
  const Signature& s = quadric_of(field).ambient();
  const std::vector<Node> nodes = build_nodes(field, rho, patch, options);
  const double dt = options.dt;
  int sign = 0;
  auto energy = [&](double t) {
    return energy_at(nodes, s, options.params, t, options.singular_margin, &sign);
  };
  energy(0.0);
  const double coarse = (energy(dt) - energy(-dt)) / (2.0 * dt);
  const double fine = (energy(0.5 * dt) - energy(-0.5 * dt)) / dt;

  FirstVariationResult result;
  result.numeric = (4.0 * fine - coarse) / 3.0;
  result.nodes = static_cast<int>(nodes.size());
  for (const auto& node : nodes) {
    if (node.bump == 0.0 || node.rho.isZero(0.0)) continue;
    const EulerLagrangeResult el = tau_pq(field, node.x, options.params);
    const double lift = 1.0 + inner(node.sigma, node.sigma, s);
    const double w = std::pow(1.0 / std::abs(lift), options.params.p + 1.0);
    result.analytic += node.weight * (lift > 0 ? 1.0 : -1.0) * w * node.bump *
                       inner(el.tau, node.rho, s);
  }
  return result;
}

}  // namespace harmfield
