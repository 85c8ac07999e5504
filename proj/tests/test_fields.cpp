#include <doctest.h>

#include "harmfield/fields.hpp"
#include "support.hpp"

using namespace harmfield;
using testing_support::max_abs;

namespace {

const Quadric kH21 = Quadric::hyperbolic(2, 1);
const Quadric kS21 = Quadric::sphere(2, 1);

Eigen::Matrix3d rotation_yz() {
  Eigen::Matrix3d a;
  a << 0, 0, 0, 0, 0, 1, 0, -1, 0;
  return a;
}

std::vector<Quadric> test_quadrics() {
  std::vector<Quadric> out = two_dim_quadrics();
  out.push_back(Quadric::sphere(3, 1));
  out.push_back(Quadric::hyperbolic(3, 1));
  return out;
}

Eigen::VectorXd random_pole(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return testing_support::random_vector(dim, rng);
}

}  // namespace

TEST_CASE("conformal gradient field examples") {
  const ConformalGradientField f(kH21, Eigen::Vector3d(0, 0, 1));
  CHECK(max_abs(cgf_eval(f, Eigen::Vector3d(0, 0, 1))) == 0.0);
  CHECK(max_abs(cgf_eval(f, Eigen::Vector3d(1, 1, 1)) - Eigen::Vector3d(-1, -1, 0)) < 1e-15);
  CHECK(max_abs(cgf_cov_deriv(f, Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(-1, -1, 0)) -
                Eigen::Vector3d(1, 1, 0)) < 1e-15);
  const ConformalGradientField zero(kH21, Eigen::Vector3d::Zero());
  for (const auto& x : sample_points(kH21, {10, 1})) CHECK(max_abs(cgf_eval(zero, x)) == 0.0);
  CHECK_THROWS_AS(ConformalGradientField(kH21, Eigen::Vector2d(1, 0)), DimensionMismatch);
  CHECK_THROWS_AS(ConformalGradientField(Quadric::sphere(2, 0, 2.0), Eigen::Vector3d(1, 0, 0)),
                  PreconditionError);
}

TEST_CASE("Killing field examples") {
  const KillingField k(kH21, rotation_yz());
  CHECK(max_abs(killing_eval(k, Eigen::Vector3d(1, 1, 1)) - Eigen::Vector3d(0, 1, -1)) == 0.0);
  CHECK(max_abs(killing_cov_deriv(k, Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(-1, -1, 0)) -
                Eigen::Vector3d(-1, -1, 0)) < 1e-15);
  CHECK_THROWS_AS(KillingField(kH21, Eigen::Matrix3d::Identity()), PreconditionError);
  for (const auto& x : sample_points(kH21, {100, 2}))
    CHECK(std::abs(inner(killing_eval(k, x), x, kH21.ambient())) < 1e-12);
}

TEST_CASE("generic engine agrees with closed forms") {
  for (const Quadric& m : test_quadrics()) {
    const int d = m.ambient_dim();
    const VectorField cgf = ConformalGradientField(m, random_pole(d, 17));
    const VectorField kf = KillingField(m, testing_support::random_skew(m.ambient(), 23));
    for (const VectorField& f : {cgf, kf}) {
      const AmbientPolyField poly = to_poly(f);
      std::uint64_t seed = 0;
      for (const auto& x : sample_points(m, {50, 31})) {
        const Eigen::VectorXd t = random_tangent(m, x, ++seed);
        CHECK(max_abs(generic_cov_deriv(poly, x, t) - cov_deriv(f, x, t)) < 1e-10);
        const SectionTerms a = section_terms(f, x, Route::ClosedForm);
        const SectionTerms b = section_terms(f, x, Route::Generic);
        CHECK(max_abs(a.rough_laplacian - b.rough_laplacian) < 1e-8);
        CHECK(max_abs(a.grad_F - b.grad_F) < 1e-9);
        CHECK(std::abs(a.laplacian_F - b.laplacian_F) < 1e-8);
        CHECK(std::abs(a.nabla_sigma_sq - b.nabla_sigma_sq) < 1e-8);
        CHECK(std::abs(a.grad_F_sq - b.grad_F_sq) < 1e-8);
        CHECK(max_abs(a.cov_along_grad_F - b.cov_along_grad_F) < 1e-8);
      }
    }
  }
}

TEST_CASE("second covariant derivative of a cgf") {
  for (const Quadric& m : test_quadrics()) {
    const ConformalGradientField f(m, random_pole(m.ambient_dim(), 5));
    const AmbientPolyField poly = to_poly(f);
    std::uint64_t seed = 0;
    for (const auto& x : sample_points(m, {20, 6})) {
      const Eigen::VectorXd u = random_tangent(m, x, ++seed);
      const Eigen::VectorXd v = random_tangent(m, x, ++seed);
      CHECK(max_abs(second_cov_deriv(poly, x, u, v) - cgf_second_cov_deriv(f, x, u, v)) < 1e-9);
    }
  }
}

TEST_CASE("rough Laplacians") {
  for (const Quadric& m : test_quadrics()) {
    const double eps = m.epsilon();
    const ConformalGradientField c(m, random_pole(m.ambient_dim(), 8));
    const KillingField k(m, testing_support::random_skew(m.ambient(), 9));
    const AmbientPolyField pc = to_poly(c), pk = to_poly(k);
    for (const auto& x : sample_points(m, {30, 10})) {
      CHECK(max_abs(rough_laplacian(pc, x) - eps * cgf_eval(c, x)) < 1e-8);
      CHECK(max_abs(rough_laplacian(pk, x) - eps * (m.dim() - 1) * killing_eval(k, x)) < 1e-8);
    }
  }
  const AmbientPolyField zero(kH21, PolyVector<double>(3, Polynomial<double>(3)));
  CHECK(max_abs(rough_laplacian(zero, Eigen::Vector3d(0, 0, 1))) == 0.0);
}

TEST_CASE("grad F and Laplacian of F") {
  const VectorField k = KillingField(kH21, rotation_yz());
  CHECK(laplacian_F(k, Eigen::Vector3d(1, 1, 1)) == doctest::Approx(4.0));
  CHECK(laplacian_F(k, Eigen::Vector3d(1, 1, 1), Route::Generic) == doctest::Approx(4.0));

  const VectorField c = ConformalGradientField(kH21, Eigen::Vector3d(0, 0, 1));
  const Eigen::Vector3d x(1, 1, 1);  // alpha = -1, F = 0
  CHECK(section_terms(c, x).F == doctest::Approx(0.0));
  CHECK(laplacian_F(c, x) == doctest::Approx(-2.0));
  CHECK(laplacian_F(c, x, Route::Generic) == doctest::Approx(-2.0));

  const Eigen::Vector3d y(0, 1, 0);  // alpha(y) = <y, (1,0,0)> = 0
  const VectorField c2 = ConformalGradientField(kH21, Eigen::Vector3d(1, 0, 0));
  CHECK(max_abs(grad_F(c2, y)) == 0.0);
  CHECK(max_abs(grad_F(c2, y, Route::Generic)) < 1e-15);
}

TEST_CASE("closed-form identities at sampled points") {
  for (const Quadric& m : test_quadrics()) {
    const double eps = m.epsilon();
    const ConformalGradientField c(m, random_pole(m.ambient_dim(), 12));
    const KillingField k(m, testing_support::random_skew(m.ambient(), 13));
    const KillingField hat = hat_field(k);
    for (const auto& x : sample_points(m, {40, 14})) {
      const Eigen::VectorXd s = cgf_eval(c, x);
      const double alpha = c.alpha(x);
      CHECK(std::abs(inner(s, s, m.ambient()) - (c.mu() - eps * alpha * alpha)) < 1e-12);
      if (std::abs(inner(s, s, m.ambient())) < 1e-12) CHECK(max_abs(s) < 1e-8);

      const SectionTerms t = section_terms(VectorField(k), x, Route::Generic);
      const Eigen::VectorXd identity = t.cov_along_grad_F + killing_eval(hat, x) + 2.0 * eps * t.F * t.sigma;
      CHECK(max_abs(identity) < 1e-8);
      CHECK(std::abs(t.nabla_sigma_sq - (k.pseudo_length() - 4.0 * eps * t.F)) < 1e-8);
    }
  }
}

TEST_CASE("hat field") {
  const KillingField k(kH21, rotation_yz());
  CHECK(max_abs(hat_field(k).matrix() + rotation_yz()) < 1e-15);
  CHECK(max_abs(hat_field(KillingField(kH21, Eigen::Matrix3d::Zero())).matrix()) == 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KillingField r(Quadric::sphere(3, 2), testing_support::random_skew(Signature(2, 2), seed));
    CHECK(is_skew(hat_field(r).matrix(), r.quadric().ambient(), 1e-10));
  }
}

TEST_CASE("push-forward") {
  SUBCASE("identity leaves the field unchanged") {
    const VectorField c = ConformalGradientField(kH21, Eigen::Vector3d(0.2, 0.1, 1));
    const VectorField pushed = push_forward(c, Eigen::Matrix3d::Identity(), kH21);
    for (const auto& x : sample_points(kH21, {10, 3}))
      CHECK(max_abs(evaluate(pushed, x) - evaluate(c, x)) < 1e-15);
  }
  SUBCASE("isometries carry cgf(a) to cgf(Pa) and act as dphi o sigma o phi^-1") {
    for (const Quadric& m : test_quadrics()) {
      const Eigen::MatrixXd p = random_ambient_isometry(m.ambient(), 41);
      const Eigen::VectorXd a = random_pole(m.ambient_dim(), 42);
      const VectorField c = ConformalGradientField(m, a);
      const VectorField pushed = push_forward(c, p, m);
      REQUIRE(std::holds_alternative<ConformalGradientField>(pushed));
      CHECK(max_abs(std::get<ConformalGradientField>(pushed).pole() - p * a) < 1e-14);
      const VectorField poly_pushed = push_forward(VectorField(to_poly(c)), p, m);
      for (const auto& y : sample_points(m, {10, 43})) {
        const Eigen::VectorXd expected = p * evaluate(c, Eigen::VectorXd(p.inverse() * y));
        CHECK(max_abs(evaluate(pushed, y) - expected) < 1e-9);
        CHECK(max_abs(evaluate(poly_pushed, y) - expected) < 1e-9);
      }
    }
  }
  SUBCASE("singular and non-isometric maps are rejected") {
    const VectorField c = ConformalGradientField(kH21, Eigen::Vector3d(0, 0, 1));
    CHECK_THROWS_AS(push_forward(c, Eigen::Matrix3d::Zero(), kH21), NonInvertible);
    CHECK_THROWS_AS(push_forward(c, 2.0 * Eigen::Matrix3d::Identity(), kH21), PreconditionError);
  }
}

TEST_CASE("para-Kaehler structure") {
  for (const Quadric& m : {kH21, kS21}) {
    std::uint64_t seed = 0;
    for (const auto& x : sample_points(m, {40, 50})) {
      const ParaKahlerOperator j = para_kahler_J(m, x);
      const Eigen::VectorXd u = random_tangent(m, x, ++seed);
      const Eigen::VectorXd v = random_tangent(m, x, ++seed);
      CHECK(max_abs(j(j(u)) - u) < 1e-10);
      CHECK(std::abs(inner(j(u), j(v), m.ambient()) + inner(u, v, m.ambient())) < 1e-9);
      // The null lines are the eigenlines, and A + B is space-like.
      CHECK(max_abs(j(j.null_plus) - j.null_plus) < 1e-10);
      CHECK(max_abs(j(j.null_minus) + j.null_minus) < 1e-10);
      CHECK(inner(Eigen::VectorXd(j.null_plus + j.null_minus), Eigen::VectorXd(j.null_plus + j.null_minus),
                  m.ambient()) > 0);
      // Same operator as kappa eta (x cross X).
      const Eigen::Vector3d cross = Eigen::Vector3d(x).cross(Eigen::Vector3d(u));
      const Eigen::VectorXd alt = para_kahler_sign(m) * (m.ambient().gram() * cross);
      CHECK(max_abs(alt - j(u)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(para_kahler_J(Quadric::sphere(2, 0), Eigen::Vector3d(0, 0, 1)), PreconditionError);
}

TEST_CASE("twisting the cgf with pole (0,0,1) on H^2_1 gives (y,x,0)") {
  const VectorField c = ConformalGradientField(kH21, Eigen::Vector3d(0, 0, 1));
  const VectorField jc = j_twist(c);
  REQUIRE(std::holds_alternative<KillingField>(jc));
  for (const auto& x : sample_points(kH21, {30, 60})) {
    CHECK(max_abs(evaluate(jc, x) - Eigen::Vector3d(x(1), x(0), 0)) < 1e-12);
    CHECK(max_abs(evaluate(jc, x) - para_kahler_J(kH21, x)(evaluate(c, x))) < 1e-9);
  }
}

TEST_CASE("J is parallel and involutive on fields") {
  for (const Quadric& m : {kH21, kS21}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const AmbientPolyField s = tangential_poly_field(m, testing_support::random_poly_map(3, 2, seed));
      const VectorField js = j_twist(s);
      const VectorField jjs = j_twist(js);
      std::uint64_t t = 0;
      for (const auto& x : sample_points(m, {20, 70 + seed})) {
        const Eigen::VectorXd u = random_tangent(m, x, ++t);
        const ParaKahlerOperator j = para_kahler_J(m, x);
        CHECK(max_abs(cov_deriv(js, x, u) - j(cov_deriv(s, x, u))) < 1e-8);
        CHECK(max_abs(evaluate(jjs, x) - s.value(x)) < 1e-9);
      }
    }
    const VectorField c = ConformalGradientField(m, random_pole(3, 80));
    const VectorField jj = j_twist(j_twist(c));
    REQUIRE(std::holds_alternative<ConformalGradientField>(jj));
    CHECK(max_abs(std::get<ConformalGradientField>(jj).pole() - std::get<ConformalGradientField>(c).pole()) <
          1e-14);
  }
}

TEST_CASE("closed conformal and Killing tests") {
  const auto pts = sample_points(kH21, {30, 90});
  const VectorField c = ConformalGradientField(kH21, Eigen::Vector3d(0.3, 0.4, 1.2));
  const ClosedConformalReport cc = is_closed_conformal(c, pts);
  CHECK(cc.closed_conformal);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(cc.psi[i] == doctest::Approx(-kH21.epsilon() * std::get<ConformalGradientField>(c).alpha(pts[i])));
  const VectorField k = KillingField(kH21, rotation_yz());
  CHECK_FALSE(is_closed_conformal(k, pts).closed_conformal);
  const VectorField zero = ConformalGradientField(kH21, Eigen::Vector3d::Zero());
  const ClosedConformalReport z = is_closed_conformal(zero, pts);
  CHECK(z.closed_conformal);
  for (double psi : z.psi) CHECK(psi == 0.0);

  CHECK(is_killing(k, pts).killing);
  CHECK(is_killing(j_twist(c), pts).killing);
  CHECK_FALSE(is_killing(c, pts).killing);
  for (const Quadric& m : {kH21, kS21}) {
    const auto mp = sample_points(m, {20, 91});
    CHECK(is_killing(j_twist(ConformalGradientField(m, random_pole(3, 92))), mp).killing);
    CHECK(is_closed_conformal(j_twist(KillingField(m, testing_support::random_skew(m.ambient(), 93))), mp)
              .closed_conformal);
  }
}

TEST_CASE("polynomial fields") {
  PolyVector<double> bad(3, Polynomial<double>(3));
  bad[0] = Polynomial<double>::constant(3, 1.0);
  const AmbientPolyField v(kH21, bad);
  CHECK(v.tangency_residual(sample_points(kH21, {10, 1})) > 1e-3);
  CHECK_THROWS_AS(AmbientPolyField(kH21, PolyVector<double>(2, Polynomial<double>(3))), DimensionMismatch);
  const AmbientPolyField t = tangential_poly_field(kH21, testing_support::random_poly_map(3, 2, 4));
  CHECK(t.tangency_residual(sample_points(kH21, {50, 2})) < 1e-12);
}
