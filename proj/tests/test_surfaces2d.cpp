#include <doctest.h>

#include <cmath>
#include <random>

#include "fixed_point_search.hpp"
#include "harmfield/surfaces2d.hpp"
#include "support.hpp"

using namespace harmfield;
using testing_support::max_abs;

namespace {

const Quadric kH21 = Quadric::hyperbolic(2, 1);
const Quadric kS21 = Quadric::sphere(2, 1);

/// Random (a, b, c) on H^2_1 with lambda of the requested sign; lambda = 0 is exact in the inputs.
Killing2D draw_h21(int sign, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  while (true) {
    const double a = normal(rng), b = normal(rng);
    if (sign == 0) {
      const double c = (normal(rng) > 0 ? 1 : -1) * std::hypot(a, b);
      return Killing2D(kH21, a, b, c);
    }
    const double c = normal(rng);
    const double lambda = a * a + b * b - c * c;
    if (sign * lambda > 0.05) return Killing2D(kH21, a, b, c);
  }
}

/// Random representative with lambda = eps on a quadric other than S^2_0.
Killing2D draw_harmonic(const Quadric& m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  while (true) {
    Killing2D k(m, normal(rng), normal(rng), normal(rng));
    const double lambda = lambda_2d(k);
    if (lambda * m.epsilon() < 0.05) continue;
    const double s = std::sqrt(m.epsilon() / lambda);
    return Killing2D(m, s * k.a, s * k.b, s * k.c);
  }
}

}  // namespace

TEST_CASE("Killing2D matrices") {
  const Killing2D k(kH21, 1, 2, 3);
  Eigen::Matrix3d expected;
  expected << 0, 1, 2, 1, 0, 3, 2, -3, 0;
  CHECK(max_abs(k.matrix() - expected) == 0.0);
  for (const Quadric& m : two_dim_quadrics()) {
    const Killing2D r(m, 0.3, -1.2, 0.8);
    CHECK(is_skew(r.matrix(), m.ambient(), 1e-15));
    const Killing2D back = Killing2D::from_matrix(m, r.matrix());
    CHECK(back.a == r.a);
    CHECK(back.b == r.b);
    CHECK(back.c == r.c);
  }
  CHECK_THROWS_AS(Killing2D::from_matrix(kH21, Eigen::Matrix3d::Identity()), NotKilling);
  CHECK_THROWS_AS(Killing2D(Quadric::sphere(3, 0), 1, 0, 0), PreconditionError);
}

TEST_CASE("lambda_2d") {
  CHECK(lambda_2d(Killing2D(kH21, 0, 0, 1)) == -1.0);
  CHECK(lambda_2d(Killing2D(kH21, 1, 2, 3)) == 1 + 4 - 9);
  CHECK(lambda_2d(Killing2D(kS21, 0, 0, 1)) == 1.0);
  CHECK(lambda_2d(Killing2D(Quadric::sphere(2, 0), 1, 2, 3)) == -14.0);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (const Quadric& m : two_dim_quadrics())
    for (int i = 0; i < 10; ++i) {
      const Killing2D k(m, normal(rng), normal(rng), normal(rng));
      const Eigen::Matrix3d a = k.matrix();
      CHECK(max_abs(a * a * a - lambda_2d(k) * a) < 1e-12 * (1 + std::abs(lambda_2d(k))) * max_abs(a));
      CHECK(*preharmonic_lambda(k.field()) == doctest::Approx(lambda_2d(k)).epsilon(1e-10));
    }
}

TEST_CASE("kernel vector") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (const Quadric& m : two_dim_quadrics()) {
    const Killing2D k(m, normal(rng), normal(rng), normal(rng));
    const Eigen::Matrix3d a = k.matrix();
    const Eigen::Vector3d w = kernel_vector(a, m.ambient());
    CHECK(max_abs(a * w) < 1e-12);
    for (int i = 0; i < 5; ++i) {
      const Eigen::Vector3d x = testing_support::random_vector(3, rng);
      CHECK(max_abs(a * x - m.ambient().gram() * w.cross(x)) < 1e-12);
    }
    // lambda = -det(eta) <w, w>
    CHECK(lambda_2d(k) == doctest::Approx(-m.ambient().gram().determinant() * inner(w, w, m.ambient())));
  }
}

TEST_CASE("cylinder model") {
  CHECK(max_abs(cylinder_project(Eigen::Vector3d(0, 0, 1)) - Eigen::Vector3d(0, 0, 1)) == 0.0);
  CHECK(max_abs(cylinder_project(Eigen::Vector3d(1, 1, 1)) - Eigen::Vector3d(1, 1, 1) / std::sqrt(2.0)) < 1e-15);
  for (const auto& x : sample_points(kH21, {100, 8})) {
    const Eigen::Vector3d p = cylinder_project(x);
    CHECK(std::abs(p(0)) < 1.0);
    CHECK(p(1) * p(1) + p(2) * p(2) == doctest::Approx(1.0));
    CHECK(max_abs(cylinder_lift(p) - x) < 1e-9 * (1 + x.norm()));
  }
  CHECK_THROWS_AS(cylinder_lift(Eigen::Vector3d(1, 0, 1)), PreconditionError);

  // The projected field is a positive multiple of the push-forward of sigma.
  const Killing2D k(kH21, 0.7, -0.4, 1.1);
  for (const auto& x3 : sample_points(kH21, {30, 9})) {
    const Eigen::Vector3d x = x3;
    const Eigen::Vector3d s = k.matrix() * x;
    const double h = 1e-6;
    const Eigen::Vector3d push = (cylinder_project(x + h * s) - cylinder_project(x - h * s)) / (2 * h);
    const Eigen::Vector3d bar = project_field(k, cylinder_project(x));
    CHECK(push.cross(bar).norm() < 1e-6 * push.norm() * bar.norm() + 1e-12);
    CHECK(push.dot(bar) >= 0.0);
  }
  // Finite and tangent to the boundary circles at xbar = +-1.
  for (double xb : {-1.0, 1.0})
    for (double th = 0; th < 6.3; th += 0.5) {
      const Eigen::Vector3d v = project_field(k, testing_support::cylinder_point(xb, th));
      CHECK(v.allFinite());
      CHECK(v(0) == 0.0);
    }
}

TEST_CASE("fixed points: examples") {
  CHECK(fixed_points(Killing2D(kH21, 0, 0, 1)).category == FixedPointCategory::NoFixedPoints);
  const FixedPointReport ideal = fixed_points(Killing2D(kH21, 1, 0, 1));
  CHECK(ideal.category == FixedPointCategory::TwoIdeal);
  CHECK(testing_support::same_points(ideal.points, {Eigen::Vector3d(1, 0, -1), Eigen::Vector3d(-1, 0, 1)}));
  const FixedPointReport fixed = fixed_points(Killing2D(kH21, 1, 0, 0));
  CHECK(fixed.category == FixedPointCategory::TwoFixed);
  CHECK(testing_support::same_points(fixed.points, {Eigen::Vector3d(0, 0, -1), Eigen::Vector3d(0, 0, 1)}));
  CHECK(std::string(to_string(FixedPointCategory::TwoIdeal)) == "TwoIdeal");
  CHECK_THROWS_AS(fixed_points(Killing2D(kH21, 0, 0, 0)), ZeroField);
  CHECK_THROWS_AS(fixed_points(Killing2D(kS21, 1, 0, 0)), PreconditionError);
  // The harmonic representative has none.
  CHECK(fixed_points(*harmonic_killing_catalog(kH21)).category == FixedPointCategory::NoFixedPoints);
}

TEST_CASE("fixed points agree with a brute-force search") {
  std::mt19937_64 rng(77);
  for (int sign : {-1, 0, 1})
    for (int i = 0; i < 5; ++i) {
      const Killing2D k = draw_h21(sign, rng);
      const FixedPointReport r = fixed_points(k);
      const auto found = testing_support::grid_zero_search(k);
      // A lambda = 0 zero is a double root, located to about sqrt of the accept threshold.
      CHECK(testing_support::same_points(found, testing_support::reported_on_cylinder(r), sign == 0 ? 1e-4 : 1e-6));
      CHECK(r.ideal_points.size() == (sign < 0 ? 0u : sign == 0 ? 2u : 4u));
      for (const auto& p : r.points) {
        if (r.category == FixedPointCategory::TwoFixed) {
          CHECK(contains(kH21, p, 1e-12));
          CHECK(max_abs(k.matrix() * p) < 1e-12);
        } else {
          CHECK(max_abs(project_field(k, p)) < 1e-12);
        }
      }
      for (const auto& p : r.ideal_points) {
        CHECK(std::abs(p(0)) == 1.0);
        CHECK(max_abs(project_field(k, p)) < 1e-12);
      }
    }
}

TEST_CASE("normal forms") {
  CHECK(max_abs(normal_form_matrix(-4) - (Eigen::Matrix3d() << 0, 0, 0, 0, 0, 2, 0, -2, 0).finished()) == 0);
  CHECK(max_abs(normal_form_matrix(0) - (Eigen::Matrix3d() << 0, 1, 0, 1, 0, 1, 0, -1, 0).finished()) == 0);
  CHECK(max_abs(normal_form_matrix(9) - (Eigen::Matrix3d() << 0, 3, 0, 3, 0, 0, 0, 0, 0).finished()) == 0);

  const NormalFormResult id = normal_form(Killing2D(kH21, 0, 0, 1));
  CHECK(max_abs(id.conjugator - Eigen::Matrix3d::Identity()) < 1e-15);

  const NormalFormResult r = normal_form(Killing2D(kH21, 0, 1, 2));
  CHECK(r.lambda == -3.0);
  CHECK(max_abs(r.normal - normal_form_matrix(-3)) == 0.0);
  CHECK(r.conjugation_residual < 1e-10);
  CHECK(r.isometry_residual < 1e-10);
  CHECK((r.conjugator.inverse() * Killing2D(kH21, 0, 1, 2).matrix() * r.conjugator)(1, 2) ==
        doctest::Approx(std::sqrt(3.0)));

  std::mt19937_64 rng(12);
  for (int sign : {-1, 0, 1})
    for (int i = 0; i < 17; ++i) {
      const Killing2D k = draw_h21(sign, rng);
      const NormalFormResult n = normal_form(k);
      CHECK(n.conjugation_residual < 1e-10);
      CHECK(n.isometry_residual < 1e-10);
      const Killing2D back = Killing2D::from_matrix(kH21, n.normal);
      CHECK(lambda_2d(back) == doctest::Approx(lambda_2d(k)).epsilon(1e-10).scale(1));
    }
  // c < 0 and c = 0 take the reflected and rotated routes.
  for (const Killing2D& k : {Killing2D(kH21, 0.3, 0.2, -2), Killing2D(kH21, 0, 0.5, -1), Killing2D(kH21, 0, 0, -1)}) {
    const NormalFormResult n = normal_form(k);
    CHECK(n.conjugation_residual < 1e-10);
    CHECK(n.isometry_residual < 1e-10);
  }
  CHECK_THROWS_AS(normal_form(Killing2D(kH21, 0, 0, 0)), ZeroField);
}

TEST_CASE("harmonic Killing catalog") {
  CHECK_FALSE(harmonic_killing_catalog(Quadric::sphere(2, 0)));
  CHECK(max_abs(harmonic_killing_catalog(kH21)->matrix() -
                (Eigen::Matrix3d() << 0, 0, 0, 0, 0, 1, 0, -1, 0).finished()) == 0);
  CHECK(max_abs(harmonic_killing_catalog(Quadric::sphere(2, 2))->matrix() -
                (Eigen::Matrix3d() << 0, 1, 0, 1, 0, 0, 0, 0, 0).finished()) == 0);
  CHECK(max_abs(harmonic_killing_catalog(Quadric::hyperbolic(2, 2))->matrix() -
                (Eigen::Matrix3d() << 0, 1, 0, -1, 0, 0, 0, 0, 0).finished()) == 0);
  for (const Quadric& m : two_dim_quadrics()) {
    const auto k = harmonic_killing_catalog(m);
    if (!k) continue;
    CHECK(lambda_2d(*k) == m.epsilon());
    CHECK(is_pq_harmonic(k->field(), {3, -0.5}).harmonic);
    CHECK(is_pq_harmonic(k->field(), {3, -0.5}, {200, 0}, kGenericTol, Route::Generic).harmonic);
    const auto pts = sample_points(m, {40, 1});
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double p = -5 + 0.5 * i, q = -5 + 0.5 * j;
        if (p == 3 && q == -0.5) continue;
        CHECK_FALSE(is_pq_harmonic(k->field(), {p, q}, pts, 1e-6).harmonic);
      }
  }
}

TEST_CASE("congruence") {
  CHECK(killing_congruent(Killing2D(kH21, 0, 0, 1), Killing2D(kH21, 0, 0, 1)));
  CHECK(killing_congruent(Killing2D(kH21, 0, 0, 2), Killing2D(kH21, 0, 1, std::sqrt(5.0))));
  CHECK_FALSE(killing_congruent(Killing2D(kH21, 0, 0, 1), Killing2D(kH21, 1, 0, 0)));
  CHECK_THROWS_AS(killing_congruent(Killing2D(kH21, 0, 0, 0), Killing2D(kH21, 1, 0, 0)), ZeroField);
  CHECK_THROWS_AS(killing_congruent(Killing2D(kH21, 0, 0, 1), Killing2D(kS21, 0, 0, 1)), PreconditionError);

  // Equal lambda is realized by an explicit isometry on every quadric with harmonic fields.
  std::mt19937_64 rng(31);
  for (const Quadric& m : two_dim_quadrics()) {
    const auto rep = harmonic_killing_catalog(m);
    if (!rep) continue;
    for (int i = 0; i < 10; ++i) {
      const Killing2D k = draw_harmonic(m, rng);
      CHECK(killing_congruent(*rep, k));
      const auto p = find_conjugator(rep->matrix(), k.matrix(), m.ambient());
      REQUIRE(p);
      CHECK(max_abs(*p * rep->matrix() * p->inverse() - k.matrix()) < 1e-9);
      CHECK(isometry_residual(*p, m.ambient(), m.ambient(), 1) < 1e-9);
      // tau is cubic in the field, so the tolerance scales with |A|^3.
      const double size = 1.0 + std::max({std::abs(k.a), std::abs(k.b), std::abs(k.c)});
      const HarmonicityReport h = is_pq_harmonic(k.field(), {3, -0.5}, sample_points(m, {200, 0}), 1e-9 * std::pow(size, 3));
      INFO(m.name(), " abc ", k.a, " ", k.b, " ", k.c, " residual ", h.max_residual);
      CHECK(h.harmonic);
    }
  }
  // Different lambda: no conjugator.
  CHECK_FALSE(find_conjugator(Killing2D(kH21, 0, 0, 1).matrix(), Killing2D(kH21, 1, 0, 0).matrix(), kH21.ambient()));
}

TEST_CASE("fit_killing") {
  const Killing2D k(kS21, 0.4, -0.2, 1.5);
  const Killing2D f = fit_killing(k.field(), sample_points(kS21, {10, 2}));
  CHECK(f.a == doctest::Approx(0.4));
  CHECK(f.b == doctest::Approx(-0.2));
  CHECK(f.c == doctest::Approx(1.5));
  CHECK_THROWS_AS(fit_killing(ConformalGradientField(kS21, Eigen::Vector3d(0, 0, 1)), sample_points(kS21, {10, 2})),
                  NotKilling);
}

TEST_CASE("twist correspondence") {
  SUBCASE("cgf pole (0,0,1) on H^2_1") {
    const VectorField sigma = ConformalGradientField(kH21, Eigen::Vector3d(0, 0, 1));
    const TwistResult t = twist_correspondence(sigma);
    REQUIRE(t.twisted_killing);
    CHECK(t.twisted_killing->a == doctest::Approx(1.0));
    CHECK(std::abs(t.twisted_killing->b) < 1e-12);
    CHECK(std::abs(t.twisted_killing->c) < 1e-12);
    for (const auto& x : sample_points(kH21, {20, 3}))
      CHECK(max_abs(evaluate(t.twisted, x) - Eigen::Vector3d(x(1), x(0), 0)) < 1e-12);
    CHECK(t.twisted_params.empty());
    CHECK(t.pushed_params == std::vector<ParamPair>{{Rational(3), Rational(-1, 2)}});
    CHECK(t.target == kS21);
    CHECK(t.round_trip_residual < 1e-12);
    CHECK(is_pq_harmonic(t.pushed, {3, -0.5}).harmonic);

    // Zeros of J sigma are those of sigma: (0, 0, +-1).
    for (double s : {-1.0, 1.0}) {
      CHECK(max_abs(evaluate(sigma, Eigen::Vector3d(0, 0, s))) < 1e-15);
      CHECK(max_abs(evaluate(t.twisted, Eigen::Vector3d(0, 0, s))) < 1e-15);
    }
    for (const auto& x : sample_points(kH21, {200, 4})) {
      const double a = evaluate(sigma, x).norm(), b = evaluate(t.twisted, x).norm();
      CHECK((a < 1e-9) == (b < 1e-9));
    }
  }
  SUBCASE("the other permutation lands in the same congruence class") {
    // (x, y, z) -> (z, x, y) sends the field (y, x, 0) to (0, z, y) on S^2_1.
    const Killing2D alt = Killing2D::from_matrix(kS21, (Eigen::Matrix3d() << 0, 0, 0, 0, 0, 1, 0, 1, 0).finished());
    CHECK(lambda_2d(alt) == 1.0);
    CHECK(is_pq_harmonic(alt.field(), {3, -0.5}).harmonic);
    const TwistResult t = twist_correspondence(ConformalGradientField(kH21, Eigen::Vector3d(0, 0, 1)));
    const Killing2D pushed = fit_killing(t.pushed, sample_points(kS21, {10, 1}));
    CHECK(killing_congruent(alt, pushed));
    CHECK(find_conjugator(alt.matrix(), pushed.matrix(), kS21.ambient()));
    // Only the inverse permutation maps H^2_1 into S^2_1.
    Eigen::Matrix3d zxy;
    zxy << 0, 0, 1, 1, 0, 0, 0, 1, 0;
    CHECK(is_anti_isometry(neutral_anti_isometry(kH21), kH21.ambient(), kS21.ambient(), 1e-15));
    CHECK_FALSE(is_anti_isometry(zxy, kH21.ambient(), kS21.ambient(), 1e-3));
  }
  SUBCASE("Killing fields twist to conformal gradient fields") {
    for (const Quadric& m : {kH21, kS21}) {
      const TwistResult t = twist_correspondence(harmonic_killing_catalog(m)->field());
      REQUIRE(t.twisted_pole);
      // J alone gives mu = 1, which is not harmonic on a surface; the anti-isometry flips it to -1.
      const Rational mu = rationalize(inner(*t.twisted_pole, *t.twisted_pole, m.ambient()));
      CHECK(mu == 1);
      CHECK(t.twisted_params.empty());
      const auto& pushed = std::get<ConformalGradientField>(t.pushed);
      CHECK(rationalize(pushed.mu()) == -1);
      CHECK(classify_cgf(2, rationalize(pushed.mu())) == std::vector<ParamPair>{{Rational(3), Rational(-1, 2)}});
      CHECK(t.round_trip_residual < 1e-12);
      CHECK(t.pushed_params == std::vector<ParamPair>{{Rational(3), Rational(-1, 2)}});
    }
  }
  SUBCASE("zero field") {
    const TwistResult t = twist_correspondence(KillingField(kH21, Eigen::Matrix3d::Zero()));
    for (const auto& x : sample_points(kH21, {10, 1})) {
      CHECK(max_abs(evaluate(t.twisted, x)) == 0.0);
      CHECK(max_abs(evaluate(t.pushed, neutral_anti_isometry(kH21) * x)) == 0.0);
    }
  }
  CHECK_THROWS_AS(twist_correspondence(ConformalGradientField(Quadric::sphere(2, 0), Eigen::Vector3d(0, 0, 1))),
                  PreconditionError);
}
