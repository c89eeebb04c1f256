#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "billiard/error.hpp"
#include "billiard/geometry.hpp"
#include "billiard/rng.hpp"
#include "oracles.hpp"

using namespace billiard;
using namespace billiard::geometry;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::Io;
}

BodyPtr square_polytope() {
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  return build_body(PolytopeDesc{A, Vector::Ones(4)});
}

// Rejection sample from a bounding box.
Vector interior(const Body& body, std::mt19937_64& g, const Vector& lo, const Vector& hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    Vector x(lo.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = lo[i] + u(g) * (hi[i] - lo[i]);
    if (body.contains(x)) return x;
  }
}

}  // namespace

TEST_CASE("construction") {
  const auto cube = build_body(UnitCubeDesc{3});
  CHECK(*cube->diameter() == doctest::Approx(std::sqrt(3.0)));
  CHECK_FALSE(build_body(OrthantDesc{3})->bounded());

  Matrix A(2, 1);
  A << 1, -1;
  Vector b(2);
  b << 0, -1;  // x < 0 and x > 1
  CHECK(kind_of([&] { build_body(PolytopeDesc{A, b}); }) == ErrorKind::EmptyInterior);
  CHECK(kind_of([] { build_body(ToroidDesc{3, 1.5}); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { build_body(UnitCubeDesc{0}); }) == ErrorKind::InvalidDimension);
  Matrix indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK(kind_of([&] { build_body(EllipsoidDesc{indefinite}); }) == ErrorKind::NotPositiveDefinite);
}

TEST_CASE("membership") {
  const auto cube = build_body(UnitCubeDesc{2});
  CHECK(cube->contains(v2(0.5, 0.5)));
  CHECK_FALSE(cube->contains(v2(0.0, 0.5)));
  const auto simplex = build_body(StandardSimplexDesc{3});
  CHECK(simplex->contains(Vector::Constant(4, 0.25)));
  CHECK(kind_of([&] { cube->first_exit({Vector::Zero(3), Vector::Unit(3, 0)}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { cube->first_exit({v2(2, 2), v2(1, 0)}); }) == ErrorKind::NotInterior);
}

TEST_CASE("first exit examples") {
  const auto cube = build_body(UnitCubeDesc{2});
  auto hit = cube->first_exit({v2(0.5, 0.5), v2(1, 0)});
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(0.5));
  CHECK(hit->normal.isApprox(v2(-1, 0)));

  const auto orthant = build_body(OrthantDesc{2});
  hit = orthant->first_exit({v2(1, 1), v2(-1, -2) / std::sqrt(5.0)});
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(std::sqrt(5.0) / 2));
  CHECK(hit->normal.isApprox(v2(0, 1)));
  CHECK_FALSE(orthant->first_exit({v2(1, 1), v2(1, 2) / std::sqrt(5.0)}));

  const auto ball = build_body(BallDesc{Vector::Zero(3), 1.0});
  const Vector d = Vector::Ones(3).normalized();
  hit = ball->first_exit({Vector::Zero(3), d});
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(1.0));
  CHECK(hit->normal.isApprox(-d));
}

TEST_CASE("chord examples") {
  const auto cube = build_body(UnitCubeDesc{2});
  auto c = cube->chord(v2(0.5, 0.5), v2(1, 0));
  CHECK(c.t_under == doctest::Approx(-0.5));
  CHECK(c.t_over == doctest::Approx(0.5));
  c = square_polytope()->chord(v2(0, 0), v2(1, 1).normalized());
  CHECK(c.t_under == doctest::Approx(-std::sqrt(2.0)));
  CHECK(c.t_over == doctest::Approx(std::sqrt(2.0)));
  c = build_body(BallDesc{Vector::Zero(2), 1.0})->chord(v2(0.5, 0), v2(1, 0));
  CHECK(c.t_under == doctest::Approx(-1.5));
  CHECK(c.t_over == doctest::Approx(0.5));
  c = build_body(OrthantDesc{2})->chord(v2(1, 1), v2(1, 0));
  CHECK(c.t_under == doctest::Approx(-1.0));
  CHECK(std::isinf(c.t_over));
}

TEST_CASE("reflection") {
  CHECK(reflect_direction(v2(1, 0), v2(-1, 0)).isApprox(v2(-1, 0)));
  const Vector d = v2(1, -1).normalized();
  CHECK(reflect_direction(d, v2(0, 1)).isApprox(v2(1, 1).normalized()));
  std::mt19937_64 g(5);
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 9;
    const Vector a = oracle::unit_vector(g, n), s = oracle::unit_vector(g, n);
    const Vector r = reflect_direction(a, s);
    CHECK(std::abs(r.norm() - 1.0) <= 1e-12);
    CHECK((reflect_direction(r, s) - a).norm() <= 1e-12);
    CHECK(std::abs(r.dot(s) + a.dot(s)) <= 1e-12);
  }
}

TEST_CASE("toroid path bound") {
  CHECK(toroid_path_bound(1.0 / 3.0) == 3);
  CHECK(toroid_path_bound(0.1) == 4);
  CHECK(toroid_path_bound(1.0 - 1e-9) == 3);
  CHECK(kind_of([] { toroid_path_bound(0.0); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("polytope and ellipsoid oracles agree with their chords") {
  std::mt19937_64 g(11);
  Matrix A(2, 2);
  A << 2, 0.5, 0.5, 1;
  const BodyPtr bodies[] = {build_body(UnitCubeDesc{4}), square_polytope(), build_body(EllipsoidDesc{A}),
                            build_body(BallDesc{Vector::Ones(3), 2.0})};
  for (const auto& body : bodies) {
    const int n = static_cast<int>(body->dimension());
    const double diam = *body->diameter();
    for (int i = 0; i < 1000; ++i) {
      const Vector p = interior(*body, g, Vector::Constant(n, -3), Vector::Constant(n, 3));
      const Vector d = oracle::unit_vector(g, n);
      const auto hit = body->first_exit({p, d});
      REQUIRE(hit);
      const auto chord = body->chord(p, d);
      CHECK(std::abs(chord.t_over - hit->t) <= 1e-10 * diam);
      const auto back = body->first_exit({p, -d});
      REQUIRE(back);
      CHECK(std::abs(chord.t_under + back->t) <= 1e-10 * diam);
      // the inward normal points back into the body
      const Vector q = p + hit->t * d;
      CHECK(body->contains(q + 1e-6 * diam * hit->normal));
      CHECK(std::abs(hit->normal.norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("simplex directions and facet normals") {
  const int n = 5;
  const SimplexBody simplex(n);
  rng::RandomStream s(9);
  for (int i = 0; i < 1000; ++i) {
    const Vector d = simplex.sample_direction(s);
    CHECK(std::abs(d.sum()) <= 1e-12);
    CHECK(std::abs(d.norm() - 1.0) <= 1e-12);
  }
  for (int k = 0; k <= n; ++k) {
    Vector expected = Vector::Constant(n + 1, -1.0);
    expected[k] = n;
    expected *= std::sqrt(1.0 / (n * (n + 1.0)));
    CHECK((simplex.facet_normal(k) - expected).norm() <= 1e-12);
  }
  const Vector center = simplex.interior_point();
  const auto hit = simplex.first_exit({center, simplex.sample_direction(s)});
  REQUIRE(hit);
  CHECK(std::abs(hit->normal.sum()) <= 1e-12);
}

TEST_CASE("curved bodies agree with a marching root finder") {
  std::mt19937_64 g(21);
  struct Case {
    BodyPtr body;
    Vector lo, hi;
    double step;
  };
  Vector tlo = Vector::Constant(3, -4.0 / 3), thi = Vector::Constant(3, 4.0 / 3);
  const Case cases[] = {
      {build_body(ToroidDesc{3, 1.0 / 3.0}), tlo, thi, 1e-3},
      {build_body(ConcaveCuspDesc{}), v2(0.3, -1), v2(1, 1), 1e-5},
      {build_body(TruncatedEllipseDesc{TruncationVariant::Convex}), v2(-2, -1), v2(2, 1), 1e-3},
      {build_body(TruncatedEllipseDesc{TruncationVariant::Nonconvex}), v2(-2, -1), v2(2, 1), 1e-3},
  };
  for (const auto& c : cases) {
    INFO(c.body->kind());
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
      const Vector p = interior(*c.body, g, c.lo, c.hi);
      const Vector d = oracle::unit_vector(g, static_cast<int>(p.size()));
      const auto hit = c.body->first_exit({p, d});
      REQUIRE(hit);
      const double t = oracle::marching_exit(*c.body, p, d, c.step, 10.0);
      if (std::abs(hit->t - t) > 1e-9) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("angle wedge") {
  const AngleBody angle(AngleTriangleDesc{std::numbers::pi / 2, AngleProfile::Geometric, 1.0});
  CHECK(angle.apex_angle() == doctest::Approx(std::numbers::pi / 2));
  CHECK(angle.contains(v2(0, 0.1)));
  CHECK_FALSE(angle.contains(v2(0.2, 0.1)));
  const auto hit = angle.first_exit({v2(0, 0.5), v2(1, 0)});
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(0.5));
  CHECK_FALSE(angle.first_exit({v2(0, 0.5), v2(0, 1)}));
  const AngleBody literal(AngleTriangleDesc{std::numbers::pi / 2, AngleProfile::Literal, 1.0});
  CHECK(literal.slope() == doctest::Approx(std::atan(std::numbers::pi / 4)));
}
