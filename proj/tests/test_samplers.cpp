#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "billiard/diagnostics.hpp"
#include "billiard/error.hpp"
#include "billiard/samplers.hpp"
#include "oracles.hpp"

using namespace billiard;
using namespace billiard::geometry;
using namespace billiard::samplers;

namespace {

Vector v1(double a) { return Vector::Constant(1, a); }

SamplerConfig config(double tau, int reflections, std::uint64_t seed = 1) { return {tau, reflections, seed}; }

}  // namespace

TEST_CASE("closed-form cube step examples") {
  CHECK(cube_bw_step(v1(0.5), 0.25, v1(1))[0] == doctest::Approx(0.75));
  CHECK(cube_bw_step(v1(0.5), 1.0, v1(1))[0] == doctest::Approx(0.5));
  Vector x(2), d(2);
  x << 0.25, 0.25;
  d << 0, 1;
  CHECK(cube_bw_step(x, 2.0, d).isApprox(x));
  CHECK(cube_bw_step(v1(0.5), 0.75, v1(-1))[0] == doctest::Approx(0.25));
}

TEST_CASE("forced billiard steps") {
  const auto ball = build_body(BallDesc{Vector::Zero(3), 1.0});
  ChainState state = initial_state(*ball, Vector::Zero(3));
  const Vector e1 = Vector::Unit(3, 0);
  const Vector y = bw_step(*ball, state, 0.5, [&] { return e1; }, config(1, 30));
  CHECK(y.isApprox(0.5 * e1));
  CHECK(state.reflections_last == 0);
  CHECK(state.bo_calls == 1);

  const Vector before = state.current;
  const Vector same = bw_step(*ball, state, 0.0, [&] { return e1; }, config(1, 30));
  CHECK(same == before);
}

TEST_CASE("billiard step matches the closed form in the cube") {
  std::mt19937_64 g(3);
  std::exponential_distribution<double> len(1.0);
  for (int n : {2, 5, 10}) {
    const auto cube = build_body(UnitCubeDesc{n});
    int compared = 0;
    for (int i = 0; i < 10000; ++i) {
      const Vector x = oracle::uniform_cube(g, n);
      const Vector d = oracle::unit_vector(g, n);
      const double l = std::sqrt(n) * len(g);
      const Vector expected = cube_bw_step(x, l, d);
      const double edge = std::min(expected.minCoeff(), 1.0 - expected.maxCoeff());
      const auto t = trace_billiard(*cube, x, d, l, 1000000);
      if (t.status == TraceStatus::Nonsmooth || edge <= 1e-9) continue;
      ++compared;
      REQUIRE(t.status == TraceStatus::Completed);
      CHECK((t.end - expected).norm() <= 1e-9);
    }
    CHECK(compared >= 9990);
  }
}

TEST_CASE("trajectories are reversible") {
  std::mt19937_64 g(4);
  Matrix A(3, 3);
  A << 3, 0.5, 0, 0.5, 1, 0.2, 0, 0.2, 2;
  const BodyPtr bodies[] = {build_body(BallDesc{Vector::Zero(3), 1.0}), build_body(EllipsoidDesc{A}),
                            build_body(UnitCubeDesc{4}), build_body(StandardSimplexDesc{3}),
                            build_body(ToroidDesc{3, 1.0 / 3.0})};
  rng::RandomStream stream(4);
  for (const auto& body : bodies) {
    INFO(body->kind());
    const double diam = *body->diameter();
    const int n = static_cast<int>(body->dimension());
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      Vector x = body->interior_point();
      if (body->kind() == "cube") x = oracle::uniform_cube(g, n);
      const Vector d = body->sample_direction(stream);
      const double l = diam * std::exponential_distribution<double>(1.0)(g);
      const auto forward = trace_billiard(*body, x, d, l, 1000);
      if (forward.status != TraceStatus::Completed) continue;
      const auto back = trace_billiard(*body, forward.end, -forward.direction, l, 1000);
      REQUIRE(back.status == TraceStatus::Completed);
      CHECK((back.end - x).norm() <= 1e-9 * diam);
      ++checked;
    }
    CHECK(checked >= 900);
  }
}

TEST_CASE("direction norm is preserved over long trajectories") {
  Matrix A(2, 2);
  A << 1, 0.3, 0.3, 4;
  const auto ellipse = build_body(EllipsoidDesc{A});
  Vector d(2);
  d << 0.6, 0.8;
  const auto t = trace_billiard(*ellipse, Vector::Zero(2), d, INFINITY, 10000);
  CHECK(t.status == TraceStatus::ReflectionCap);
  CHECK(t.reflections >= 10000);
  CHECK(std::abs(t.direction.norm() - 1.0) <= 1e-9);
}

TEST_CASE("hit-and-run steps") {
  const auto ball = build_body(BallDesc{Vector::Zero(3), 1.0});
  ChainState state = initial_state(*ball, Vector::Zero(3));
  const Vector y = hr_step(*ball, state, Vector::Unit(3, 0), 0.75);
  CHECK(y.isApprox(0.5 * Vector::Unit(3, 0)));
  CHECK(state.bo_calls == 2);

  rng::RandomStream stream(5);
  const auto simplex = build_body(StandardSimplexDesc{4});
  ChainState s = initial_state(*simplex, simplex->interior_point());
  for (int i = 0; i < 100000; ++i) {
    REQUIRE(simplex->contains(hr_step(*simplex, s, stream)));
  }
  CHECK(s.bo_calls == 200000);

  const auto interval = build_body(UnitCubeDesc{1});
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) {
    ChainState one = initial_state(*interval, v1(0.5));
    xs.push_back(hr_step(*interval, one, stream)[0]);
  }
  CHECK(oracle::ks_distance(xs, [](double x) { return x; }) <= 0.01);
}

TEST_CASE("oracle accounting") {
  const auto ball = build_body(BallDesc{Vector::Zero(4), 1.0});
  rng::RandomStream stream(6);
  ChainState state = initial_state(*ball, Vector::Zero(4));
  const auto cfg = config(2.0, 1000);
  for (int i = 0; i < 1000; ++i) {
    const auto before = state.bo_calls;
    const Vector y = bw_step(*ball, state, stream, cfg);
    REQUIRE(ball->contains(y));
    REQUIRE(state.restarts_last == 0);
    CHECK(state.bo_calls - before == static_cast<std::uint64_t>(state.reflections_last) + 1);
  }

  const auto cube = build_body(UnitCubeDesc{10});
  const auto hr = run_chain(*cube, SamplerKind::HitAndRun, config(1, 1), Budget::bo_calls(20000));
  CHECK(hr.samples.size() == 10000);
  CHECK(hr.bo_calls == 20000);
  const auto empty = run_chain(*cube, SamplerKind::BilliardWalk, config(1, 10), Budget::samples(0));
  CHECK(empty.samples.empty());
  CHECK(empty.bo_calls == 0);

  const auto bw = run_chain(*cube, SamplerKind::BilliardWalk, config(std::sqrt(10.0), 100), Budget::bo_calls(5000));
  CHECK(bw.bo_calls >= 5000);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < bw.samples.size(); ++i) {
    REQUIRE(cube->contains(bw.samples[i]));
    total += bw.reflections[i] + 1;
  }
  CHECK(total <= bw.bo_calls);
}

TEST_CASE("restarts and errors") {
  const auto orthant = build_body(OrthantDesc{2});
  rng::RandomStream stream(7);
  ChainState state = initial_state(*orthant, Vector::Ones(2));
  try {
    hr_step(*orthant, state, stream);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedBody);
  }
  const auto square = build_body(UnitCubeDesc{2});
  ChainState corner = initial_state(*square, Vector::Constant(2, 0.5));
  const Vector diagonal = Vector::Ones(2).normalized();
  // aimed straight at a vertex every time
  try {
    bw_step(*square, corner, 1.0, [&] { return diagonal; }, config(1, 20));
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PathologicalGeometry);
  }
  CHECK_THROWS_AS(validate(config(0.0, 1)), Error);
  CHECK_THROWS_AS(validate(config(1.0, 0)), Error);
}

TEST_CASE("orthant and angle reflection bounds") {
  std::mt19937_64 g(8);
  rng::RandomStream stream(8);
  for (int n = 2; n <= 50; ++n) {
    const auto orthant = build_body(OrthantDesc{n});
    for (int i = 0; i < 200; ++i) {
      const auto trial = diagnostics::billiard_escape(*orthant, oracle::uniform_cube(g, n),
                                                      orthant->sample_direction(stream),
                                                      diagnostics::EscapeCriterion::Unbounded, 1000000);
      REQUIRE(trial.reflections);
      CHECK(*trial.reflections <= static_cast<std::uint64_t>(n));
    }
  }
  for (int k : {2, 4, 10, 50}) {
    const double alpha = std::numbers::pi / k;
    const auto angle = build_body(AngleTriangleDesc{alpha, AngleProfile::Geometric, 1.0});
    Vector start(2);
    start << 0.0, 0.1;
    for (int i = 0; i < 200; ++i) {
      const auto trial = diagnostics::billiard_escape(*angle, start, angle->sample_direction(stream),
                                                      diagnostics::EscapeCriterion::Unbounded, 1000000);
      REQUIRE(trial.reflections);
      CHECK(*trial.reflections <= static_cast<std::uint64_t>(k));
    }
  }
}

TEST_CASE("configuration helpers") {
  const auto cube = build_body(UnitCubeDesc{10});
  const auto cfg = default_config(*cube, 3);
  CHECK(cfg.tau == doctest::Approx(std::sqrt(10.0)));
  CHECK(cfg.max_reflections == 100);
  CHECK(default_config(*build_body(StandardSimplexDesc{10}), 1).tau == doctest::Approx(std::sqrt(2.0)));
  CHECK(parse_sampler("hr") == SamplerKind::HitAndRun);
  CHECK_THROWS_AS(parse_sampler("gibbs"), Error);
  CHECK(histogram({0, 2, 2}) == std::vector<std::uint64_t>{1, 0, 2});
}

TEST_CASE("independent chains are deterministic") {
  const auto cube = build_body(UnitCubeDesc{3});
  const auto cfg = config(1.0, 30, 99);
  const auto a = run_chains(*cube, SamplerKind::BilliardWalk, cfg, Budget::samples(50), 3);
  const auto b = run_chains(*cube, SamplerKind::BilliardWalk, cfg, Budget::samples(50), 3);
  REQUIRE(a.size() == 3);
  for (int c = 0; c < 3; ++c) {
    CHECK(a[c].stream_index == static_cast<std::uint64_t>(c));
    for (int i = 0; i < 50; ++i) CHECK(a[c].samples[i] == b[c].samples[i]);
  }
  CHECK(a[0].samples[0] != a[1].samples[0]);
}
