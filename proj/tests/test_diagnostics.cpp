#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "billiard/diagnostics.hpp"
#include "billiard/error.hpp"
#include "oracles.hpp"

using namespace billiard;
using namespace billiard::diagnostics;

TEST_CASE("pearson statistic") {
  const Counts bw{927, 1087, 1096, 985, 987, 992, 963, 979, 1000, 984};
  const auto r = chi_square_statistic(bw, Counts(10, 1000.0));
  CHECK(std::abs(r.statistic - 24.64) <= 0.01);
  CHECK(r.dof == 9);
  // nested-shell frequencies of a 1891-point run
  const Counts shells{152, 175, 163, 177, 189, 192, 206, 182, 214, 241};
  CHECK(std::abs(chi_square_statistic(shells, Counts(10, 189.1)).statistic - 32.05) <= 0.01);
  const Counts cells{172, 188, 167, 177, 158, 179, 176, 154, 147, 178, 195};
  CHECK(std::abs(chi_square_uniform(cells).statistic - 12.10) <= 0.01);
  CHECK(chi_square_uniform(Counts{5, 5, 5, 5}).statistic == 0.0);

  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind([] { chi_square_statistic({1, 2}, {1, 2, 3}); }) == ErrorKind::InvalidPartition);
  CHECK(kind([] { chi_square_statistic({3}, {3}); }) == ErrorKind::InvalidPartition);
  CHECK(kind([] { chi_square_statistic({1, 2}, {3, 0}); }) == ErrorKind::InvalidPartition);
  CHECK(kind([] { chi_square_statistic({1, 2}, {1, 1}); }) == ErrorKind::InvalidPartition);
}

TEST_CASE("acceptance bands") {
  const auto fixed = chi_square_band(9, 0.10);
  CHECK(fixed.lower == 3.3);
  CHECK(fixed.upper == 16.9);
  // the pinned pair agrees with the quantile function
  CHECK(chi_square_quantile(9, 0.05) == doctest::Approx(3.325).epsilon(1e-3));
  CHECK(chi_square_quantile(9, 0.95) == doctest::Approx(16.919).epsilon(1e-3));
  const auto eleven = chi_square_band(11, 0.10);
  CHECK(eleven.lower == doctest::Approx(4.575).epsilon(1e-3));
  CHECK(eleven.upper == doctest::Approx(19.675).epsilon(1e-3));
}

TEST_CASE("slab histograms") {
  Samples one;
  for (int i = 0; i < 10; ++i) one.push_back(Vector::Constant(2, (i + 0.5) / 10));
  CHECK(slab_histogram(one, 0, 10) == Counts(10, 1.0));
  std::mt19937_64 g(1);
  Samples many;
  for (int i = 0; i < 100000; ++i) many.push_back(oracle::uniform_cube(g, 3));
  for (double c : slab_histogram(many, 2, 10)) CHECK(std::abs(c - 10000) <= 400);
  CHECK_THROWS_AS(slab_histogram({Vector::Constant(2, 1.0)}, 0, 10), Error);
}

TEST_CASE("cube cell transitions") {
  Vector low = Vector::Constant(3, 0.25), high = Vector::Constant(3, 0.75);
  CHECK(cube_halving_cell(low) == 0);
  CHECK(cube_halving_cell(high) == 7);
  CHECK(serial_correlation({low, low, low, low}, 3).leave_probability == 0.0);
  const auto alt = serial_correlation({low, high, low, high}, 3);
  CHECK(alt.leave_probability == 1.0);
  CHECK(alt.reference_leave == doctest::Approx(1 - 1.0 / 8));
  std::mt19937_64 g(2);
  Samples xs;
  for (int i = 0; i < 100000; ++i) xs.push_back(oracle::uniform_cube(g, 10));
  const auto t = serial_correlation(xs, 10);
  CHECK(std::abs(t.leave_probability - (1 - std::pow(2.0, -10))) <= 0.002);
  CHECK(t.stay_probability + t.leave_probability == doctest::Approx(1.0));
}

TEST_CASE("nested simplex fractions") {
  CHECK(nested_simplex_volume_fraction(1, 0.25) == doctest::Approx(0.5));
  CHECK(nested_simplex_volume_fraction(10, 0.0) == 1.0);
  CHECK(nested_simplex_volume_fraction(10, 1.0 / 11) == doctest::Approx(0.0));
  const auto p1 = nested_simplex_partition(1, 2);
  REQUIRE(p1.size() == 3);
  CHECK(p1[1] == doctest::Approx(0.25));
  const auto p10 = nested_simplex_partition(10, 10);
  CHECK(p10[1] == doctest::Approx(9.54e-4).epsilon(0.005));
  CHECK(p10.back() == doctest::Approx(1.0 / 11));
  for (std::size_t i = 0; i < p10.size(); ++i)
    CHECK(nested_simplex_volume_fraction(10, p10[i]) == doctest::Approx(1.0 - i / 10.0).epsilon(1e-9).scale(1));

  std::mt19937_64 g(3);
  for (int n : {2, 10, 50}) {
    Samples xs;
    for (int i = 0; i < 100000; ++i) xs.push_back(oracle::uniform_simplex(g, n));
    CHECK(nested_simplex_sup_deviation(xs, n) <= 3.0 / std::sqrt(100000.0));
    if (n == 10) {
      const auto shells = nested_shell_counts(xs, n, 10);
      CHECK(chi_square_band(9).upper >= chi_square_uniform(shells).statistic);
      const auto frac = nested_simplex_fraction(xs, n, {0.0, 0.05});
      CHECK(frac[0].empirical == 1.0);
      CHECK(std::abs(frac[1].empirical - frac[1].theoretical) <= 0.01);
    }
  }
}

TEST_CASE("simplex vertex cells") {
  Vector bary = Vector::Constant(3, 1.0 / 3);
  Vector corner(3);
  corner << 0.9, 0.05, 0.05;
  CHECK(simplex_vertex_cells({bary}, 2) == Counts{1, 0, 0});
  CHECK(simplex_vertex_cells({corner}, 2) == Counts{1, 0, 0});
  std::mt19937_64 g(4);
  Samples xs;
  const int N = 110000;
  for (int i = 0; i < N; ++i) xs.push_back(oracle::uniform_simplex(g, 10));
  const double p = 1.0 / 11, sigma = std::sqrt(N * p * (1 - p));
  for (double c : simplex_vertex_cells(xs, 10)) CHECK(std::abs(c - N * p) <= 4 * sigma);
}

TEST_CASE("angular histogram and summaries") {
  Samples xs;
  for (int k = 0; k < 4; ++k) {
    const double t = -3.0 + 1.5 * k + 0.1;
    Vector x(3);
    x << std::cos(t), std::sin(t), 0.0;
    xs.push_back(x);
  }
  CHECK(angular_histogram(xs, 4) == Counts{1, 1, 1, 1});
  const auto s = summarize({1, 2, 3}, 2);
  CHECK(s.mean == doctest::Approx(2.0));
  CHECK(s.stddev == doctest::Approx(1.0));
  CHECK(s.max == 3.0);
  CHECK(s.trials == 5);
  CHECK(s.censored == 2);
}
