#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "billiard/error.hpp"
#include "billiard/rng.hpp"
#include "oracles.hpp"

using namespace billiard;
using namespace billiard::rng;

TEST_CASE("philox known answers") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and siblings differ") {
  RandomStream a(42), b(42), c(42, 1), d(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
  CHECK(RandomStream(7).sibling(3).stream_index() == 3);
}

TEST_CASE("uniform01 range and mean") {
  RandomStream s(1);
  double sum = 0.0;
  const int N = 1000000;
  for (int i = 0; i < N; ++i) {
    const double u = uniform01(s);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / N - 0.5) <= 0.002);
}

TEST_CASE("gaussian moments") {
  RandomStream s(2);
  const int N = 1000000 / 3;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < N; ++i) {
    const Vector z = gaussian_vector(s, 3);
    REQUIRE(z.size() == 3);
    sum += z.sum();
    sq += z.squaredNorm();
  }
  const double mean = sum / (3.0 * N);
  CHECK(std::abs(mean) <= 0.005);
  CHECK(std::abs(sq / (3.0 * N) - mean * mean - 1.0) <= 0.01);
  try {
    gaussian_vector(s, 0);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDimension);
  }
}

TEST_CASE("unit directions") {
  RandomStream s(3);
  for (int n = 2; n <= 100; ++n) CHECK(std::abs(unit_direction(s, n).norm() - 1.0) <= 1e-12);
  const int N = 1000000;
  double mean = 0.0, positive = 0.0;
  for (int i = 0; i < N; ++i) {
    const Vector d = unit_direction(s, 3);
    mean += d[0];
    positive += d[0] > 0.0;
  }
  CHECK(std::abs(mean / N) <= 0.005);
  CHECK(std::abs(positive / N - 0.5) <= 0.002);
  CHECK_THROWS_AS(unit_direction(s, 1), Error);
}

TEST_CASE("trajectory lengths are exponential") {
  RandomStream s(4);
  const int N = 1000000;
  std::vector<double> xs(N);
  double sum = 0.0;
  for (auto& x : xs) {
    x = trajectory_length(s, 3.0);
    REQUIRE(std::isfinite(x));
    REQUIRE(x >= 0.0);
    sum += x;
  }
  CHECK(std::abs(sum / N - 3.0) <= 0.01);
  CHECK(oracle::ks_distance(xs, [](double x) { return 1.0 - std::exp(-x / 3.0); }) <= 0.005);
}
