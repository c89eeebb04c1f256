#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "billiard/types.hpp"

namespace billiard::rng {

/// Philox4x32-10 block function (Salmon et al., Random123). Exposed for
/// known-answer testing.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Counter-based random stream. The key is the 64-bit seed and the upper
/// half of the counter is the stream index, so streams built from the same
/// seed with different indices walk disjoint counter ranges.
class RandomStream {
 public:
  static constexpr std::string_view kGeneratorName = "philox4x32-10";

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  /// Sibling stream for chain `index` under the same seed.
  RandomStream sibling(std::uint64_t index) const { return RandomStream(seed_, index); }

  std::uint64_t next_u64();

  /// Uniform in (0, 1]; never returns 0.
  double uniform01();

  /// Standard normal variate (Box-Muller; the second value is cached).
  double gaussian();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::optional<double> spare_gaussian_;
};

double uniform01(RandomStream& stream);

/// n independent standard normals. Throws InvalidDimension for n == 0.
Vector gaussian_vector(RandomStream& stream, Eigen::Index n);

/// Uniform on the unit sphere S^{n-1}, n >= 2.
Vector unit_direction(RandomStream& stream, Eigen::Index n);

/// Exponential trajectory length -tau * log(xi) with xi = uniform01.
double trajectory_length(RandomStream& stream, double tau);

}  // namespace billiard::rng
