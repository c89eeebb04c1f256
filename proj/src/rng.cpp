#include "billiard/rng.hpp"

#include <cmath>
#include <numbers>

#include "billiard/error.hpp"

namespace billiard::rng {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_index_(stream_index) {}

void RandomStream::refill() {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_index_),
                          static_cast<std::uint32_t>(stream_index_ >> 32)};
  const PhiloxKey key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = philox4x32_10(ctr, key);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
  ++block_;
}

std::uint64_t RandomStream::next_u64() {
  if (buffered_ == 0) refill();
  return buffer_[2 - buffered_--];
}

double RandomStream::uniform01() {
  // 53 random bits mapped onto {1, ..., 2^53} * 2^-53.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (spare_gaussian_) {
    const double value = *spare_gaussian_;
    spare_gaussian_.reset();
    return value;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform01()));
  const double angle = 2.0 * std::numbers::pi * uniform01();
  spare_gaussian_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

double uniform01(RandomStream& stream) { return stream.uniform01(); }

Vector gaussian_vector(RandomStream& stream, Eigen::Index n) {
  if (n <= 0) throw Error(ErrorKind::InvalidDimension, "gaussian_vector needs n >= 1");
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = stream.gaussian();
  return v;
}

Vector unit_direction(RandomStream& stream, Eigen::Index n) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "unit_direction needs n >= 2");
  for (;;) {
    Vector v = gaussian_vector(stream, n);
    const double norm = v.norm();
    if (norm > 0.0 && std::isfinite(norm)) return v / norm;
  }
}

double trajectory_length(RandomStream& stream, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorKind::InvalidConfig, "trajectory_length needs tau > 0");
  return 0.0 - tau * std::log(stream.uniform01());
}

}  // namespace billiard::rng
