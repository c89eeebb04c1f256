#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/rng.hpp"
#include "billiard/types.hpp"

namespace billiard::samplers {

/// Restarts allowed for one sample before the geometry is declared pathological.
inline constexpr int kRestartSafetyCap = 10000;
/// Failed directions tolerated for one trajectory length before the length is
/// redrawn as well.
inline constexpr int kLengthRetryLimit = 100;
/// Largest membership violation (in body-scale units) repaired by nudging.
inline constexpr double kDriftTolerance = 1e-9;

struct SamplerConfig {
  double tau = 1.0;         // mean trajectory length
  int max_reflections = 1;  // R
  std::uint64_t seed = 0;
};

/// tau = diameter estimate, R = 10 n with n the intrinsic dimension.
SamplerConfig default_config(const geometry::Body& body, std::uint64_t seed);
void validate(const SamplerConfig& config);

enum class SamplerKind { BilliardWalk, HitAndRun };
const char* to_string(SamplerKind kind);
SamplerKind parse_sampler(const std::string& name);

struct ChainState {
  Vector current;
  std::uint64_t bo_calls = 0;
  int reflections_last = 0;
  int restarts_last = 0;
  std::uint64_t samples_emitted = 0;
  // Cumulative restart causes and numerical repairs.
  std::uint64_t restarts_nonsmooth = 0;
  std::uint64_t restarts_reflection_cap = 0;
  std::uint64_t restarts_drift = 0;
  std::uint64_t drift_nudges = 0;
  std::uint64_t length_redraws = 0;
};

ChainState initial_state(const geometry::Body& body, const Vector& start);

enum class TraceStatus { Completed, Nonsmooth, ReflectionCap, Escaped, Drift };
const char* to_string(TraceStatus status);

struct Trajectory {
  TraceStatus status = TraceStatus::Completed;
  Vector end;        // endpoint, or the last boundary point when interrupted
  Vector direction;  // direction at `end`
  int reflections = 0;
  std::uint64_t bo_calls = 0;
  std::uint64_t drift_nudges = 0;
  double travelled = 0.0;
};

/// Called once per straight segment of a trajectory.
using SegmentObserver = std::function<void(const Vector& from, const Vector& to)>;

/// Pure billiard propagation from `start` along `direction` for arclength
/// `length` (may be +infinity), with at most `max_reflections` reflections.
/// Stops early on a nonsmooth hit, on escape, or when the cap is exceeded.
Trajectory trace_billiard(const geometry::Body& body, const Vector& start, Vector direction, double length,
                          int max_reflections, const SegmentObserver& observer = {});

/// Tries up to `attempts` directions for one trajectory length. Returns
/// std::nullopt when every attempt was restarted; the state keeps its point.
std::optional<Vector> bw_attempt(const geometry::Body& body, ChainState& state, double length,
                                 const std::function<Vector()>& next_direction, const SamplerConfig& config,
                                 int attempts, const SegmentObserver& observer = {});

/// One Billiard Walk transition with a caller-supplied trajectory length and
/// direction source (restarts pull a fresh direction, keep the length).
Vector bw_step(const geometry::Body& body, ChainState& state, double length,
               const std::function<Vector()>& next_direction, const SamplerConfig& config,
               const SegmentObserver& observer = {});

/// One Billiard Walk transition drawing length and direction from the stream.
/// A length that fails kLengthRetryLimit directions in a row is redrawn.
Vector bw_step(const geometry::Body& body, ChainState& state, rng::RandomStream& stream, const SamplerConfig& config);

/// Hit-and-Run move along `direction` to the point at quantile `u` in (0, 1)
/// of the chord. Costs two oracle calls.
Vector hr_step(const geometry::Body& body, ChainState& state, const Vector& direction, double u);

Vector hr_step(const geometry::Body& body, ChainState& state, rng::RandomStream& stream);

/// Closed-form Billiard Walk endpoint in the unit cube (unfolded reflections).
Vector cube_bw_step(const Vector& x, double length, const Vector& direction);

struct Budget {
  enum class Kind { Samples, BoCalls };
  Kind kind = Kind::Samples;
  std::uint64_t amount = 0;

  static Budget samples(std::uint64_t n) { return {Kind::Samples, n}; }
  static Budget bo_calls(std::uint64_t n) { return {Kind::BoCalls, n}; }
};

struct ChainReport {
  SamplerKind sampler = SamplerKind::BilliardWalk;
  SamplerConfig config;
  Budget budget;
  std::string generator{rng::RandomStream::kGeneratorName};
  std::uint64_t stream_index = 0;
  Vector start;
  std::vector<Vector> samples;
  std::vector<int> reflections;  // per sample (BW)
  std::vector<int> restarts;     // per sample (BW)
  std::uint64_t bo_calls = 0;
  std::uint64_t budget_overshoot = 0;  // BO spent beyond a BO budget
  std::uint64_t restarts_nonsmooth = 0;
  std::uint64_t restarts_reflection_cap = 0;
  std::uint64_t restarts_drift = 0;
  std::uint64_t drift_nudges = 0;
  std::uint64_t length_redraws = 0;
};

/// Runs one chain until the budget is exhausted. Under a BO budget the chain
/// stops after the first sample whose completion reaches the budget.
ChainReport run_chain(const geometry::Body& body, SamplerKind sampler, const SamplerConfig& config, Budget budget,
                      std::optional<Vector> start = std::nullopt, std::uint64_t stream_index = 0);

/// Independent chains on sibling streams 0..count-1, run concurrently and
/// returned in stream order.
std::vector<ChainReport> run_chains(const geometry::Body& body, SamplerKind sampler, const SamplerConfig& config,
                                    Budget budget, std::size_t count, std::optional<Vector> start = std::nullopt);

/// Histogram of small non-negative integers (index = value).
std::vector<std::uint64_t> histogram(const std::vector<int>& values);

}  // namespace billiard::samplers
