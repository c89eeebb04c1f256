#include "billiard/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "billiard/error.hpp"

namespace billiard::samplers {

using geometry::Body;

SamplerConfig default_config(const Body& body, std::uint64_t seed) {
  if (!body.bounded())
    throw Error(ErrorKind::InvalidConfig, "unbounded body: tau has no default and must be supplied");
  Eigen::Index intrinsic = body.dimension();
  if (body.kind() == "simplex") intrinsic -= 1;
  return {*body.diameter(), static_cast<int>(10 * intrinsic), seed};
}

void validate(const SamplerConfig& config) {
  if (!(config.tau > 0.0) || std::isnan(config.tau)) throw Error(ErrorKind::InvalidConfig, "tau must be positive");
  if (config.max_reflections < 1) throw Error(ErrorKind::InvalidConfig, "max reflections must be >= 1");
}

const char* to_string(SamplerKind kind) { return kind == SamplerKind::BilliardWalk ? "bw" : "hr"; }

SamplerKind parse_sampler(const std::string& name) {
  if (name == "bw") return SamplerKind::BilliardWalk;
  if (name == "hr") return SamplerKind::HitAndRun;
  throw Error(ErrorKind::InvalidConfig, "unknown sampler '" + name + "' (expected bw or hr)");
}

const char* to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::Completed: return "completed";
    case TraceStatus::Nonsmooth: return "nonsmooth";
    case TraceStatus::ReflectionCap: return "reflection-cap";
    case TraceStatus::Escaped: return "escaped";
    case TraceStatus::Drift: return "drift";
  }
  return "unknown";
}

ChainState initial_state(const Body& body, const Vector& start) {
  if (start.size() != body.dimension()) throw Error(ErrorKind::DimensionMismatch, "start point dimension");
  if (!body.contains(start)) throw Error(ErrorKind::NotInterior, "start point must be interior");
  ChainState state;
  state.current = start;
  return state;
}

Trajectory trace_billiard(const Body& body, const Vector& start, Vector direction, double length, int max_reflections,
                          const SegmentObserver& observer) {
  Trajectory out;
  Vector p = start;
  double remaining = length;
  const double nudge = kDriftTolerance * body.scale();
  std::optional<Vector> last_normal;
  bool nudged_here = false;

  const auto finish = [&](TraceStatus status) {
    out.status = status;
    out.end = p;
    out.direction = direction;
    return out;
  };

  if (remaining == 0.0) return finish(TraceStatus::Completed);

  for (;;) {
    const auto hit = body.exit_from(p, direction);
    ++out.bo_calls;
    const double step = hit ? hit->t : std::numeric_limits<double>::infinity();
    if (std::isinf(step) && std::isinf(remaining)) {
      if (observer) observer(p, p + direction);
      return finish(TraceStatus::Escaped);
    }

    // Segment start must be interior: probe the segment midpoint.
    const double probe = 0.5 * std::min(step, remaining);
    if (!body.contains(p + probe * direction)) {
      if (last_normal && !nudged_here) {
        p += nudge * *last_normal;
        nudged_here = true;
        ++out.drift_nudges;
        continue;
      }
      return finish(TraceStatus::Drift);
    }
    nudged_here = false;

    if (step > remaining) {
      const Vector end = p + remaining * direction;
      if (observer) observer(p, end);
      out.travelled += remaining;
      p = end;
      if (!body.contains(p)) return finish(TraceStatus::Drift);
      return finish(TraceStatus::Completed);
    }

    const Vector hit_point = p + step * direction;
    if (observer) observer(p, hit_point);
    p = hit_point;
    remaining -= step;
    out.travelled += step;
    if (!hit->smooth) return finish(TraceStatus::Nonsmooth);
    if (++out.reflections > max_reflections) return finish(TraceStatus::ReflectionCap);
    // Grazing incidence leaves the direction unchanged.
    if (direction.dot(hit->normal) < -1e-12) direction = geometry::reflect_direction(direction, hit->normal);
    last_normal = hit->normal;
  }
}

std::optional<Vector> bw_attempt(const Body& body, ChainState& state, double length,
                                 const std::function<Vector()>& next_direction, const SamplerConfig& config,
                                 int attempts, const SegmentObserver& observer) {
  if (!body.bounded()) throw Error(ErrorKind::UnsupportedBody, "billiard walk needs a bounded body");
  for (int restarts = 0; restarts < attempts; ++restarts) {
    const auto trajectory =
        trace_billiard(body, state.current, next_direction(), length, config.max_reflections, observer);
    state.bo_calls += trajectory.bo_calls;
    state.drift_nudges += trajectory.drift_nudges;
    switch (trajectory.status) {
      case TraceStatus::Completed:
        state.current = trajectory.end;
        state.reflections_last = trajectory.reflections;
        state.restarts_last = restarts;
        ++state.samples_emitted;
        return state.current;
      case TraceStatus::Nonsmooth: ++state.restarts_nonsmooth; break;
      case TraceStatus::ReflectionCap: ++state.restarts_reflection_cap; break;
      case TraceStatus::Drift: ++state.restarts_drift; break;
      case TraceStatus::Escaped:
        throw Error(ErrorKind::UnsupportedBody, "trajectory escaped a body declared bounded");
    }
  }
  state.restarts_last = attempts;
  return std::nullopt;
}

namespace {

[[noreturn]] void pathological(const ChainState& state, double length) {
  throw Error(ErrorKind::PathologicalGeometry,
              "more than " + std::to_string(kRestartSafetyCap) + " restarts for one sample (length " +
                  std::to_string(length) + ", nonsmooth " + std::to_string(state.restarts_nonsmooth) +
                  ", reflection cap " + std::to_string(state.restarts_reflection_cap) + ", drift " +
                  std::to_string(state.restarts_drift) + ")");
}

}  // namespace

Vector bw_step(const Body& body, ChainState& state, double length, const std::function<Vector()>& next_direction,
               const SamplerConfig& config, const SegmentObserver& observer) {
  if (auto next = bw_attempt(body, state, length, next_direction, config, kRestartSafetyCap + 1, observer))
    return *next;
  pathological(state, length);
}

Vector bw_step(const Body& body, ChainState& state, rng::RandomStream& stream, const SamplerConfig& config) {
  validate(config);
  const auto direction = [&] { return body.sample_direction(stream); };
  int restarts = 0;
  for (;;) {
    const double length = rng::trajectory_length(stream, config.tau);
    const int attempts = std::min(kLengthRetryLimit, kRestartSafetyCap + 1 - restarts);
    if (auto next = bw_attempt(body, state, length, direction, config, attempts)) {
      state.restarts_last += restarts;
      return *next;
    }
    restarts += attempts;
    if (restarts > kRestartSafetyCap) pathological(state, length);
    ++state.length_redraws;
  }
}

Vector hr_step(const Body& body, ChainState& state, const Vector& direction, double u) {
  const auto chord = body.chord(state.current, direction);
  state.bo_calls += 2;
  if (std::isinf(chord.t_under) || std::isinf(chord.t_over))
    throw Error(ErrorKind::UnsupportedBody, "hit-and-run needs a body bounded along the sampled line");
  state.current = state.current + (chord.t_under + u * (chord.t_over - chord.t_under)) * direction;
  ++state.samples_emitted;
  return state.current;
}

Vector hr_step(const Body& body, ChainState& state, rng::RandomStream& stream) {
  const Vector direction = body.sample_direction(stream);
  const auto chord = body.chord(state.current, direction);
  state.bo_calls += 2;
  if (std::isinf(chord.t_under) || std::isinf(chord.t_over))
    throw Error(ErrorKind::UnsupportedBody, "hit-and-run needs a body bounded along the sampled line");
  // Redraw in the probability-zero case that rounding lands on the boundary.
  for (;;) {
    const double u = stream.uniform01();
    const Vector candidate = state.current + (chord.t_under + u * (chord.t_over - chord.t_under)) * direction;
    if (body.contains(candidate)) {
      state.current = candidate;
      ++state.samples_emitted;
      return state.current;
    }
  }
}

Vector cube_bw_step(const Vector& x, double length, const Vector& direction) {
  Vector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double free = x[i] + length * direction[i];
    const double k = std::floor(free);
    const double frac = free - k;
    y[i] = std::fmod(k, 2.0) == 0.0 ? frac : 1.0 - frac;
  }
  return y;
}

ChainReport run_chain(const Body& body, SamplerKind sampler, const SamplerConfig& config, Budget budget,
                      std::optional<Vector> start, std::uint64_t stream_index) {
  validate(config);
  ChainReport report;
  report.sampler = sampler;
  report.config = config;
  report.budget = budget;
  report.stream_index = stream_index;
  report.start = start ? *start : body.interior_point();
  ChainState state = initial_state(body, report.start);
  rng::RandomStream stream(config.seed, stream_index);

  const auto exhausted = [&] {
    return budget.kind == Budget::Kind::Samples ? state.samples_emitted >= budget.amount
                                                : state.bo_calls >= budget.amount;
  };
  while (!exhausted()) {
    if (sampler == SamplerKind::BilliardWalk) {
      report.samples.push_back(bw_step(body, state, stream, config));
      report.reflections.push_back(state.reflections_last);
      report.restarts.push_back(state.restarts_last);
    } else {
      report.samples.push_back(hr_step(body, state, stream));
    }
  }
  report.bo_calls = state.bo_calls;
  if (budget.kind == Budget::Kind::BoCalls && state.bo_calls > budget.amount)
    report.budget_overshoot = state.bo_calls - budget.amount;
  report.restarts_nonsmooth = state.restarts_nonsmooth;
  report.restarts_reflection_cap = state.restarts_reflection_cap;
  report.restarts_drift = state.restarts_drift;
  report.drift_nudges = state.drift_nudges;
  report.length_redraws = state.length_redraws;
  return report;
}

std::vector<ChainReport> run_chains(const Body& body, SamplerKind sampler, const SamplerConfig& config, Budget budget,
                                    std::size_t count, std::optional<Vector> start) {
  std::vector<std::future<ChainReport>> pending;
  pending.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pending.push_back(std::async(std::launch::async, [&, i] {
      return run_chain(body, sampler, config, budget, start, static_cast<std::uint64_t>(i));
    }));
  }
  std::vector<ChainReport> reports;
  reports.reserve(count);
  for (auto& f : pending) reports.push_back(f.get());
  return reports;
}

std::vector<std::uint64_t> histogram(const std::vector<int>& values) {
  std::vector<std::uint64_t> counts;
  for (int v : values) {
    if (v < 0) continue;
    if (static_cast<std::size_t>(v) >= counts.size()) counts.resize(v + 1, 0);
    ++counts[v];
  }
  return counts;
}

}  // namespace billiard::samplers
