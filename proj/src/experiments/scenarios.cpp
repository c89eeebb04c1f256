#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "billiard/diagnostics.hpp"
#include "billiard/error.hpp"
#include "billiard/experiments.hpp"
#include "billiard/precondition.hpp"

namespace billiard::experiments {

namespace {

using diagnostics::EscapeCriterion;
using samplers::Budget;
using samplers::SamplerKind;

constexpr double kPi = std::numbers::pi;

// Reference runs are 5000 trials; tolerances are two standard errors of that size.
constexpr double kReferenceTrials = 5000.0;

struct AngleReference {
  double alpha;
  double bw_mean, bw_std;
  double hr_mean, hr_std;
};
constexpr AngleReference kAngleTable[] = {
    {kPi / 2, 2.28, 0.87, 2.37, 1.74},
    {kPi / 4, 3.08, 1.3, 3.75, 2.98},
    {kPi / 10, 5.94, 2.93, 8.23, 7.1},
    {kPi / 50, 25.08, 14.46, 39.25, 34.54},
};

struct CuspReference {
  double epsilon;
  double bo_calls;  // 0 marks a run that must hit the cap
};
constexpr CuspReference kCuspTable[] = {
    {1e-3, 746}, {5e-4, 1851}, {4e-4, 2480}, {3e-4, 3617}, {2e-4, 6158}, {1.1e-4, 13496}, {1.01e-4, 0},
};

Json stats_json(const diagnostics::EscapeStatistics& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}, {"max", s.max}, {"censored", s.censored}, {"trials", s.trials}};
}

Json counts_json(const diagnostics::Counts& c) { return Json(c); }

Json chi_json(const diagnostics::ChiSquareResult& r, const diagnostics::Band& band) {
  return {{"statistic", r.statistic}, {"dof", r.dof},        {"observed", r.observed},
          {"band", {band.lower, band.upper}}, {"in_band", band.contains(r.statistic)}};
}

Json config_json(const samplers::SamplerConfig& c) {
  return {{"tau", c.tau},
          {"max_reflections", c.max_reflections},
          {"seed", c.seed},
          {"generator", std::string(rng::RandomStream::kGeneratorName)}};
}

Json chain_json(const samplers::ChainReport& r) {
  return {{"sampler", samplers::to_string(r.sampler)},
          {"stream", r.stream_index},
          {"samples", r.samples.size()},
          {"bo_calls", r.bo_calls},
          {"budget_overshoot", r.budget_overshoot},
          {"restarts_nonsmooth", r.restarts_nonsmooth},
          {"restarts_reflection_cap", r.restarts_reflection_cap},
          {"restarts_drift", r.restarts_drift},
          {"drift_nudges", r.drift_nudges},
          {"length_redraws", r.length_redraws}};
}

Vector uniform_in_box(rng::RandomStream& stream, const Vector& lower, const Vector& upper) {
  Vector x(lower.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = lower[i] + (upper[i] - lower[i]) * stream.uniform01();
  return x;
}

int positive_int(Params& p, const std::string& key, std::int64_t fallback, std::int64_t minimum = 1) {
  const auto v = p.integer(key, fallback);
  if (v < minimum || v > 2'000'000'000)
    throw Error(ErrorKind::InvalidConfig, "parameter " + key + " must be >= " + std::to_string(minimum));
  return static_cast<int>(v);
}

EscapeCriterion hr_criterion(const std::string& name) {
  if (name == "chord") return EscapeCriterion::ChordCrossesLine;
  if (name == "point") return EscapeCriterion::PointCrossesLine;
  throw Error(ErrorKind::InvalidConfig, "hr_criterion must be chord or point");
}

// ---------------------------------------------------------------------------

void angle(Params& p, std::uint64_t seed, RunReport& report) {
  const double alpha = p.real("alpha", kPi / 4);
  const std::string profile = p.text("profile", "literal");
  const int trials = positive_int(p, "trials", 5000);
  const std::string criterion_name = p.text("hr_criterion", "chord");
  const int bound_trials = positive_int(p, "bound_trials", 1000);
  const int law_trials = positive_int(p, "law_trials", 10000);
  const auto law_steps = p.reals("law_steps", {1, 2, 5, 10, 20});
  const double start_height = p.real("start_height", 0.1);
  p.reject_unused();
  if (profile != "literal" && profile != "geometric")
    throw Error(ErrorKind::InvalidConfig, "profile must be literal or geometric");

  const auto body = geometry::build_body(geometry::AngleTriangleDesc{
      alpha, profile == "literal" ? geometry::AngleProfile::Literal : geometry::AngleProfile::Geometric, 1.0});
  const auto& wedge = dynamic_cast<const geometry::AngleBody&>(*body);
  const Vector start = Vector::Unit(2, 1) * start_height;
  const double apex = wedge.apex_angle();
  report.diagnostics["apex_angle"] = apex;

  // Reflections of one billiard trajectory and HR iterations until the escape line.
  rng::RandomStream bw_stream(seed, 0), hr_stream(seed, 1);
  const auto bw = diagnostics::escape_statistics(*body, SamplerKind::BilliardWalk, trials, bw_stream, start,
                                                 EscapeCriterion::ChordCrossesLine);
  const auto hr = diagnostics::escape_statistics(*body, SamplerKind::HitAndRun, trials, hr_stream, start,
                                                 hr_criterion(criterion_name));
  Json bw_json = stats_json(bw);
  bw_json["mean_bo_calls"] = bw.mean + 1.0;  // the final call finds the open side
  report.diagnostics["bw_escape"] = bw_json;
  report.diagnostics["hr_escape"] = stats_json(hr);

  for (const auto& ref : kAngleTable) {
    if (std::abs(ref.alpha - alpha) > 1e-12 || profile != "literal" || criterion_name != "chord") continue;
    const double bw_tol = 2.0 * ref.bw_std / std::sqrt(kReferenceTrials);
    const double hr_tol = 2.0 * ref.hr_std / std::sqrt(kReferenceTrials);
    report.checks.push_back(near("bw_mean_bo_calls", bw.mean + 1.0, ref.bw_mean, bw_tol));
    report.checks.push_back(near("hr_mean_iterations", hr.mean, ref.hr_mean, hr_tol));
  }
  report.checks.push_back(within("censored_trials", static_cast<double>(bw.censored + hr.censored), 0, 0));

  // Hard bound on reflections before the trajectory leaves for good.
  rng::RandomStream bound_stream(seed, 2);
  const auto unbounded = diagnostics::escape_statistics(*body, SamplerKind::BilliardWalk, bound_trials, bound_stream,
                                                        start, EscapeCriterion::Unbounded);
  const double bound = std::ceil(kPi / apex);
  report.diagnostics["bw_reflections_to_infinity"] = stats_json(unbounded);
  report.checks.push_back(within("bw_max_reflections_to_infinity", unbounded.max, 0.0, bound));

  // HR: the chord is unbounded with probability apex / pi per iteration.
  rng::RandomStream law_stream(seed, 3);
  const auto law = diagnostics::escape_statistics(*body, SamplerKind::HitAndRun, law_trials, law_stream, start,
                                                  EscapeCriterion::Unbounded);
  Json law_json = Json::array();
  for (double steps : law_steps) {
    const auto escaped = std::count_if(law.counts.begin(), law.counts.end(), [&](double c) { return c <= steps; });
    const double empirical = static_cast<double>(escaped) / law_trials;
    const double theory = 1.0 - std::pow(1.0 - apex / kPi, steps);
    law_json.push_back({{"N", steps}, {"empirical", empirical}, {"theory", theory}});
    report.checks.push_back(near("hr_escape_within_" + std::to_string(static_cast<int>(steps)), empirical, theory,
                                 0.02));
  }
  report.diagnostics["hr_escape_law"] = law_json;
}

void orthant(Params& p, std::uint64_t seed, RunReport& report) {
  const int n = positive_int(p, "n", 8, 2);
  const int trials = positive_int(p, "trials", 1000);
  const int hr_trials = positive_int(p, "hr_trials", 1000000);
  p.reject_unused();
  const auto body = geometry::build_body(geometry::OrthantDesc{n});

  rng::RandomStream bw_stream(seed, 0);
  std::vector<double> reflections;
  std::uint64_t censored = 0;
  for (int k = 0; k < trials; ++k) {
    const Vector start = uniform_in_box(bw_stream, Vector::Zero(n), Vector::Ones(n));
    const auto trial = diagnostics::billiard_escape(*body, start, body->sample_direction(bw_stream),
                                                    EscapeCriterion::Unbounded, 1000000);
    if (trial.reflections) {
      reflections.push_back(static_cast<double>(*trial.reflections));
    } else {
      ++censored;
    }
  }
  const auto bw = diagnostics::summarize(std::move(reflections), censored);
  report.diagnostics["bw_reflections_to_infinity"] = stats_json(bw);
  report.checks.push_back(within("bw_max_reflections", bw.max, 0.0, n));
  report.checks.push_back(within("bw_censored", static_cast<double>(bw.censored), 0, 0));

  // HR iterations are capped at n: censored trials did not leave within n steps.
  rng::RandomStream hr_stream(seed, 1);
  const auto hr = diagnostics::escape_statistics(*body, SamplerKind::HitAndRun, hr_trials, hr_stream,
                                                 Vector::Ones(n), EscapeCriterion::Unbounded, n);
  const double total = hr_trials;
  const double single = std::count(hr.counts.begin(), hr.counts.end(), 1.0) / total;
  const double within_n = static_cast<double>(hr.counts.size()) / total;
  const auto sigma = [&](double q) { return std::sqrt(q * (1.0 - q) / total); };

  const double p1 = std::ldexp(1.0, 1 - n);
  const double reference = std::ldexp(1.0, 2 - n) * (1.0 - std::ldexp(1.0, -n));
  const double independent = 1.0 - std::pow(1.0 - p1, n);
  report.diagnostics["hr_escape"] = {{"single_step", single},
                                     {"within_n_steps", within_n},
                                     {"single_step_theory", p1},
                                     {"within_n_reference", reference},
                                     {"within_n_independent_steps", independent}};
  report.checks.push_back(near("hr_single_step", single, p1, 3.0 * sigma(p1)));
  report.checks.push_back(near("hr_within_n_steps_reference", within_n, reference, 3.0 * sigma(reference)));
  report.checks.push_back(
      near("hr_within_n_steps_independent", within_n, independent, 3.0 * sigma(independent)));
}

void cusp(Params& p, std::uint64_t, RunReport& report) {
  std::vector<double> defaults;
  for (const auto& ref : kCuspTable) defaults.push_back(ref.epsilon);
  const auto epsilons = p.reals("epsilon", defaults);
  const int cap = positive_int(p, "cap", 1000000);
  const double length = p.real("length", 1.0);
  p.reject_unused();
  const auto body = geometry::build_body(geometry::ConcaveCuspDesc{});

  Json runs = Json::array();
  for (double eps : epsilons) {
    const Vector start = (Vector(2) << 0.9, eps).finished();
    const Vector direction = (Vector(2) << -1.0, 0.0).finished();
    const auto t = samplers::trace_billiard(*body, start, direction, length, cap);
    runs.push_back({{"epsilon", eps},
                    {"status", samplers::to_string(t.status)},
                    {"reflections", t.reflections},
                    {"bo_calls", t.bo_calls},
                    {"drift_nudges", t.drift_nudges}});
    for (const auto& ref : kCuspTable) {
      if (std::abs(ref.epsilon - eps) > 1e-15) continue;
      const std::string tag = "eps_" + Json(eps).dump();
      if (ref.bo_calls == 0) {
        report.checks.push_back(within(tag + "_censored", t.status == samplers::TraceStatus::ReflectionCap, 1, 1));
      } else {
        const double value = t.status == samplers::TraceStatus::Completed ? static_cast<double>(t.bo_calls) : -1.0;
        report.checks.push_back(near(tag + "_bo_calls", value, ref.bo_calls, 0.05 * ref.bo_calls));
      }
    }
  }
  report.diagnostics["runs"] = runs;
}

void strip(Params& p, std::uint64_t seed, RunReport& report) {
  const double M = p.real("M", 1000.0);
  const int bo = positive_int(p, "bo_per_walker", 100, 2);
  const int walkers = positive_int(p, "walkers", 10000);
  p.reject_unused();
  const auto body = geometry::build_body(geometry::StripDesc{M});

  // Horizontal travel: the sum of |dx1| over every straight segment walked.
  rng::RandomStream bw_stream(seed, 0), hr_stream(seed, 1);
  double bw_travel = 0.0, hr_travel = 0.0;
  std::uint64_t bw_bo = 0, hr_bo = 0, incomplete = 0;
  for (int w = 0; w < walkers; ++w) {
    const Vector start = (Vector(2) << 0.0, bw_stream.uniform01()).finished();
    const auto t = samplers::trace_billiard(
        *body, start, body->sample_direction(bw_stream), std::numeric_limits<double>::infinity(), bo - 1,
        [&](const Vector& a, const Vector& b) { bw_travel += std::abs(b[0] - a[0]); });
    bw_bo += t.bo_calls;
    if (t.status != samplers::TraceStatus::ReflectionCap) ++incomplete;

    samplers::ChainState state = samplers::initial_state(*body, (Vector(2) << 0.0, hr_stream.uniform01()).finished());
    for (int k = 0; k < bo / 2; ++k) {
      const double before = state.current[0];
      samplers::hr_step(*body, state, hr_stream);
      hr_travel += std::abs(state.current[0] - before);
    }
    hr_bo += state.bo_calls;
  }
  const double bw_rate = bw_travel / static_cast<double>(bw_bo);
  const double hr_rate = hr_travel / static_cast<double>(hr_bo);
  report.bo_calls = bw_bo + hr_bo;
  report.diagnostics["bw"] = {{"bo_calls", bw_bo}, {"travel_per_bo", bw_rate}, {"stopped_early", incomplete}};
  report.diagnostics["hr"] = {{"bo_calls", hr_bo}, {"travel_per_bo", hr_rate}};
  report.diagnostics["ratio"] = bw_rate / hr_rate;
  report.checks.push_back(near("bw_hr_travel_ratio", bw_rate / hr_rate, 6.0, 1.2));
}

void cube(Params& p, std::uint64_t seed, RunReport& report) {
  const int n = positive_int(p, "n", 10, 2);
  const int budget = positive_int(p, "bo_budget", 20000);
  const double tau = p.real("tau", std::sqrt(static_cast<double>(n)));
  const int R = positive_int(p, "max_reflections", 100);
  const bool keep = p.integer("keep_samples", 0) != 0;
  p.reject_unused();
  const auto body = geometry::build_body(geometry::UnitCubeDesc{n});
  const samplers::SamplerConfig config{tau, R, seed};
  report.config = config_json(config);

  rng::RandomStream start_stream(seed, 2);
  const Vector start = uniform_in_box(start_stream, Vector::Zero(n), Vector::Ones(n));
  const auto bw = samplers::run_chain(*body, SamplerKind::BilliardWalk, config, Budget::bo_calls(budget), start, 0);
  const auto hr = samplers::run_chain(*body, SamplerKind::HitAndRun, config, Budget::bo_calls(budget), start, 1);
  report.bo_calls = bw.bo_calls + hr.bo_calls;
  if (keep) {
    report.samples = bw.samples;
    report.reflections = bw.reflections;
  }

  const auto band = diagnostics::chi_square_band(9);
  int bw_pass = 0, hr_fail = 0;
  Json bw_chi = Json::array(), hr_chi = Json::array();
  for (int axis = 0; axis < n; ++axis) {
    const auto b = diagnostics::chi_square_uniform(diagnostics::slab_histogram(bw.samples, axis, 10));
    const auto h = diagnostics::chi_square_uniform(diagnostics::slab_histogram(hr.samples, axis, 10));
    bw_pass += band.contains(b.statistic);
    hr_fail += !band.contains(h.statistic);
    bw_chi.push_back(chi_json(b, band));
    hr_chi.push_back(chi_json(h, band));
  }
  const auto bw_cells = diagnostics::serial_correlation(bw.samples, n);
  const auto hr_cells = diagnostics::serial_correlation(hr.samples, n);
  const auto cells_json = [](const diagnostics::CellTransition& c) {
    return Json{{"leave", c.leave_probability},
                {"stay", c.stay_probability},
                {"reference_leave", c.reference_leave},
                {"reference_stay", c.reference_stay}};
  };
  report.diagnostics["bw"] = chain_json(bw);
  report.diagnostics["hr"] = chain_json(hr);
  report.diagnostics["bw"]["slab_chi_square"] = bw_chi;
  report.diagnostics["hr"]["slab_chi_square"] = hr_chi;
  report.diagnostics["bw"]["cells"] = cells_json(bw_cells);
  report.diagnostics["hr"]["cells"] = cells_json(hr_cells);
  report.diagnostics["bw"]["reflection_histogram"] = samplers::histogram(bw.reflections);

  if (n == 10 && budget == 20000) report.checks.push_back(near("bw_samples", bw.samples.size(), 2148, 0.15 * 2148));
  report.checks.push_back(within("bw_slab_tests_passed", bw_pass, 0.8 * n, n));
  report.checks.push_back(within("hr_slab_tests_failed", hr_fail, 0.8 * n, n));
  report.checks.push_back(near("bw_leave_probability", bw_cells.leave_probability, bw_cells.reference_leave, 0.15));
  report.checks.push_back(within("hr_stay_probability", hr_cells.stay_probability, 0.5, 1.0));
}

void simplex(Params& p, std::uint64_t seed, RunReport& report) {
  const int n = positive_int(p, "n", 10, 2);
  const int budget = positive_int(p, "bo_budget", 20000);
  const int seeds = positive_int(p, "seeds", 20);
  const int cells = positive_int(p, "cells", 10, 2);
  const double threshold = p.real("bw_threshold", 16.9);
  const double hr_threshold = p.real("hr_threshold", 100.0);
  p.reject_unused();
  const auto body = geometry::build_body(geometry::StandardSimplexDesc{n});
  const Vector start = body->interior_point();
  report.config = config_json(samplers::default_config(*body, seed));

  int bw_shell = 0, bw_vertex = 0, hr_shell = 0, hr_vertex = 0;
  Json runs = Json::array();
  for (int k = 0; k < seeds; ++k) {
    const auto config = samplers::default_config(*body, seed + k);
    const auto bw = samplers::run_chain(*body, SamplerKind::BilliardWalk, config, Budget::bo_calls(budget), start, 0);
    const auto hr = samplers::run_chain(*body, SamplerKind::HitAndRun, config, Budget::bo_calls(budget), start, 1);
    report.bo_calls += bw.bo_calls + hr.bo_calls;
    const auto shell = [&](const auto& s) {
      return diagnostics::chi_square_uniform(diagnostics::nested_shell_counts(s, n, cells));
    };
    const auto vertex = [&](const auto& s) {
      return diagnostics::chi_square_uniform(diagnostics::simplex_vertex_cells(s, n));
    };
    const auto bs = shell(bw.samples), bv = vertex(bw.samples);
    const auto hs = shell(hr.samples), hv = vertex(hr.samples);
    bw_shell += bs.statistic < threshold;
    bw_vertex += bv.statistic < threshold;
    hr_shell += hs.statistic > hr_threshold;
    hr_vertex += hv.statistic > hr_threshold;
    runs.push_back({{"seed", seed + k},
                    {"bw_samples", bw.samples.size()},
                    {"hr_samples", hr.samples.size()},
                    {"bw_shell", bs.statistic},
                    {"bw_vertex", bv.statistic},
                    {"hr_shell", hs.statistic},
                    {"hr_vertex", hv.statistic},
                    {"bw_shell_counts", counts_json(bs.observed)},
                    {"hr_shell_counts", counts_json(hs.observed)}});
  }
  report.diagnostics["runs"] = runs;
  const double s = seeds;
  report.checks.push_back(within("bw_shell_pass_fraction", bw_shell / s, 0.8, 1.0));
  report.checks.push_back(within("bw_vertex_pass_fraction", bw_vertex / s, 0.8, 1.0));
  report.checks.push_back(within("hr_shell_fail_fraction", hr_shell / s, 0.8, 1.0));
  report.checks.push_back(within("hr_vertex_fail_fraction", hr_vertex / s, 0.8, 1.0));
}

void simplex_cdf(Params& p, std::uint64_t seed, RunReport& report) {
  const int n = positive_int(p, "n", 50, 2);
  const int samples = positive_int(p, "samples", 300);
  const int seeds = positive_int(p, "seeds", 20);
  const int grid = positive_int(p, "grid", 1000);
  p.reject_unused();
  const auto body = geometry::build_body(geometry::StandardSimplexDesc{n});
  const Vector start = body->interior_point();
  report.config = config_json(samplers::default_config(*body, seed));

  int dominated = 0;
  Json runs = Json::array();
  for (int k = 0; k < seeds; ++k) {
    const auto config = samplers::default_config(*body, seed + k);
    const auto bw = samplers::run_chain(*body, SamplerKind::BilliardWalk, config, Budget::samples(samples), start, 0);
    const auto hr = samplers::run_chain(*body, SamplerKind::HitAndRun, config, Budget::samples(samples), start, 1);
    report.bo_calls += bw.bo_calls + hr.bo_calls;
    const double bw_dev = diagnostics::nested_simplex_sup_deviation(bw.samples, n, grid);
    const double hr_dev = diagnostics::nested_simplex_sup_deviation(hr.samples, n, grid);
    dominated += bw_dev < hr_dev;
    runs.push_back({{"seed", seed + k}, {"bw_sup_deviation", bw_dev}, {"hr_sup_deviation", hr_dev}});
    if (k == 0) {
      // One curve set for plotting.
      std::vector<double> alphas;
      for (int i = 0; i <= 100; ++i) alphas.push_back(i / 100.0 / (n + 1));
      Json curve = Json::array();
      const auto b = diagnostics::nested_simplex_fraction(bw.samples, n, alphas);
      const auto h = diagnostics::nested_simplex_fraction(hr.samples, n, alphas);
      for (std::size_t i = 0; i < alphas.size(); ++i)
        curve.push_back({{"alpha", alphas[i]}, {"f", b[i].theoretical}, {"bw", b[i].empirical}, {"hr", h[i].empirical}});
      report.diagnostics["curve"] = curve;
    }
  }
  report.diagnostics["runs"] = runs;
  report.checks.push_back(within("bw_closer_fraction", static_cast<double>(dominated) / seeds, 0.9, 1.0));
}

void toroid(Params& p, std::uint64_t seed, RunReport& report) {
  const int n = positive_int(p, "n", 10, 3);
  const double r = p.real("r", 1.0 / 3.0);
  const int samples = positive_int(p, "samples", 500);
  const int bins = positive_int(p, "bins", 12, 2);
  const bool keep = p.integer("keep_samples", 0) != 0;
  const auto body = geometry::build_body(geometry::ToroidDesc{n, r});
  auto config = samplers::default_config(*body, seed);
  config.tau = p.real("tau", config.tau);
  config.max_reflections = positive_int(p, "max_reflections", config.max_reflections);
  p.reject_unused();
  report.config = config_json(config);

  const int bound = geometry::toroid_path_bound(r);
  report.diagnostics["path_bound"] = bound;
  if (std::abs(r - 1.0 / 3.0) < 1e-12) report.checks.push_back(near("path_bound", bound, 3, 0));

  const Vector start = body->interior_point();
  const auto bw = samplers::run_chain(*body, SamplerKind::BilliardWalk, config, Budget::samples(samples), start, 0);
  // As many HR points as BW spent oracle calls, the comparison the reference picture makes.
  const auto hr = samplers::run_chain(*body, SamplerKind::HitAndRun, config, Budget::samples(bw.bo_calls), start, 1);
  report.bo_calls = bw.bo_calls + hr.bo_calls;
  if (keep) {
    report.samples = bw.samples;
    report.reflections = bw.reflections;
  }
  const auto band = diagnostics::chi_square_band(bins - 1);
  const auto bw_chi = diagnostics::chi_square_uniform(diagnostics::angular_histogram(bw.samples, bins));
  const auto hr_chi = diagnostics::chi_square_uniform(diagnostics::angular_histogram(hr.samples, bins));
  report.diagnostics["bw"] = chain_json(bw);
  report.diagnostics["hr"] = chain_json(hr);
  report.diagnostics["bw"]["angular_chi_square"] = chi_json(bw_chi, band);
  report.diagnostics["hr"]["angular_chi_square"] = chi_json(hr_chi, band);
  if (n == 10 && samples == 500) report.checks.push_back(near("bw_bo_calls", bw.bo_calls, 1764, 0.15 * 1764));
  report.checks.push_back(within("bw_angular_chi_square", bw_chi.statistic, band.lower, band.upper));
}

void ellipse(Params& p, std::uint64_t seed, RunReport& report) {
  const int launches = positive_int(p, "launches", 1000);
  const double length = p.real("length", 5.0);
  const int samples = positive_int(p, "samples", 1000);
  p.reject_unused();
  if (!(length >= 4.0)) throw Error(ErrorKind::InvalidConfig, "launch length must be >= 4");

  const Vector focus = (Vector(2) << -std::sqrt(3.0), 0.0).finished();
  const std::pair<const char*, geometry::TruncationVariant> variants[] = {
      {"convex", geometry::TruncationVariant::Convex}, {"nonconvex", geometry::TruncationVariant::Nonconvex}};
  std::uint64_t stream_index = 0;
  for (const auto& [name, variant] : variants) {
    const auto body = geometry::build_body(geometry::TruncatedEllipseDesc{variant});
    const auto config = samplers::default_config(*body, seed);

    // Rays through one focus reflect into the other, which is the corner.
    rng::RandomStream launch_stream(seed, stream_index++);
    int nonsmooth = 0;
    for (int k = 0; k < launches; ++k) {
      const auto t = samplers::trace_billiard(*body, focus, body->sample_direction(launch_stream), length,
                                              config.max_reflections);
      nonsmooth += t.status == samplers::TraceStatus::Nonsmooth;
    }

    rng::RandomStream start_stream(seed, stream_index++);
    Vector start;
    const Vector lo = (Vector(2) << -2.0, -1.0).finished(), hi = (Vector(2) << 2.0, 1.0).finished();
    do start = uniform_in_box(start_stream, lo, hi);
    while (!body->contains(start));
    const auto chain = samplers::run_chain(*body, SamplerKind::BilliardWalk, config, Budget::samples(samples), start,
                                           stream_index++);
    report.bo_calls += chain.bo_calls;
    report.diagnostics[name] = chain_json(chain);
    report.diagnostics[name]["focus_launches"] = launches;
    report.diagnostics[name]["focus_nonsmooth"] = nonsmooth;
    report.checks.push_back(within(std::string(name) + "_focus_nonsmooth_fraction",
                                   static_cast<double>(nonsmooth) / launches, 1.0 / launches, 1.0));
    report.checks.push_back(
        within(std::string(name) + "_random_start_nonsmooth_restarts", chain.restarts_nonsmooth, 0, 0));
  }
}

void custom(Params& p, std::uint64_t seed, RunReport& report) {
  SampleRequest request;
  const std::string path = p.text("body", "");
  if (path.empty()) throw Error(ErrorKind::InvalidConfig, "custom scenario needs body=<file.json>");
  request.body = load_json(path);
  request.sampler = samplers::parse_sampler(p.text("sampler", "bw"));
  if (p.has("tau")) request.tau = p.real("tau", 0.0);
  if (p.has("max_reflections")) request.max_reflections = positive_int(p, "max_reflections", 1);
  if (p.has("bo_budget")) {
    request.budget = Budget::bo_calls(positive_int(p, "bo_budget", 1));
  } else {
    request.budget = Budget::samples(positive_int(p, "samples", 1000));
  }
  const std::string precondition = p.text("precondition", "none");
  if (precondition != "none" && precondition != "dikin")
    throw Error(ErrorKind::InvalidConfig, "precondition must be none or dikin");
  request.dikin = precondition == "dikin";
  request.seed = seed;
  p.reject_unused();
  const auto sampled = run_sampler(request);
  report.config = sampled.config;
  report.samples = sampled.samples;
  report.reflections = sampled.reflections;
  report.bo_calls = sampled.bo_calls;
  report.diagnostics = sampled.diagnostics;
}

using Runner = void (*)(Params&, std::uint64_t, RunReport&);
const std::pair<const char*, Runner> kScenarios[] = {
    {"angle", angle},   {"orthant", orthant},       {"cusp", cusp},     {"strip", strip},     {"cube", cube},
    {"simplex", simplex}, {"simplex-cdf", simplex_cdf}, {"toroid", toroid}, {"ellipse", ellipse}, {"custom", custom},
};

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, runner] : kScenarios) names.emplace_back(name);
  return names;
}

RunReport run_scenario(Scenario scenario) {
  for (const auto& [name, runner] : kScenarios) {
    if (scenario.name != name) continue;
    RunReport report;
    report.scenario = scenario.name;
    report.seed = scenario.seed;
    report.config = {{"seed", scenario.seed}, {"generator", std::string(rng::RandomStream::kGeneratorName)}};
    const auto begin = std::chrono::steady_clock::now();
    runner(scenario.params, scenario.seed, report);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    report.parameters = scenario.params.resolved();
    return report;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown experiment '" + scenario.name + "'");
}

RunReport run_sampler(const SampleRequest& request) {
  const auto begin = std::chrono::steady_clock::now();
  RunReport report;
  report.scenario = "sample";
  report.seed = request.seed;
  report.parameters = {{"body", request.body}, {"sampler", samplers::to_string(request.sampler)}};

  auto body = geometry::build_body(body_from_json(request.body));
  std::optional<precondition::DikinMap> rounding;
  if (request.dikin) {
    const auto* polytope = dynamic_cast<const geometry::PolytopeBody*>(body.get());
    if (!polytope) throw Error(ErrorKind::UnsupportedBody, "dikin rounding needs a polytope body");
    rounding = precondition::dikin_map(*polytope);
    body = precondition::transform_polytope(*polytope, *rounding);
    report.diagnostics["dikin"] = {{"center", std::vector<double>(rounding->center.data(),
                                                                  rounding->center.data() + rounding->center.size())},
                                   {"condition_number", rounding->condition_number},
                                   {"det_transform", rounding->det_transform}};
  }
  auto config = body->bounded() ? samplers::default_config(*body, request.seed)
                                : samplers::SamplerConfig{1.0, static_cast<int>(10 * body->dimension()), request.seed};
  if (request.tau) config.tau = *request.tau;
  if (request.max_reflections) config.max_reflections = *request.max_reflections;
  samplers::validate(config);
  report.config = config_json(config);
  report.config["precondition"] = request.dikin ? "dikin" : "none";
  report.parameters["budget"] = {{"kind", request.budget.kind == Budget::Kind::Samples ? "samples" : "bo_calls"},
                                 {"amount", request.budget.amount}};

  const auto chain = samplers::run_chain(*body, request.sampler, config, request.budget);
  report.samples = chain.samples;
  if (rounding)
    for (auto& s : report.samples) s = rounding->to_original(s);
  report.reflections = chain.reflections;
  report.bo_calls = chain.bo_calls;
  report.diagnostics["chain"] = chain_json(chain);
  if (request.sampler == SamplerKind::BilliardWalk)
    report.diagnostics["chain"]["reflection_histogram"] = samplers::histogram(chain.reflections);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  return report;
}

}  // namespace billiard::experiments
