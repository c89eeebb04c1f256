#include "billiard/diagnostics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "billiard/error.hpp"

namespace billiard::diagnostics {

ChiSquareResult chi_square_statistic(const Counts& observed, const Counts& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw Error(ErrorKind::InvalidPartition, "observed and expected need the same length >= 2");
  const double total_observed = std::accumulate(observed.begin(), observed.end(), 0.0);
  const double total_expected = std::accumulate(expected.begin(), expected.end(), 0.0);
  if (std::abs(total_observed - total_expected) > 1e-6 * std::max(1.0, total_expected))
    throw Error(ErrorKind::InvalidPartition, "observed and expected totals differ");
  ChiSquareResult result;
  result.observed = observed;
  result.expected = expected;
  result.dof = static_cast<int>(observed.size()) - 1;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw Error(ErrorKind::InvalidPartition, "expected count must be positive");
    const double diff = observed[i] - expected[i];
    result.statistic += diff * diff / expected[i];
  }
  return result;
}

ChiSquareResult chi_square_uniform(const Counts& observed) {
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  return chi_square_statistic(observed, Counts(observed.size(), total / static_cast<double>(observed.size())));
}

double chi_square_quantile(int dof, double probability) {
  if (dof < 1) throw Error(ErrorKind::InvalidConfig, "chi-square needs dof >= 1");
  return boost::math::quantile(boost::math::chi_squared_distribution<double>(dof), probability);
}

Band chi_square_band(int dof, double significance) {
  if (dof == 9 && significance == 0.10) return {3.3, 16.9};
  return {chi_square_quantile(dof, significance / 2.0), chi_square_quantile(dof, 1.0 - significance / 2.0)};
}

Counts slab_histogram(const Samples& samples, Eigen::Index axis, int bins, double lower, double upper) {
  if (bins < 1) throw Error(ErrorKind::InvalidPartition, "slab histogram needs bins >= 1");
  Counts counts(bins, 0.0);
  const double width = (upper - lower) / bins;
  for (const auto& x : samples) {
    const double v = x[axis];
    if (!(v >= lower && v < upper)) throw Error(ErrorKind::OutOfBody, "sample outside the slab range");
    const int cell = std::min(bins - 1, static_cast<int>((v - lower) / width));
    counts[cell] += 1.0;
  }
  return counts;
}

std::uint64_t cube_halving_cell(const Vector& x) {
  std::uint64_t cell = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] >= 0.5) cell |= std::uint64_t{1} << (i % 64);
  return cell;
}

CellTransition serial_correlation(const Samples& samples, int n) {
  CellTransition out;
  out.reference_stay = std::ldexp(1.0, -n);
  out.reference_leave = 1.0 - out.reference_stay;
  if (samples.size() < 2) return out;
  std::uint64_t changes = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (cube_halving_cell(samples[i]) != cube_halving_cell(samples[i - 1])) ++changes;
  out.leave_probability = static_cast<double>(changes) / static_cast<double>(samples.size() - 1);
  out.stay_probability = 1.0 - out.leave_probability;
  return out;
}

double nested_simplex_volume_fraction(int n, double alpha) {
  const double limit = 1.0 / (n + 1);
  if (alpha < 0.0 || alpha > limit + 1e-15) throw Error(ErrorKind::InvalidConfig, "alpha outside [0, 1/(n+1)]");
  return std::pow(std::max(0.0, 1.0 - (n + 1) * alpha), n);
}

std::vector<FractionPoint> nested_simplex_fraction(const Samples& samples, int n, const std::vector<double>& alphas) {
  std::vector<double> minima;
  minima.reserve(samples.size());
  for (const auto& x : samples) minima.push_back(x.minCoeff());
  std::sort(minima.begin(), minima.end());
  std::vector<FractionPoint> curve;
  for (double alpha : alphas) {
    FractionPoint point;
    point.alpha = alpha;
    point.theoretical = nested_simplex_volume_fraction(n, alpha);
    const auto first = std::lower_bound(minima.begin(), minima.end(), alpha);
    point.empirical = minima.empty() ? 0.0
                                     : static_cast<double>(minima.end() - first) / static_cast<double>(minima.size());
    curve.push_back(point);
  }
  return curve;
}

double nested_simplex_sup_deviation(const Samples& samples, int n, int grid_points) {
  std::vector<double> alphas;
  for (int i = 0; i <= grid_points; ++i) alphas.push_back(static_cast<double>(i) / grid_points / (n + 1));
  double worst = 0.0;
  for (const auto& p : nested_simplex_fraction(samples, n, alphas))
    worst = std::max(worst, std::abs(p.empirical - p.theoretical));
  return worst;
}

std::vector<double> nested_simplex_partition(int n, int cells) {
  if (cells < 2) throw Error(ErrorKind::InvalidPartition, "nested simplex partition needs >= 2 cells");
  std::vector<double> levels;
  for (int i = 0; i <= cells; ++i) {
    const double remaining = 1.0 - static_cast<double>(i) / cells;
    levels.push_back((1.0 - std::pow(remaining, 1.0 / n)) / (n + 1));
  }
  return levels;
}

Counts nested_shell_counts(const Samples& samples, int n, int cells) {
  const auto levels = nested_simplex_partition(n, cells);
  Counts counts(cells, 0.0);
  for (const auto& x : samples) {
    const double m = x.minCoeff();
    auto it = std::upper_bound(levels.begin(), levels.end(), m);
    int cell = static_cast<int>(it - levels.begin()) - 1;
    counts[std::clamp(cell, 0, cells - 1)] += 1.0;
  }
  return counts;
}

Counts simplex_vertex_cells(const Samples& samples, int n) {
  Counts counts(n + 1, 0.0);
  for (const auto& x : samples) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < x.size(); ++i)
      if (x[i] > x[best]) best = i;
    counts[best] += 1.0;
  }
  return counts;
}

Counts angular_histogram(const Samples& samples, int bins) {
  Counts counts(bins, 0.0);
  for (const auto& x : samples) {
    const double turn = (std::atan2(x[1], x[0]) + std::numbers::pi) / (2.0 * std::numbers::pi);
    counts[std::min(bins - 1, static_cast<int>(turn * bins))] += 1.0;
  }
  return counts;
}

// ---------------------------------------------------------------------------

EscapeStatistics summarize(std::vector<double> counts, std::uint64_t censored) {
  EscapeStatistics stats;
  stats.censored = censored;
  stats.trials = counts.size() + censored;
  if (!counts.empty()) {
    const double n = static_cast<double>(counts.size());
    stats.mean = std::accumulate(counts.begin(), counts.end(), 0.0) / n;
    double ss = 0.0;
    for (double c : counts) ss += (c - stats.mean) * (c - stats.mean);
    stats.stddev = counts.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    stats.max = *std::max_element(counts.begin(), counts.end());
  }
  stats.counts = std::move(counts);
  return stats;
}

namespace {

double escape_height(const geometry::Body& body, EscapeCriterion criterion) {
  if (criterion == EscapeCriterion::Unbounded) return std::numeric_limits<double>::infinity();
  const auto* angle = dynamic_cast<const geometry::AngleBody*>(&body);
  if (!angle) throw Error(ErrorKind::UnsupportedBody, "escape line criteria need an angle body");
  return angle->escape_height();
}

}  // namespace

EscapeTrial billiard_escape(const geometry::Body& body, const Vector& start, Vector direction,
                            EscapeCriterion criterion, std::uint64_t safety_cap) {
  const double line = escape_height(body, criterion);
  EscapeTrial trial;
  Vector p = start;
  for (std::uint64_t reflections = 0; reflections <= safety_cap;) {
    const auto hit = body.exit_from(p, direction);
    ++trial.bo_calls;
    if (!hit) {
      trial.reflections = reflections;
      return trial;
    }
    const Vector q = p + hit->t * direction;
    if (criterion != EscapeCriterion::Unbounded && q[1] >= line) {
      trial.reflections = reflections;
      return trial;
    }
    p = q;
    if (direction.dot(hit->normal) < -1e-12) direction = geometry::reflect_direction(direction, hit->normal);
    ++reflections;
  }
  return trial;
}

EscapeStatistics escape_statistics(const geometry::Body& body, samplers::SamplerKind sampler, std::uint64_t trials,
                                   rng::RandomStream& stream, const Vector& start, EscapeCriterion criterion,
                                   std::uint64_t safety_cap) {
  if (!body.contains(start)) throw Error(ErrorKind::NotInterior, "escape trials need an interior start");
  const double line = escape_height(body, criterion);
  std::vector<double> counts;
  std::uint64_t censored = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    if (sampler == samplers::SamplerKind::BilliardWalk) {
      const auto result = billiard_escape(body, start, body.sample_direction(stream), criterion, safety_cap);
      if (result.reflections) {
        counts.push_back(static_cast<double>(*result.reflections));
      } else {
        ++censored;
      }
      continue;
    }
    Vector x = start;
    bool escaped = false;
    std::uint64_t iteration = 0;
    while (!escaped && iteration < safety_cap) {
      ++iteration;
      const Vector d = body.sample_direction(stream);
      const auto chord = body.chord(x, d);
      if (std::isinf(chord.t_over) || std::isinf(chord.t_under)) {
        escaped = true;
        break;
      }
      if (criterion == EscapeCriterion::ChordCrossesLine) {
        const double top = std::max(x[1] + chord.t_over * d[1], x[1] + chord.t_under * d[1]);
        if (top >= line) {
          escaped = true;
          break;
        }
      }
      Vector next;
      do {
        const double u = stream.uniform01();
        next = x + (chord.t_under + u * (chord.t_over - chord.t_under)) * d;
      } while (!body.contains(next));
      x = next;
      if (criterion == EscapeCriterion::PointCrossesLine && x[1] >= line) escaped = true;
    }
    if (escaped) {
      counts.push_back(static_cast<double>(iteration));
    } else {
      ++censored;
    }
  }
  return summarize(std::move(counts), censored);
}

}  // namespace billiard::diagnostics
