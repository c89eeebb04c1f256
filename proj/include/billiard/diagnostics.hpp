#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/rng.hpp"
#include "billiard/samplers.hpp"
#include "billiard/types.hpp"

namespace billiard::diagnostics {

using Counts = std::vector<double>;
using Samples = std::vector<Vector>;

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  Counts observed;
  Counts expected;
};

/// Pearson statistic sum (o - e)^2 / e with dof = bins - 1.
ChiSquareResult chi_square_statistic(const Counts& observed, const Counts& expected);
/// Expected counts spread evenly over the observed total.
ChiSquareResult chi_square_uniform(const Counts& observed);

struct Band {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return x >= lower && x <= upper; }
};

/// Two-tailed acceptance band at the given significance. For 9 degrees of
/// freedom at 10% the reference pair [3.3, 16.9] is returned verbatim.
Band chi_square_band(int dof, double significance = 0.10);
/// Chi-square quantile at cumulative probability `probability`.
double chi_square_quantile(int dof, double probability);

/// Equal-width slabs of [lower, upper) along one axis.
Counts slab_histogram(const Samples& samples, Eigen::Index axis, int bins, double lower = 0.0, double upper = 1.0);

/// Index of the subcube (halving every axis of the unit cube) holding x.
std::uint64_t cube_halving_cell(const Vector& x);

struct CellTransition {
  double leave_probability = 0.0;  // consecutive samples in different cells
  double stay_probability = 0.0;
  double reference_leave = 0.0;  // independent uniform points: 1 - 2^-n
  double reference_stay = 0.0;   // 2^-n
};

CellTransition serial_correlation(const Samples& samples, int n);

/// f(alpha) = (1 - (n+1) alpha)^n, the volume fraction of the nested simplex.
double nested_simplex_volume_fraction(int n, double alpha);

struct FractionPoint {
  double alpha = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
};
std::vector<FractionPoint> nested_simplex_fraction(const Samples& samples, int n, const std::vector<double>& alphas);
/// sup over the grid of |empirical - theoretical|.
double nested_simplex_sup_deviation(const Samples& samples, int n, int grid_points = 1000);

/// Levels 0 = alpha_0 < ... < alpha_k = 1/(n+1) with f(alpha_i) = 1 - i/k.
std::vector<double> nested_simplex_partition(int n, int cells);
/// Counts per shell S_{alpha_i} minus S_{alpha_{i+1}}.
Counts nested_shell_counts(const Samples& samples, int n, int cells);

/// Nearest-vertex cells of the standard simplex (argmax coordinate, lowest
/// index on ties).
Counts simplex_vertex_cells(const Samples& samples, int n);

/// Equal angular sectors of atan2(x2, x1).
Counts angular_histogram(const Samples& samples, int bins);

// ---------------------------------------------------------------------------
// Corner escape

enum class EscapeCriterion {
  Unbounded,          // the trajectory or chord goes to infinity
  ChordCrossesLine,   // HR: an end of the current chord reaches x2 >= escape height
  PointCrossesLine,   // HR: the sampled point reaches x2 >= escape height
};

struct EscapeStatistics {
  std::vector<double> counts;  // per uncensored trial
  double mean = 0.0;
  double stddev = 0.0;
  double max = 0.0;
  std::uint64_t censored = 0;
  std::uint64_t trials = 0;
};

EscapeStatistics summarize(std::vector<double> counts, std::uint64_t censored);

/// Billiard: reflections of one uncapped trajectory before escaping.
/// Hit-and-Run: iterations until the escape criterion fires.
/// For the angle the escape line is x2 = escape height; for the orthant
/// only EscapeCriterion::Unbounded is meaningful.
EscapeStatistics escape_statistics(const geometry::Body& body, samplers::SamplerKind sampler, std::uint64_t trials,
                                   rng::RandomStream& stream, const Vector& start, EscapeCriterion criterion,
                                   std::uint64_t safety_cap = 1000000);

/// Single billiard escape trial; returns the number of reflections or
/// std::nullopt if the cap was hit. Also reports BO calls.
struct EscapeTrial {
  std::optional<std::uint64_t> reflections;
  std::uint64_t bo_calls = 0;
};
EscapeTrial billiard_escape(const geometry::Body& body, const Vector& start, Vector direction,
                            EscapeCriterion criterion, std::uint64_t safety_cap);

}  // namespace billiard::diagnostics
