#pragma once

#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/types.hpp"

namespace billiard::precondition {

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr int kMaxNewtonIterations = 200;

struct CenteringResult {
  Vector center;
  double newton_decrement = 0.0;
  int iterations = 0;
  std::vector<double> barrier_values;  // F at every iterate, starting point first
};

/// Log-barrier value F(x) = -sum log(b_i - (a_i, x)); +infinity outside.
double log_barrier(const geometry::PolytopeBody& polytope, const Vector& x);

/// Damped Newton minimization of the log barrier, started from `start` or
/// from the Chebyshev center. Stops when the Newton decrement is <= tol.
CenteringResult analytic_center(const geometry::PolytopeBody& polytope, double tol = kDefaultTolerance,
                                std::optional<Vector> start = std::nullopt);

/// Linear rounding map from the Dikin ellipsoid at the analytic center.
struct DikinMap {
  Vector center;     // x*
  Matrix hessian;    // H = barrier Hessian at x*
  Matrix transform;  // T = H^{-1/2}
  double condition_number = 1.0;
  double det_transform = 1.0;

  /// x = x* + T y
  Vector to_original(const Vector& y) const;
  /// y = T^{-1} (x - x*)
  Vector to_rounded(const Vector& x) const;
};

Matrix barrier_hessian(const geometry::PolytopeBody& polytope, const Vector& x);

DikinMap dikin_map(const geometry::PolytopeBody& polytope, double tol = kDefaultTolerance);

/// The polytope in rounded coordinates y = T^{-1}(x - x*): rows A T, b - A x*.
std::shared_ptr<const geometry::PolytopeBody> transform_polytope(const geometry::PolytopeBody& polytope,
                                                                  const DikinMap& map);

}  // namespace billiard::precondition
