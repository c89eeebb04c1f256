#pragma once

#include <optional>

#include "billiard/types.hpp"

namespace billiard::linprog {

/// maximize c^T x subject to A x <= b, x >= 0, with b >= 0 so that x = 0 is
/// a feasible start. Dense tableau simplex with Bland's rule.
/// Returns std::nullopt when the objective is unbounded above.
std::optional<Vector> maximize_from_origin(const Matrix& A, const Vector& b, const Vector& c);

struct ChebyshevBall {
  Vector center;
  double radius = 0.0;
};

/// Largest ball inside {A x <= b}, with the radius capped at `radius_cap`
/// so the auxiliary problem stays bounded. A non-positive radius means the
/// open set {A x < b} is empty.
ChebyshevBall chebyshev_center(const Matrix& A, const Vector& b, double radius_cap);

/// max over {A x <= b} of (direction, x); std::nullopt if unbounded.
/// `interior` must satisfy A interior <= b.
std::optional<double> support(const Matrix& A, const Vector& b, const Vector& interior, const Vector& direction);

}  // namespace billiard::linprog
