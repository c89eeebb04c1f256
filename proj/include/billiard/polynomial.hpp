#pragma once

#include <optional>
#include <span>
#include <vector>

namespace billiard::poly {

// Coefficients are in ascending order: c[0] + c[1] t + c[2] t^2 + ...

double evaluate(std::span<const double> c, double t);
std::vector<double> derivative(std::span<const double> c);

/// Bound on the magnitude of every real root (Cauchy).
double root_bound(std::span<const double> c);

/// Roots in (lo, hi) at which the polynomial changes sign, ascending.
/// Isolation recurses on the derivative, refinement is bisection to full
/// double precision. Even-multiplicity (tangent) roots are not reported.
std::vector<double> sign_change_roots(std::span<const double> c, double lo, double hi);

/// Smallest t in (lo, hi) where the polynomial passes from positive to
/// non-positive. Returns the last positive abscissa found by bisection.
std::optional<double> first_descending_root(std::span<const double> c, double lo, double hi);

/// Product of two polynomials.
std::vector<double> multiply(std::span<const double> a, std::span<const double> b);

}  // namespace billiard::poly
