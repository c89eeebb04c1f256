#include <cmath>
#include <limits>

#include "billiard/error.hpp"
#include "billiard/geometry.hpp"

namespace billiard::geometry {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Roots of a t^2 + 2 half_b t + c = 0 with a > 0, computed without
// cancellation. `c < 0` (interior origin) guarantees real roots of opposite
// sign; near the boundary the discriminant is clamped at zero.
struct QuadraticRoots {
  double lower;
  double upper;
};

QuadraticRoots solve_quadratic(double a, double half_b, double c) {
  const double disc = std::sqrt(std::max(0.0, half_b * half_b - a * c));
  const double q = -(half_b + std::copysign(disc, half_b));
  if (q == 0.0) return {0.0, 0.0};
  double r1 = q / a;
  double r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace

BallBody::BallBody(Vector center, double radius)
    : Body(center.size(), 2.0 * radius), center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0) throw Error(ErrorKind::InvalidDimension, "ball needs at least one coordinate");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw Error(ErrorKind::EmptyInterior, "ball radius must be positive");
}

bool BallBody::contains(const Vector& p) const {
  check_dimension(p);
  return (p - center_).squaredNorm() < radius_ * radius_;
}

ExitResult BallBody::exit_from(const Vector& origin, const Vector& direction) const {
  const Vector w = origin - center_;
  const auto roots = solve_quadratic(direction.squaredNorm(), w.dot(direction), w.squaredNorm() - radius_ * radius_);
  const double t = roots.upper;
  const Vector hit = w + t * direction;
  return BoundaryHit{t, -hit / hit.norm(), true};
}

Chord BallBody::chord_from(const Vector& p, const Vector& d) const {
  const Vector w = p - center_;
  const auto roots = solve_quadratic(d.squaredNorm(), w.dot(d), w.squaredNorm() - radius_ * radius_);
  return {roots.lower, roots.upper};
}

// ---------------------------------------------------------------------------

namespace {

double ellipsoid_diameter(const Matrix& A) {
  if (A.rows() == 0 || A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "ellipsoid matrix must be square");
  if (!A.allFinite()) throw Error(ErrorKind::InvalidConfig, "ellipsoid matrix must be finite");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::NotPositiveDefinite, "ellipsoid matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
  const double smallest = eig.eigenvalues().minCoeff();
  if (!(smallest > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "ellipsoid matrix must be positive definite");
  return 2.0 / std::sqrt(smallest);
}

}  // namespace

EllipsoidBody::EllipsoidBody(Matrix A) : Body(A.rows(), ellipsoid_diameter(A)), A_(std::move(A)) {}

bool EllipsoidBody::contains(const Vector& p) const {
  check_dimension(p);
  return p.dot(A_ * p) < 1.0;
}

ExitResult EllipsoidBody::exit_from(const Vector& origin, const Vector& direction) const {
  const Vector Ad = A_ * direction;
  const auto roots = solve_quadratic(direction.dot(Ad), origin.dot(Ad), origin.dot(A_ * origin) - 1.0);
  const double t = roots.upper;
  const Vector gradient = A_ * (origin + t * direction);
  return BoundaryHit{t, -gradient / gradient.norm(), true};
}

Chord EllipsoidBody::chord_from(const Vector& p, const Vector& d) const {
  const Vector Ad = A_ * d;
  const auto roots = solve_quadratic(d.dot(Ad), p.dot(Ad), p.dot(A_ * p) - 1.0);
  return {roots.lower, roots.upper};
}

}  // namespace billiard::geometry
