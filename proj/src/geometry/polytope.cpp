#include <algorithm>
#include <cmath>
#include <limits>

#include "billiard/error.hpp"
#include "billiard/geometry.hpp"
#include "billiard/linprog.hpp"

namespace billiard::geometry {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Picks the smallest admissible t_i and flags ties within relative tolerance.
struct MinTracker {
  double best = kInf;
  Eigen::Index index = -1;
  double second = kInf;

  void offer(double t, Eigen::Index i) {
    if (t < best) {
      second = best;
      best = t;
      index = i;
    } else if (t < second) {
      second = t;
    }
  }
  bool tie() const { return second - best <= kVertexTolerance * best; }
};

std::optional<double> polytope_diameter(const Matrix& A, const Vector& b, const Vector& interior) {
  const Eigen::Index n = A.cols();
  Vector extent(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector e = Vector::Unit(n, j);
    const auto hi = linprog::support(A, b, interior, e);
    const auto lo = linprog::support(A, b, interior, -e);
    if (!hi || !lo) return std::nullopt;
    extent[j] = *hi + *lo;
  }
  return extent.norm();
}

}  // namespace

struct PolytopeBody::Analysis {
  Matrix A;
  Vector b;
  Vector row_norms;
  Vector center;
  double radius = 0.0;
  std::optional<double> diameter;
};

PolytopeBody::Analysis PolytopeBody::analyze(Matrix A, Vector b) {
  if (A.rows() == 0 || A.cols() == 0) throw Error(ErrorKind::InvalidDimension, "polytope needs rows and columns");
  if (b.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "polytope b must have one entry per row of A");
  if (!A.allFinite() || !b.allFinite()) throw Error(ErrorKind::InvalidConfig, "polytope data must be finite");
  Analysis out;
  out.row_norms = A.rowwise().norm();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (out.row_norms[i] == 0.0 && !(b[i] > 0.0))
      throw Error(ErrorKind::EmptyInterior, "zero row with non-positive right-hand side");
  }
  const double cap = 1.0 + b.cwiseAbs().maxCoeff();
  const auto ball = linprog::chebyshev_center(A, b, cap);
  const double scale = std::max(1.0, ball.center.cwiseAbs().maxCoeff());
  if (!(ball.radius > 1e-10 * scale)) throw Error(ErrorKind::EmptyInterior, "polytope has empty interior");
  out.center = ball.center;
  out.radius = ball.radius;
  out.diameter = polytope_diameter(A, b, out.center);
  out.A = std::move(A);
  out.b = std::move(b);
  return out;
}

PolytopeBody::PolytopeBody(Matrix A, Vector b) : PolytopeBody(analyze(std::move(A), std::move(b))) {}

PolytopeBody::PolytopeBody(Analysis analysis)
    : Body(analysis.A.cols(), analysis.diameter),
      A_(std::move(analysis.A)),
      b_(std::move(analysis.b)),
      row_norms_(std::move(analysis.row_norms)),
      chebyshev_center_(std::move(analysis.center)),
      chebyshev_radius_(analysis.radius) {}

bool PolytopeBody::contains(const Vector& p) const {
  check_dimension(p);
  return ((A_ * p - b_).array() < 0.0).all();
}

ExitResult PolytopeBody::exit_from(const Vector& origin, const Vector& direction) const {
  const Vector speed = A_ * direction;
  const Vector slack = b_ - A_ * origin;
  const double eps = forward_epsilon();
  MinTracker tracker;
  for (Eigen::Index i = 0; i < A_.rows(); ++i) {
    if (speed[i] <= 0.0) continue;
    const double t = slack[i] / speed[i];
    if (t > eps) tracker.offer(t, i);
  }
  if (tracker.index < 0) return std::nullopt;
  return BoundaryHit{tracker.best, -A_.row(tracker.index).transpose() / row_norms_[tracker.index], !tracker.tie()};
}

Chord PolytopeBody::chord_from(const Vector& p, const Vector& d) const {
  const Vector speed = A_ * d;
  const Vector slack = b_ - A_ * p;
  Chord chord{-kInf, kInf};
  for (Eigen::Index i = 0; i < A_.rows(); ++i) {
    if (speed[i] == 0.0) continue;  // parallel row
    const double t = slack[i] / speed[i];
    if (t > 0.0) {
      chord.t_over = std::min(chord.t_over, t);
    } else if (t < 0.0) {
      chord.t_under = std::max(chord.t_under, t);
    }
  }
  return chord;
}

// ---------------------------------------------------------------------------

AxisBoxBody::AxisBoxBody(Vector lower, Vector upper, std::string kind)
    : Body(lower.size(), (upper - lower).norm()), lower_(std::move(lower)), upper_(std::move(upper)), kind_(std::move(kind)) {
  if (lower_.size() == 0) throw Error(ErrorKind::InvalidDimension, "box needs at least one coordinate");
  if (upper_.size() != lower_.size()) throw Error(ErrorKind::DimensionMismatch, "box bounds differ in length");
  if (!((upper_ - lower_).array() > 0.0).all()) throw Error(ErrorKind::EmptyInterior, "box needs lower < upper");
}

bool AxisBoxBody::contains(const Vector& p) const {
  check_dimension(p);
  return (p.array() > lower_.array()).all() && (p.array() < upper_.array()).all();
}

ExitResult AxisBoxBody::exit_from(const Vector& origin, const Vector& direction) const {
  const double eps = forward_epsilon();
  MinTracker tracker;
  for (Eigen::Index j = 0; j < origin.size(); ++j) {
    const double dj = direction[j];
    if (dj == 0.0) continue;
    const double t = dj > 0.0 ? (upper_[j] - origin[j]) / dj : (lower_[j] - origin[j]) / dj;
    if (t > eps) tracker.offer(t, j);
  }
  if (tracker.index < 0) return std::nullopt;
  Vector normal = Vector::Zero(dimension());
  normal[tracker.index] = direction[tracker.index] > 0.0 ? -1.0 : 1.0;
  return BoundaryHit{tracker.best, normal, !tracker.tie()};
}

Chord AxisBoxBody::chord_from(const Vector& p, const Vector& d) const {
  Chord chord{-kInf, kInf};
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (d[j] == 0.0) continue;
    double t_hi = (upper_[j] - p[j]) / d[j];
    double t_lo = (lower_[j] - p[j]) / d[j];
    if (t_hi < t_lo) std::swap(t_hi, t_lo);
    chord.t_over = std::min(chord.t_over, t_hi);
    chord.t_under = std::max(chord.t_under, t_lo);
  }
  return chord;
}

// ---------------------------------------------------------------------------

SimplexBody::SimplexBody(int n) : Body(n + 1, std::sqrt(2.0)), n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "simplex needs n >= 1");
}

bool SimplexBody::contains(const Vector& p) const {
  check_dimension(p);
  return (p.array() > 0.0).all() && std::abs(p.sum() - 1.0) <= 1e-9;
}

Vector SimplexBody::facet_normal(Eigen::Index k) const {
  Vector s = Vector::Constant(dimension(), -1.0);
  s[k] = n_;
  return s * std::sqrt(1.0 / (static_cast<double>(n_) * (n_ + 1)));
}

ExitResult SimplexBody::exit_from(const Vector& origin, const Vector& direction) const {
  const double eps = forward_epsilon();
  MinTracker tracker;
  for (Eigen::Index k = 0; k < origin.size(); ++k) {
    if (direction[k] >= 0.0) continue;
    const double t = origin[k] / -direction[k];
    if (t > eps) tracker.offer(t, k);
  }
  if (tracker.index < 0) return std::nullopt;
  return BoundaryHit{tracker.best, facet_normal(tracker.index), !tracker.tie()};
}

Vector SimplexBody::sample_direction(rng::RandomStream& stream) const {
  for (;;) {
    Vector g = rng::gaussian_vector(stream, dimension());
    g.array() -= g.mean();
    const double norm = g.norm();
    if (norm > 0.0) return g / norm;
  }
}

Vector SimplexBody::interior_point() const { return Vector::Constant(dimension(), 1.0 / dimension()); }

// ---------------------------------------------------------------------------

OrthantBody::OrthantBody(int n) : Body(n, std::nullopt) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "orthant needs n >= 1");
}

bool OrthantBody::contains(const Vector& p) const {
  check_dimension(p);
  return (p.array() > 0.0).all();
}

ExitResult OrthantBody::exit_from(const Vector& origin, const Vector& direction) const {
  const double eps = forward_epsilon();
  MinTracker tracker;
  for (Eigen::Index k = 0; k < origin.size(); ++k) {
    if (direction[k] >= 0.0) continue;
    const double t = origin[k] / -direction[k];
    if (t > eps) tracker.offer(t, k);
  }
  if (tracker.index < 0) return std::nullopt;
  return BoundaryHit{tracker.best, Vector::Unit(dimension(), tracker.index), !tracker.tie()};
}

// ---------------------------------------------------------------------------

AngleBody::AngleBody(const AngleTriangleDesc& desc)
    : Body(2, std::nullopt), alpha_(desc.alpha), escape_height_(desc.escape_height) {
  if (!(alpha_ > 0.0 && alpha_ < 3.141592653589793))
    throw Error(ErrorKind::InvalidConfig, "angle alpha must lie in (0, pi)");
  if (!(escape_height_ > 0.0)) throw Error(ErrorKind::InvalidConfig, "escape height must be positive");
  slope_ = desc.profile == AngleProfile::Geometric ? std::tan(alpha_ / 2.0) : std::atan(alpha_ / 2.0);
  const double norm = std::hypot(1.0, slope_);
  right_normal_ = Vector(2);
  right_normal_ << -1.0 / norm, slope_ / norm;
  left_normal_ = Vector(2);
  left_normal_ << 1.0 / norm, slope_ / norm;
}

double AngleBody::apex_angle() const { return 2.0 * std::atan(slope_); }

bool AngleBody::contains(const Vector& p) const {
  check_dimension(p);
  return std::abs(p[0]) < slope_ * p[1];
}

Vector AngleBody::interior_point() const {
  Vector p(2);
  p << 0.0, 0.1 * escape_height_;
  return p;
}

ExitResult AngleBody::exit_from(const Vector& origin, const Vector& direction) const {
  const double eps = forward_epsilon();
  MinTracker tracker;
  const Vector* normals[2] = {&right_normal_, &left_normal_};
  for (Eigen::Index k = 0; k < 2; ++k) {
    const double approach = normals[k]->dot(direction);
    if (approach >= 0.0) continue;
    const double t = normals[k]->dot(origin) / -approach;
    if (t > eps) tracker.offer(t, k);
  }
  if (tracker.index < 0) return std::nullopt;
  return BoundaryHit{tracker.best, *normals[tracker.index], !tracker.tie()};
}

}  // namespace billiard::geometry
