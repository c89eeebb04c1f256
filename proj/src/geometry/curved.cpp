#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "billiard/error.hpp"
#include "billiard/geometry.hpp"
#include "billiard/polynomial.hpp"

namespace billiard::geometry {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near_any(const Vector& p, const std::vector<Vector>& corners) {
  for (const auto& c : corners)
    if ((p - c).norm() <= kVertexTolerance) return true;
  return false;
}

struct Candidate {
  double t = kInf;
  int piece = -1;
  void offer(std::optional<double> value, int index) {
    if (value && *value < t) {
      t = *value;
      piece = index;
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Toroid: (rho - 1)^2 + |z|^2 < r^2 with rho = |(x1, x2)|.

ToroidBody::ToroidBody(int n, double r) : Body(n, 2.0 * (1.0 + r)), r_(r) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "toroid needs n >= 2");
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidConfig, "toroid radius must lie in (0, 1)");
}

Vector ToroidBody::core_point(const Vector& x) const {
  Vector c = Vector::Zero(x.size());
  const double rho = std::hypot(x[0], x[1]);
  if (rho > 0.0) {
    c[0] = x[0] / rho;
    c[1] = x[1] / rho;
  }
  return c;
}

bool ToroidBody::contains(const Vector& p) const {
  check_dimension(p);
  const double rho = std::hypot(p[0], p[1]);
  const double transverse = p.tail(p.size() - 2).squaredNorm();
  return (rho - 1.0) * (rho - 1.0) + transverse < r_ * r_;
}

Vector ToroidBody::interior_point() const { return Vector::Unit(dimension(), 0); }

ExitResult ToroidBody::exit_from(const Vector& origin, const Vector& direction) const {
  // With S = |x|^2 + 1 - r^2 > 0 the region is S < 2 rho, i.e. 4 rho^2 - S^2 > 0.
  const auto po = origin.head<2>();
  const auto pd = direction.head<2>();
  const std::array<double, 3> planar{po.squaredNorm(), 2.0 * po.dot(pd), pd.squaredNorm()};
  const std::array<double, 3> S{origin.squaredNorm() + 1.0 - r_ * r_, 2.0 * origin.dot(direction),
                                direction.squaredNorm()};
  auto quartic = poly::multiply(S, S);
  for (auto& c : quartic) c = -c;
  for (int i = 0; i < 3; ++i) quartic[i] += 4.0 * planar[i];
  const auto t = poly::first_descending_root(quartic, forward_epsilon(), 2.0 * scale());
  if (!t) return std::nullopt;
  const Vector hit = origin + *t * direction;
  const double rho = std::hypot(hit[0], hit[1]);
  Vector gradient = hit;
  gradient.head<2>() *= (rho - 1.0) / rho;
  return BoundaryHit{*t, -gradient / gradient.norm(), true};
}

// ---------------------------------------------------------------------------
// Cusp: -x1^4 < x2 < x1^4, 0 < x1 < 1.

CuspBody::CuspBody() : Body(2, 2.0) {}

bool CuspBody::contains(const Vector& p) const {
  check_dimension(p);
  const double x = p[0];
  return x > 0.0 && x < 1.0 && std::abs(p[1]) < x * x * x * x;
}

Vector CuspBody::interior_point() const {
  Vector p(2);
  p << 0.9, 0.0;
  return p;
}

ExitResult CuspBody::exit_from(const Vector& origin, const Vector& direction) const {
  const double a = origin[0];
  const double b = origin[1];
  const double u = direction[0];
  const double v = direction[1];
  // (a + u t)^4 expanded in t.
  const std::array<double, 5> quartic{a * a * a * a, 4.0 * a * a * a * u, 6.0 * a * a * u * u, 4.0 * a * u * u * u,
                                      u * u * u * u};
  auto upper = quartic;  // x1^4 - x2 > 0
  upper[0] -= b;
  upper[1] -= v;
  auto lower = quartic;  // x1^4 + x2 > 0
  lower[0] += b;
  lower[1] += v;
  const double eps = forward_epsilon();
  const double horizon = 2.0 * scale();
  Candidate best;
  best.offer(poly::first_descending_root(upper, eps, horizon), 0);
  best.offer(poly::first_descending_root(lower, eps, horizon), 1);
  if (u > 0.0 && (1.0 - a) / u > eps) best.offer((1.0 - a) / u, 2);
  if (u < 0.0 && a / -u > eps) best.offer(a / -u, 3);
  if (best.piece < 0) return std::nullopt;

  const Vector hit = origin + best.t * direction;
  Vector normal(2);
  const double slope = 4.0 * hit[0] * hit[0] * hit[0];
  switch (best.piece) {
    case 0: normal << slope, -1.0; break;
    case 1: normal << slope, 1.0; break;
    case 2: normal << -1.0, 0.0; break;
    default: normal << 1.0, 0.0; break;
  }
  normal.normalize();
  static const std::vector<Vector> corners = [] {
    std::vector<Vector> c(3, Vector(2));
    c[0] << 0.0, 0.0;
    c[1] << 1.0, 1.0;
    c[2] << 1.0, -1.0;
    return c;
  }();
  return BoundaryHit{best.t, normal, !near_any(hit, corners)};
}

// ---------------------------------------------------------------------------
// Truncated ellipse: x1^2/4 + x2^2 < 1 and x1 < sqrt(3) - |x2| (convex) or
// x1 < sqrt(3) + |x2| (nonconvex, a notch removed at the right focus).

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Entry time of the ray into the closed set {f(t) >= 0} for affine f = c + s t,
// reported as an interval [enter, leave].
struct Interval {
  double enter = -kInf;
  double leave = kInf;
};

Interval halfline(double c, double s) {
  if (s > 0.0) return {-c / s, kInf};
  if (s < 0.0) return {-kInf, -c / s};
  return c >= 0.0 ? Interval{} : Interval{kInf, -kInf};
}

}  // namespace

TruncatedEllipseBody::TruncatedEllipseBody(TruncationVariant variant) : Body(2, 4.0), variant_(variant) {
  const double root32 = std::sqrt(32.0);
  Vector apex(2);
  apex << kSqrt3, 0.0;
  corners_.push_back(apex);
  // Where the cut lines meet the ellipse: 5 y^2 -+ 2 sqrt(3) y - 1 = 0.
  const double y = variant_ == TruncationVariant::Convex ? (2.0 * kSqrt3 + root32) / 10.0
                                                         : (-2.0 * kSqrt3 + root32) / 10.0;
  const double x = variant_ == TruncationVariant::Convex ? kSqrt3 - y : kSqrt3 + y;
  Vector top(2), bottom(2);
  top << x, y;
  bottom << x, -y;
  corners_.push_back(top);
  corners_.push_back(bottom);
}

bool TruncatedEllipseBody::contains(const Vector& p) const {
  check_dimension(p);
  if (!(p[0] * p[0] / 4.0 + p[1] * p[1] < 1.0)) return false;
  if (variant_ == TruncationVariant::Convex) return p[0] < kSqrt3 - std::abs(p[1]);
  return p[0] < kSqrt3 + std::abs(p[1]);
}

ExitResult TruncatedEllipseBody::exit_from(const Vector& origin, const Vector& direction) const {
  const double eps = forward_epsilon();
  // Ellipse piece.
  const double a = direction[0] * direction[0] / 4.0 + direction[1] * direction[1];
  const double half_b = origin[0] * direction[0] / 4.0 + origin[1] * direction[1];
  const double c = origin[0] * origin[0] / 4.0 + origin[1] * origin[1] - 1.0;
  const double disc = std::sqrt(std::max(0.0, half_b * half_b - a * c));
  const double q = -(half_b + std::copysign(disc, half_b));
  const double t_ellipse = q == 0.0 ? 0.0 : std::max(q / a, c / q);

  Candidate best;
  if (t_ellipse > eps) best.offer(t_ellipse, 0);

  // Line pieces: g1 = sqrt3 - x1 - x2, g2 = sqrt3 - x1 + x2 (convex keeps both > 0).
  const double g1 = kSqrt3 - origin[0] - origin[1];
  const double g2 = kSqrt3 - origin[0] + origin[1];
  const double s1 = -direction[0] - direction[1];
  const double s2 = -direction[0] + direction[1];
  if (variant_ == TruncationVariant::Convex) {
    if (s1 < 0.0 && g1 / -s1 > eps) best.offer(g1 / -s1, 1);
    if (s2 < 0.0 && g2 / -s2 > eps) best.offer(g2 / -s2, 2);
  } else {
    // Notch N = {g1 <= 0 and g2 <= 0}; the ray leaves Q when it enters N.
    const Interval in1 = halfline(-g1, -s1);
    const Interval in2 = halfline(-g2, -s2);
    const double enter = std::max(in1.enter, in2.enter);
    const double leave = std::min(in1.leave, in2.leave);
    if (enter <= leave && enter > eps) best.offer(enter, in1.enter >= in2.enter ? 3 : 4);
  }
  if (best.piece < 0) return std::nullopt;

  const Vector hit = origin + best.t * direction;
  Vector normal(2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (best.piece) {
    case 0: normal << -hit[0] / 4.0, -hit[1]; break;
    case 1: normal << -inv_sqrt2, -inv_sqrt2; break;  // interior side of x1 + x2 = sqrt3
    case 2: normal << -inv_sqrt2, inv_sqrt2; break;   // interior side of x1 - x2 = sqrt3
    case 3: normal << -inv_sqrt2, -inv_sqrt2; break;  // notch face g1 = 0, Q lies where g1 > 0
    default: normal << -inv_sqrt2, inv_sqrt2; break;  // notch face g2 = 0
  }
  normal.normalize();
  return BoundaryHit{best.t, normal, !near_any(hit, corners_)};
}

}  // namespace billiard::geometry
