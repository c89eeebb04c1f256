#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "billiard/rng.hpp"
#include "billiard/types.hpp"

namespace billiard::geometry {

/// Relative tolerance used to declare a hit nonsmooth (facet ties, corner loci).
inline constexpr double kVertexTolerance = 1e-9;
/// Forward epsilon as a fraction of the body scale.
inline constexpr double kForwardEpsilonScale = 1e-12;

struct Ray {
  Vector origin;
  Vector direction;  // unit length
};

struct BoundaryHit {
  double t = 0.0;  // distance to the boundary along the ray
  Vector normal;   // inward unit normal at the hit point
  bool smooth = true;
};

/// std::nullopt means the ray escapes to infinity (unbounded bodies only).
using ExitResult = std::optional<BoundaryHit>;

/// Two-sided line query. Endpoints are +-infinity where the line escapes.
struct Chord {
  double t_under = 0.0;  // <= 0
  double t_over = 0.0;   // >= 0
};

/// An open region of R^n together with its boundary oracle. Bodies are
/// immutable once built and safe to share between chains.
class Body {
 public:
  virtual ~Body() = default;

  virtual std::string_view kind() const = 0;

  /// Number of ambient coordinates of a point.
  Eigen::Index dimension() const { return dimension_; }
  bool bounded() const { return diameter_.has_value(); }
  /// Diameter estimate; empty for unbounded bodies.
  std::optional<double> diameter() const { return diameter_; }
  /// Length scale used for tolerances: the diameter, or 1 if unbounded.
  double scale() const { return diameter_.value_or(1.0); }
  double forward_epsilon() const { return kForwardEpsilonScale * scale(); }

  /// Strict interior membership.
  virtual bool contains(const Vector& p) const = 0;

  /// First boundary crossing along a ray from an interior point.
  ExitResult first_exit(const Ray& ray) const;

  /// Both ends of the line through an interior point p.
  Chord chord(const Vector& p, const Vector& d) const;

  /// Raw oracle used while propagating a trajectory: `origin` may sit on the
  /// boundary, so crossings with t <= forward_epsilon() are ignored.
  virtual ExitResult exit_from(const Vector& origin, const Vector& direction) const = 0;

  /// Uniform direction in the tangent space of the body (the full sphere
  /// except for bodies living in an affine subspace).
  virtual Vector sample_direction(rng::RandomStream& stream) const;

  /// A fixed, well-inside point (center, Chebyshev center, ...).
  virtual Vector interior_point() const = 0;

 protected:
  Body(Eigen::Index dimension, std::optional<double> diameter)
      : dimension_(dimension), diameter_(diameter) {}

  virtual Chord chord_from(const Vector& p, const Vector& d) const;

  void check_dimension(const Vector& v) const;

 private:
  Eigen::Index dimension_;
  std::optional<double> diameter_;
};

using BodyPtr = std::shared_ptr<const Body>;

// ---------------------------------------------------------------------------
// Declarative descriptors

struct PolytopeDesc {
  Matrix A;  // region (a_i, x) < b_i
  Vector b;
};
struct BallDesc {
  Vector center;
  double radius = 1.0;
};
struct EllipsoidDesc {
  Matrix A;  // region x^T A x < 1
};
struct AxisBoxDesc {
  Vector lower;
  Vector upper;
};
struct UnitCubeDesc {
  int n = 2;
};
/// {x in R^{n+1} : x_i > 0, sum x_i = 1}
struct StandardSimplexDesc {
  int n = 2;
};
/// Ball of radius r swept around the unit circle of the (x1, x2) plane.
struct ToroidDesc {
  int n = 3;
  double r = 1.0 / 3.0;
};
/// {0 < x2 < 1, |x1| < M}
struct StripDesc {
  double M = 1000.0;
};
struct OrthantDesc {
  int n = 2;
};
enum class AngleProfile {
  Geometric,  // half-width tan(alpha/2) * x2: apex angle exactly alpha
  Literal,    // half-width atan(alpha/2) * x2, the profile behind the reference table
};
/// Planar wedge with apex at the origin opening along +x2; crossing the line
/// x2 = escape_height counts as leaving the corner.
struct AngleTriangleDesc {
  double alpha = 1.5707963267948966;
  AngleProfile profile = AngleProfile::Geometric;
  double escape_height = 1.0;
};
/// {-x1^4 < x2 < x1^4, 0 < x1 < 1}
struct ConcaveCuspDesc {};
enum class TruncationVariant { Convex, Nonconvex };
/// x1^2/4 + x2^2 < 1 cut by x1 < sqrt(3) -+ |x2|.
struct TruncatedEllipseDesc {
  TruncationVariant variant = TruncationVariant::Convex;
};

using BodyDescriptor =
    std::variant<PolytopeDesc, BallDesc, EllipsoidDesc, AxisBoxDesc, UnitCubeDesc, StandardSimplexDesc,
                 ToroidDesc, StripDesc, OrthantDesc, AngleTriangleDesc, ConcaveCuspDesc,
                 TruncatedEllipseDesc>;

/// Validates a descriptor and builds the corresponding body.
BodyPtr build_body(const BodyDescriptor& descriptor);

/// Specular reflection d - 2 (d, s) s.
Vector reflect_direction(const Vector& d, const Vector& s);

/// Number of linear pieces needed to join any two points of the toroid.
int toroid_path_bound(double r);

// ---------------------------------------------------------------------------
// Concrete bodies whose extra structure is used by samplers and experiments.

class PolytopeBody final : public Body {
 public:
  PolytopeBody(Matrix A, Vector b);

  std::string_view kind() const override { return "polytope"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override { return chebyshev_center_; }

  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  double chebyshev_radius() const { return chebyshev_radius_; }

 protected:
  Chord chord_from(const Vector& p, const Vector& d) const override;

 private:
  struct Analysis;
  explicit PolytopeBody(Analysis analysis);
  static Analysis analyze(Matrix A, Vector b);

  Matrix A_;
  Vector b_;
  Vector row_norms_;
  Vector chebyshev_center_;
  double chebyshev_radius_;
};

class AxisBoxBody final : public Body {
 public:
  AxisBoxBody(Vector lower, Vector upper, std::string kind = "box");

  std::string_view kind() const override { return kind_; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override { return 0.5 * (lower_ + upper_); }

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

 protected:
  Chord chord_from(const Vector& p, const Vector& d) const override;

 private:
  Vector lower_;
  Vector upper_;
  std::string kind_;
};

class BallBody final : public Body {
 public:
  BallBody(Vector center, double radius);

  std::string_view kind() const override { return "ball"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override { return center_; }

 protected:
  Chord chord_from(const Vector& p, const Vector& d) const override;

 private:
  Vector center_;
  double radius_;
};

class EllipsoidBody final : public Body {
 public:
  explicit EllipsoidBody(Matrix A);

  std::string_view kind() const override { return "ellipsoid"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override { return Vector::Zero(dimension()); }

 protected:
  Chord chord_from(const Vector& p, const Vector& d) const override;

 private:
  Matrix A_;
};

class SimplexBody final : public Body {
 public:
  explicit SimplexBody(int n);

  std::string_view kind() const override { return "simplex"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector sample_direction(rng::RandomStream& stream) const override;
  Vector interior_point() const override;

  int n() const { return n_; }
  /// Unit inward normal of facet x_k = 0 within the hyperplane sum x = 1.
  Vector facet_normal(Eigen::Index k) const;

 private:
  int n_;
};

class ToroidBody final : public Body {
 public:
  ToroidBody(int n, double r);

  std::string_view kind() const override { return "toroid"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override;

  double tube_radius() const { return r_; }
  /// Nearest point of the core circle, zero beyond the first two coordinates.
  Vector core_point(const Vector& x) const;

 private:
  double r_;
};

class OrthantBody final : public Body {
 public:
  explicit OrthantBody(int n);

  std::string_view kind() const override { return "orthant"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override { return Vector::Ones(dimension()); }
};

class AngleBody final : public Body {
 public:
  explicit AngleBody(const AngleTriangleDesc& desc);

  std::string_view kind() const override { return "angle"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override;

  double alpha() const { return alpha_; }
  /// Half-width slope: the wedge is |x1| < slope * x2.
  double slope() const { return slope_; }
  /// Actual apex angle of the wedge, 2 atan(slope).
  double apex_angle() const;
  double escape_height() const { return escape_height_; }

 private:
  double alpha_;
  double slope_;
  double escape_height_;
  Vector right_normal_;
  Vector left_normal_;
};

class CuspBody final : public Body {
 public:
  CuspBody();

  std::string_view kind() const override { return "cusp"; }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override;
};

class TruncatedEllipseBody final : public Body {
 public:
  explicit TruncatedEllipseBody(TruncationVariant variant);

  std::string_view kind() const override {
    return variant_ == TruncationVariant::Convex ? "truncated_ellipse_convex"
                                                 : "truncated_ellipse_nonconvex";
  }
  bool contains(const Vector& p) const override;
  ExitResult exit_from(const Vector& origin, const Vector& direction) const override;
  Vector interior_point() const override { return Vector::Zero(2); }

  TruncationVariant variant() const { return variant_; }
  const std::vector<Vector>& corners() const { return corners_; }

 private:
  TruncationVariant variant_;
  std::vector<Vector> corners_;
};

}  // namespace billiard::geometry
