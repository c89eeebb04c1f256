#include <cmath>
#include <limits>
#include <numbers>

#include "billiard/error.hpp"
#include "billiard/geometry.hpp"

namespace billiard::geometry {

void Body::check_dimension(const Vector& v) const {
  if (v.size() != dimension_)
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(dimension_) + " coordinates, got " +
                                                  std::to_string(v.size()));
}

ExitResult Body::first_exit(const Ray& ray) const {
  check_dimension(ray.origin);
  check_dimension(ray.direction);
  if (!contains(ray.origin)) throw Error(ErrorKind::NotInterior, "first_exit origin must be interior");
  return exit_from(ray.origin, ray.direction);
}

Chord Body::chord(const Vector& p, const Vector& d) const {
  check_dimension(p);
  check_dimension(d);
  if (!contains(p)) throw Error(ErrorKind::NotInterior, "chord base point must be interior");
  return chord_from(p, d);
}

Chord Body::chord_from(const Vector& p, const Vector& d) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto forward = exit_from(p, d);
  const auto backward = exit_from(p, -d);
  return {backward ? -backward->t : -kInf, forward ? forward->t : kInf};
}

Vector Body::sample_direction(rng::RandomStream& stream) const {
  if (dimension_ == 1) return Vector::Constant(1, stream.uniform01() <= 0.5 ? -1.0 : 1.0);
  return rng::unit_direction(stream, dimension_);
}

Vector reflect_direction(const Vector& d, const Vector& s) { return d - 2.0 * d.dot(s) * s; }

int toroid_path_bound(double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidConfig, "toroid radius must lie in (0, 1)");
  const double angle = std::acos((1.0 - r) / (1.0 + r));
  return static_cast<int>(std::ceil(std::numbers::pi / (2.0 * angle))) + 1;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dimension(int n, int minimum, const char* what) {
  if (n < minimum)
    throw Error(ErrorKind::InvalidDimension, std::string(what) + " needs n >= " + std::to_string(minimum));
}

}  // namespace

BodyPtr build_body(const BodyDescriptor& descriptor) {
  return std::visit(
      Overloaded{
          [](const PolytopeDesc& d) -> BodyPtr { return std::make_shared<PolytopeBody>(d.A, d.b); },
          [](const BallDesc& d) -> BodyPtr { return std::make_shared<BallBody>(d.center, d.radius); },
          [](const EllipsoidDesc& d) -> BodyPtr { return std::make_shared<EllipsoidBody>(d.A); },
          [](const AxisBoxDesc& d) -> BodyPtr { return std::make_shared<AxisBoxBody>(d.lower, d.upper); },
          [](const UnitCubeDesc& d) -> BodyPtr {
            require_dimension(d.n, 1, "unit cube");
            return std::make_shared<AxisBoxBody>(Vector::Zero(d.n), Vector::Ones(d.n), "cube");
          },
          [](const StandardSimplexDesc& d) -> BodyPtr {
            require_dimension(d.n, 1, "simplex");
            return std::make_shared<SimplexBody>(d.n);
          },
          [](const ToroidDesc& d) -> BodyPtr { return std::make_shared<ToroidBody>(d.n, d.r); },
          [](const StripDesc& d) -> BodyPtr {
            if (!(d.M > 0.0)) throw Error(ErrorKind::InvalidConfig, "strip half-length M must be positive");
            Vector lower(2), upper(2);
            lower << -d.M, 0.0;
            upper << d.M, 1.0;
            return std::make_shared<AxisBoxBody>(lower, upper, "strip");
          },
          [](const OrthantDesc& d) -> BodyPtr { return std::make_shared<OrthantBody>(d.n); },
          [](const AngleTriangleDesc& d) -> BodyPtr { return std::make_shared<AngleBody>(d); },
          [](const ConcaveCuspDesc&) -> BodyPtr { return std::make_shared<CuspBody>(); },
          [](const TruncatedEllipseDesc& d) -> BodyPtr { return std::make_shared<TruncatedEllipseBody>(d.variant); },
      },
      descriptor);
}

}  // namespace billiard::geometry
