#include "billiard/precondition.hpp"

#include <cmath>
#include <limits>

#include "billiard/error.hpp"

namespace billiard::precondition {

using geometry::PolytopeBody;

double log_barrier(const PolytopeBody& polytope, const Vector& x) {
  const Vector slack = polytope.b() - polytope.A() * x;
  if ((slack.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
  return -slack.array().log().sum();
}

Matrix barrier_hessian(const PolytopeBody& polytope, const Vector& x) {
  const Vector slack = polytope.b() - polytope.A() * x;
  const Matrix scaled = slack.cwiseInverse().asDiagonal() * polytope.A();
  return scaled.transpose() * scaled;
}

CenteringResult analytic_center(const PolytopeBody& polytope, double tol, std::optional<Vector> start) {
  if (!polytope.bounded())
    throw Error(ErrorKind::UnsupportedBody, "log barrier of an unbounded polytope has no minimum");
  CenteringResult result;
  Vector x = start ? *start : polytope.interior_point();
  if (!polytope.contains(x)) throw Error(ErrorKind::NotInterior, "centering start must be interior");
  result.barrier_values.push_back(log_barrier(polytope, x));

  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    const Vector slack = polytope.b() - polytope.A() * x;
    const Vector gradient = polytope.A().transpose() * slack.cwiseInverse();
    const Matrix hessian = barrier_hessian(polytope, x);
    Eigen::LDLT<Matrix> solver(hessian);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::RankDeficiency, "barrier Hessian is singular");
    const Vector step = -solver.solve(gradient);
    const double decrement = std::sqrt(std::max(0.0, -gradient.dot(step)));
    result.newton_decrement = decrement;
    result.iterations = it;
    if (decrement <= tol) {
      result.center = x;
      return result;
    }
    x += step / (1.0 + decrement);
    result.barrier_values.push_back(log_barrier(polytope, x));
  }
  throw Error(ErrorKind::Convergence, "analytic center: Newton decrement " + std::to_string(result.newton_decrement) +
                                          " after " + std::to_string(kMaxNewtonIterations) + " iterations");
}

Vector DikinMap::to_original(const Vector& y) const { return center + transform * y; }

Vector DikinMap::to_rounded(const Vector& x) const { return transform.ldlt().solve(x - center); }

DikinMap dikin_map(const PolytopeBody& polytope, double tol) {
  DikinMap map;
  map.center = analytic_center(polytope, tol).center;
  map.hessian = barrier_hessian(polytope, map.center);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(map.hessian);
  const Vector& values = eig.eigenvalues();
  const double largest = values.maxCoeff();
  const double floor = 1e-14 * largest;
  if (!(values.minCoeff() > floor))
    throw Error(ErrorKind::RankDeficiency, "barrier Hessian is numerically singular (unbounded direction)");
  map.transform = eig.eigenvectors() * values.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  map.condition_number = largest / values.minCoeff();
  map.det_transform = values.cwiseSqrt().cwiseInverse().prod();
  return map;
}

std::shared_ptr<const PolytopeBody> transform_polytope(const PolytopeBody& polytope, const DikinMap& map) {
  return std::make_shared<PolytopeBody>(polytope.A() * map.transform, polytope.b() - polytope.A() * map.center);
}

}  // namespace billiard::precondition
