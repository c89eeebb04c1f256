#include "billiard/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "billiard/error.hpp"

namespace billiard::linprog {

std::optional<Vector> maximize_from_origin(const Matrix& A, const Vector& b, const Vector& c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  // Columns: n structural, m slack, last = rhs. Row m is the objective row
  // holding reduced costs (-c for a maximization).
  Matrix tab = Matrix::Zero(m + 1, n + m + 1);
  tab.topLeftCorner(m, n) = A;
  tab.block(0, n, m, m).setIdentity();
  tab.col(n + m).head(m) = b;
  tab.row(m).head(n) = -c.transpose();
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  constexpr double kEps = 1e-12;
  for (int iteration = 0; iteration < 50000; ++iteration) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (tab(m, j) < -kEps) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    Eigen::Index leaving = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab(i, entering) > kEps) {
        const double ratio = tab(i, n + m) / tab(i, entering);
        if (ratio < best - kEps || (std::abs(ratio - best) <= kEps && leaving >= 0 && basis[i] < basis[leaving])) {
          best = ratio;
          leaving = i;
        }
      }
    }
    if (leaving < 0) return std::nullopt;
    tab.row(leaving) /= tab(leaving, entering);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leaving && tab(i, entering) != 0.0) tab.row(i) -= tab(i, entering) * tab.row(leaving);
    }
    basis[leaving] = entering;
  }
  Vector x = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = tab(i, n + m);
  return x;
}

ChebyshevBall chebyshev_center(const Matrix& A, const Vector& b, double radius_cap) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  const Vector norms = A.rowwise().norm();
  // Shift the radius so x = 0, r' = 0 is feasible: r = r' - shift.
  double shift = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (norms[i] == 0.0) continue;
    shift = std::max(shift, -b[i] / norms[i]);
  }
  shift += 1.0;
  // Variables: x+ (n), x- (n), r' (1).
  Matrix lp_A = Matrix::Zero(m + 1, 2 * n + 1);
  Vector lp_b(m + 1);
  lp_A.topLeftCorner(m, n) = A;
  lp_A.block(0, n, m, n) = -A;
  lp_A.block(0, 2 * n, m, 1) = norms;
  lp_b.head(m) = b + shift * norms;
  lp_A(m, 2 * n) = 1.0;
  lp_b[m] = shift + radius_cap;
  Vector objective = Vector::Zero(2 * n + 1);
  objective[2 * n] = 1.0;
  const auto solution = maximize_from_origin(lp_A, lp_b, objective);
  if (!solution) throw Error(ErrorKind::Convergence, "chebyshev LP unexpectedly unbounded");
  ChebyshevBall ball;
  ball.center = solution->head(n) - solution->segment(n, n);
  ball.radius = (*solution)[2 * n] - shift;
  return ball;
}

std::optional<double> support(const Matrix& A, const Vector& b, const Vector& interior, const Vector& direction) {
  const Eigen::Index n = A.cols();
  // x = interior + y+ - y-
  Matrix lp_A(A.rows(), 2 * n);
  lp_A << A, -A;
  Vector slack = (b - A * interior).cwiseMax(0.0);
  Vector objective(2 * n);
  objective << direction, -direction;
  const auto solution = maximize_from_origin(lp_A, slack, objective);
  if (!solution) return std::nullopt;
  const Vector x = interior + solution->head(n) - solution->tail(n);
  return direction.dot(x);
}

}  // namespace billiard::linprog
