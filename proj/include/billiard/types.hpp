#pragma once

#include <Eigen/Dense>

namespace billiard {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace billiard
