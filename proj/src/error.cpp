#include "billiard/error.hpp"

namespace billiard {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid dimension";
    case ErrorKind::InvalidConfig: return "invalid config";
    case ErrorKind::EmptyInterior: return "empty interior";
    case ErrorKind::NotPositiveDefinite: return "not positive definite";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NotInterior: return "point not interior";
    case ErrorKind::UnsupportedBody: return "unsupported body";
    case ErrorKind::PathologicalGeometry: return "pathological geometry";
    case ErrorKind::Convergence: return "convergence failure";
    case ErrorKind::RankDeficiency: return "rank deficiency";
    case ErrorKind::InvalidPartition: return "invalid partition";
    case ErrorKind::OutOfBody: return "sample out of body";
    case ErrorKind::Io: return "io error";
  }
  return "unknown error";
}

}  // namespace billiard
