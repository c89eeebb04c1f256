#pragma once

#include <stdexcept>
#include <string>

namespace billiard {

enum class ErrorKind {
  InvalidDimension,
  InvalidConfig,
  EmptyInterior,
  NotPositiveDefinite,
  DimensionMismatch,
  NotInterior,
  UnsupportedBody,
  PathologicalGeometry,
  Convergence,
  RankDeficiency,
  InvalidPartition,
  OutOfBody,
  Io,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace billiard
