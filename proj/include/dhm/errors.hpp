#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dhm {

enum class ErrorKind {
  PoleAt,
  IdenticallyZero,
  NonPositiveMetric,
  OriginHasNoImage,
  NonFiniteSample,
  OutsideOverlap,
  ChartUnavailable,
  TooCloseToZeroSet,
  UnboundedSpinor,
  ConstantMap,
  Inadmissible,
  ConstantMapWithNonzeroSpinor,
  ZeroOnContour,
  NonIntegralWinding,
  UnresolvedCluster,
  SingularBasis,
  NoSpectralGap,
  DegenerateMap,
  InvalidArgument,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dhm
