#include "dhm/errors.hpp"

namespace dhm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::IdenticallyZero: return "IdenticallyZero";
    case ErrorKind::NonPositiveMetric: return "NonPositiveMetric";
    case ErrorKind::OriginHasNoImage: return "OriginHasNoImage";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::OutsideOverlap: return "OutsideOverlap";
    case ErrorKind::ChartUnavailable: return "ChartUnavailable";
    case ErrorKind::TooCloseToZeroSet: return "TooCloseToZeroSet";
    case ErrorKind::UnboundedSpinor: return "UnboundedSpinor";
    case ErrorKind::ConstantMap: return "ConstantMap";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::ConstantMapWithNonzeroSpinor: return "ConstantMapWithNonzeroSpinor";
    case ErrorKind::ZeroOnContour: return "ZeroOnContour";
    case ErrorKind::NonIntegralWinding: return "NonIntegralWinding";
    case ErrorKind::UnresolvedCluster: return "UnresolvedCluster";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::NoSpectralGap: return "NoSpectralGap";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace dhm
