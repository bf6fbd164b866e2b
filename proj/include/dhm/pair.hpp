#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhm/spinor.hpp"

namespace dhm {

struct SingularPoint {
  SpherePoint location;
  /// "pole_u1", "pole_u2" or "branch_point"
  std::string type;
};

/// A map between spheres with a spinor field along it, plus how it was made.
struct DiracHarmonicPair {
  ChartedSphere domain;
  ChartedSphere target;
  TwistedSpinorField psi;
  /// (u1, u2) for pairs built from a twistor spinor.
  std::optional<std::pair<RationalFunction, RationalFunction>> twistor;
  /// "twistor", "trivial_harmonic" or "trivial_constant"
  std::string provenance;
  std::vector<SingularPoint> singular_points;

  const SurfaceMap& map() const { return psi.map(); }
};

/// Distance from p to a singular point, measured in p's chart (infinity is t = 0).
double chart_distance(const ChartPoint& p, const SpherePoint& s);

}  // namespace dhm
