#pragma once

// Dirac-harmonic pairs from a rational map and two meromorphic functions:
// psi = e_a . Psi (x) phi_* e_a with Psi = conj(u1) lambda^(1/4) psi+ + u2 lambda^(1/4) psi-.
// In a chart pair with map coordinate w the four components are
//   c1+ = -2 lambda^(-1/4) u2 w_z       c0+ = -2 lambda^(-1/4) u2 conj(w)_z
//   c1- =  2 lambda^(-1/4) conj(u1) w_zbar   c0- = 2 lambda^(-1/4) conj(u1) conj(w)_zbar
// with u replaced by -i t u(1/t) on the infinite domain chart.

#include <string>
#include <vector>

#include "dhm/pair.hpp"

namespace dhm {

struct PoleVerdict {
  std::string function;  // "u1" or "u2"
  SpherePoint location;
  int pole_order = 0;
  int branch_order = 0;
  bool accepted = true;
};

struct AdmissibilityReport {
  std::vector<PoleVerdict> poles;
  bool accepted() const;
  /// First rejected pole, if any.
  const PoleVerdict* offending() const;
};

/// Zero order of |dphi| at p: local multiplicity of the rational map minus one.
int branch_order(const RationalFunction& r, const SpherePoint& p);
/// All points with positive branch order.
std::vector<SpherePoint> branch_points(const RationalFunction& r);

/// Finite pole of order k needs branch order >= k; a pole of order k >= 2 at
/// infinity needs branch order >= k - 1. Throws ConstantMap.
AdmissibilityReport check_admissibility(const SurfaceMap& phi, const RationalFunction& u1, const RationalFunction& u2);

/// Throws Inadmissible, ConstantMapWithNonzeroSpinor.
DiracHarmonicPair build_pair(const SurfaceMap& phi, const RationalFunction& u1, const RationalFunction& u2,
                             const ChartedSphere& m, const ChartedSphere& n);

/// (phi, 0) for a harmonic phi.
DiracHarmonicPair trivial_harmonic(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n);
/// (constant map, 0).
DiracHarmonicPair trivial_constant(cplx w0, const ChartedSphere& m, const ChartedSphere& n);

/// g_M = 0 or |g_M - 1| < |deg| |2 g_N - 2|.
bool harmonicity_forced(int g_m, int g_n, int deg);

/// Adds `delta` to one slot on the finite domain chart and finite target
/// chart; the other charts follow by the frame transition rules.
DiracHarmonicPair perturbed(const DiracHarmonicPair& pair, Slot slot, const MixedExpr& delta);

}  // namespace dhm
