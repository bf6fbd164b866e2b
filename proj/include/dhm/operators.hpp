#pragma once

// Differential operators along a map phi: M -> N between conformal spheres.
// Vectors tangent to N are reported by their d/dw coefficient in the target
// chart used at the point; the real vector is a d/dw + conj(a) d/dwbar.

#include <cstddef>

#include "dhm/pair.hpp"

namespace dhm {

inline constexpr double kExclusionRadius = 1e-2;
inline constexpr double kExclusionLimit = 0.01;
inline constexpr double kUnboundedSpinor = 1e6;

/// Dirac operator along the map, in the given target chart. The output for
/// input slot 1+ lands in 1-, 0+ in 0-, 1- in 1+, 0- in 0+.
SlotValues dirac_apply(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                       const ChartPoint& p, Chart target);
SlotValues dirac_apply(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                       const ChartPoint& p);

/// d/dw coefficient of the tension field.
cplx tension_field(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, const ChartPoint& p,
                   Chart target);

struct CouplingVector {
  cplx dw{};
  /// Evaluated independently of dw; equals conj(dw) for a real vector.
  cplx dwbar{};
};

/// -<psi^j, e_a psi^k> R^N(W_j, conj W_k) phi_* e_a, with R_XY Z = K (g(X,Z)Y - g(Y,Z)X).
CouplingVector curvature_coupling(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                                  const ChartPoint& p, Chart target);

/// Everything the Euler-Lagrange residuals need at one point, from a single
/// evaluation of the component and map jets.
struct NodeEvaluation {
  Chart target = Chart::Finite;
  cplx w{};
  double lambda = 0.0;
  double rho = 0.0;
  SlotValues values{};
  SlotValues dirac{};
  cplx tension{};
  CouplingVector coupling;
};

NodeEvaluation evaluate_node(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                             const ChartPoint& p, Chart target);

/// Metric norm of a tangent vector a d/dw + conj(a) d/dwbar at target point w.
double tangent_norm(cplx a, const ChartedSphere& n, cplx w, Chart target);
/// Metric norm of twisted-spinor component values at target point w.
double spinor_norm(const SlotValues& c, const ChartedSphere& n, cplx w, Chart target);

struct NodeValue {
  std::size_t node = 0;
  double value = 0.0;
};

struct ELResidualReport {
  int n_radial = 0;
  int n_angular = 0;
  std::size_t node_count = 0;
  double max_dirac_residual = 0.0;
  double max_tension_residual = 0.0;
  double max_coupling_residual = 0.0;
  /// max |psi| over evaluated nodes; relative residuals divide by it.
  double field_scale = 0.0;
  NodeValue worst_dirac;
  NodeValue worst_tension;
  NodeValue worst_coupling;
  std::size_t excluded_nodes = 0;
  bool exclusions_within_limit = true;

  double relative_dirac_residual() const { return field_scale > 0.0 ? max_dirac_residual / field_scale : max_dirac_residual; }
  double relative_coupling_residual() const {
    return field_scale > 0.0 ? max_coupling_residual / field_scale : max_coupling_residual;
  }
};

/// Both Euler-Lagrange residuals over a grid. Nodes near singular points or
/// where evaluation fails are excluded and counted.
ELResidualReport el_verify(const DiracHarmonicPair& pair, const SphereGrid& grid);

/// Right side of the Bochner identity for a slot at p.
double bochner_rhs(Slot s, const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n,
                   const ChartPoint& p);
/// Fourth-order finite-difference Laplacian of log|pi_s psi| minus the Bochner right side.
/// Throws TooCloseToZeroSet if the slot is below 1e-6 on the stencil.
double bochner_defect(Slot s, const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                      const ChartPoint& p, double h = 1e-2);

/// Jacobian (rho/lambda)(|w_z|^2 - |w_zbar|^2).
double jacobian(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, const ChartPoint& p,
                Chart target);

/// |nabla_v Psi + 1/2 v . D Psi| for the unit vector v = cos(theta) e1 + sin(theta) e2.
double twistor_residual(const SpinorField& psi, const ChartedSphere& m, double theta, const ChartPoint& p);
inline double twistor_residual(const TwistorSpinor& psi, double theta, const ChartPoint& p) {
  return twistor_residual(psi.field(), psi.domain(), theta, p);
}

struct EnergyReport {
  double energy = 0.0;
  double map_energy = 0.0;
  double spinor_energy = 0.0;
  double max_spinor_norm = 0.0;
  std::size_t excluded_nodes = 0;
};

/// |dphi|^2 = 2 (rho/lambda)(|w_z|^2 + |w_zbar|^2)
double energy_density(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, const ChartPoint& p);
/// Integral of |dphi|^2 + |psi|^4. Throws UnboundedSpinor.
EnergyReport energy_report(const DiracHarmonicPair& pair, const SphereGrid& grid);
inline double energy(const DiracHarmonicPair& pair, const SphereGrid& grid) { return energy_report(pair, grid).energy; }

}  // namespace dhm
