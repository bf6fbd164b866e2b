#pragma once

// Discretized Dirac operator on finite ansatz spaces, its near-kernel, and a
// least-squares probe of the coupled Euler-Lagrange system.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dhm/spinor.hpp"

namespace dhm {

/// Basis functions b_j(z, zbar) on the finite chart; each spans the field
/// lambda^(-1/4) b_j in one slot (target chart 0), continued to the other
/// charts by the frame transition rules.
class AnsatzSpace {
 public:
  struct Element {
    int j = 0;  // power of z
    int k = 0;  // power of zbar
    MixedExpr expr;
    /// Growth exponent of the slot norm at infinity.
    double growth = 0.0;
    bool regular = true;
  };

  /// Monomials z^j zbar^k with j + k <= max_degree, keeping those whose slot
  /// norm stays bounded at infinity. Throws SingularBasis.
  static AnsatzSpace monomials(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, Slot slot,
                               int max_degree);
  /// No basis elements.
  static AnsatzSpace empty(const SurfaceMap& phi, Slot slot);
  /// Explicit basis functions, no regularity filtering. Throws SingularBasis.
  static AnsatzSpace from_functions(const SurfaceMap& phi, const ChartedSphere& m, Slot slot,
                                    std::vector<MixedExpr> functions);

  Slot slot() const { return slot_; }
  const SurfaceMap& map() const { return map_; }
  /// Retained basis (after filtering).
  const std::vector<TwistedSpinorField>& fields() const { return fields_; }
  const std::vector<Element>& candidates() const { return candidates_; }
  std::size_t size() const { return fields_.size(); }

 private:
  AnsatzSpace(SurfaceMap map, Slot slot) : map_(std::move(map)), slot_(slot) {}
  SurfaceMap map_;
  Slot slot_;
  std::vector<Element> candidates_;
  std::vector<TwistedSpinorField> fields_;
};

/// Growth exponent of |pi_s psi| between |z| = 1e2 and 1e4 on the finite chart.
double growth_exponent(const TwistedSpinorField& psi, const ChartedSphere& n, Slot s);

/// Rows: sqrt(area weight) times the metric-normalized real and imaginary
/// parts of all four Dirac output slots at every node of both charts.
/// Columns: basis fields scaled to unit L2 norm on the grid.
Eigen::MatrixXd assemble_dirac_matrix(const AnsatzSpace& space, const ChartedSphere& m, const ChartedSphere& n,
                                      const SphereGrid& grid);
/// Raw L2 norm of each assembled column before normalization.
std::vector<double> basis_norms(const AnsatzSpace& space, const ChartedSphere& n, const SphereGrid& grid);

struct KernelReport {
  std::vector<double> singular_values;  // descending
  int dimension = 0;
  double gap_ratio = 0.0;
};

inline constexpr double kSingularFloor = 1e-16;

/// Dimension below the largest ratio gap of the singular values, with a
/// sentinel max(s_0, 1) above and 1e-16 below. Throws NoSpectralGap.
KernelReport near_kernel(const Eigen::MatrixXd& a, double gap = 1e3);
KernelReport near_kernel_from_singular_values(std::vector<double> s, double gap = 1e3);
std::vector<double> singular_values(const Eigen::MatrixXd& a);

// --- joint residual and descent ---------------------------------------------

/// theta = [Re p0, Im p0, Re p1, Im p1, Re eps, Im eps,
///          then per slot (1+, 0+, 1-, 0-): Re/Im of a, b, c]
/// for the map w = p0 + p1 z + eps zbar and spinor components lambda^(-1/4)(a + b z + c zbar).
inline constexpr int kThetaSize = 30;
using Theta = Eigen::Matrix<double, kThetaSize, 1>;

struct JointProblem {
  ChartedSphere domain;
  ChartedSphere target;
  SphereGrid grid;
  double coefficient_bound = 1e3;
};

/// Map and spinor encoded by theta. Throws DegenerateMap, InvalidArgument.
TwistedSpinorField field_from_theta(const Theta& theta, const ChartedSphere& m);
/// Weighted residual samples; the squared norm is the joint residual.
Eigen::VectorXd residual_vector(const JointProblem& problem, const Theta& theta);
/// Quadrature of |D psi|^2 + |tau - coupling|^2 over both charts.
double joint_residual(const JointProblem& problem, const Theta& theta);
/// Forward-difference Jacobian of residual_vector over the free parameters.
Eigen::MatrixXd residual_jacobian(const JointProblem& problem, const Theta& theta, const std::vector<bool>& free);

/// Theta of the pair (w = p1 z, spinor lambda^(-1/4) a in slot 1+).
Theta theta_holomorphic_line(cplx p1, cplx a);

struct DescentStep {
  int iteration = 0;
  double residual = 0.0;
  double step_norm = 0.0;
  bool accepted = false;
};

struct DescentOptions {
  int budget = 500;
  double tolerance = 1e-14;
  double initial_step = 1e-2;
  /// Parameters held at their initial values (indices into theta).
  std::vector<int> fixed;
};

struct DescentResult {
  Theta theta;
  double residual = 0.0;
  std::vector<DescentStep> trace;
  int accepted_steps = 0;
  bool converged = false;
  bool budget_exhausted = false;
};

/// Damped Gauss-Newton with minimum-norm steps: the step fraction starts at
/// `initial_step`, doubles (up to 1) on acceptance and halves on rejection.
DescentResult descend(const JointProblem& problem, const Theta& theta0, const DescentOptions& options = {});

}  // namespace dhm
