#include "dhm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dhm/errors.hpp"
#include "dhm/operators.hpp"

namespace dhm {

double growth_exponent(const TwistedSpinorField& psi, const ChartedSphere& n, Slot s) {
  static constexpr std::array<double, 3> angles{0.3, 1.9, 4.1};
  double near = 0.0;
  double far = 0.0;
  for (double th : angles) {
    near = std::max(near, slot_norm(psi, n, {Chart::Finite, std::polar(1e2, th)}, s));
    far = std::max(far, slot_norm(psi, n, {Chart::Finite, std::polar(1e4, th)}, s));
  }
  if (far == 0.0) return -std::numeric_limits<double>::infinity();
  if (near == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(far / near) / std::log(1e2);
}

namespace {

TwistedSpinorField slot_field(const SurfaceMap& phi, const ChartedSphere& m, Slot slot, const MixedExpr& b) {
  SlotExprs c;
  c[index(slot)] = pow(m.factor_expr(Chart::Finite), -0.25) * b;
  return TwistedSpinorField::from_finite_chart(phi, c, Chart::Finite);
}

struct NodeFrame {
  Chart target;
  cplx w;
  double sqrt_half_rho;
  double sqrt_area;
};

NodeFrame node_frame(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                     const GridNode& node) {
  const ChartPoint& p = node.point;
  const Chart t = psi.target_chart(p);
  const cplx w = psi.map().jet(p, t).value;
  return {t, w, std::sqrt(0.5 * n.factor(w, t)), std::sqrt(node.coord_weight * m.factor(p.z, p.chart))};
}

Eigen::MatrixXd sample_matrix(const AnsatzSpace& space, const ChartedSphere& m, const ChartedSphere& n,
                              const SphereGrid& grid) {
  const auto& nodes = grid.nodes();
  Eigen::MatrixXd s(static_cast<Eigen::Index>(2 * nodes.size()), static_cast<Eigen::Index>(space.size()));
  for (std::size_t j = 0; j < space.size(); ++j) {
    const TwistedSpinorField& f = space.fields()[j];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const NodeFrame fr = node_frame(f, m, n, nodes[i]);
      const cplx v = fr.sqrt_area * fr.sqrt_half_rho * f.values(nodes[i].point, fr.target)[index(space.slot())];
      s(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(j)) = v.real();
      s(static_cast<Eigen::Index>(2 * i + 1), static_cast<Eigen::Index>(j)) = v.imag();
    }
  }
  return s;
}

void check_independent(const AnsatzSpace& space, const ChartedSphere& m, const ChartedSphere& n) {
  if (space.size() == 0) return;
  const SphereGrid probe(16, 16);
  Eigen::MatrixXd s = sample_matrix(space, m, n, probe);
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    const double c = s.col(j).norm();
    if (c == 0.0) throw Error(ErrorKind::SingularBasis, "basis element vanishes on the grid");
    s.col(j) /= c;
  }
  const std::vector<double> sv = singular_values(s);
  if (sv.back() <= 1e-8) {
    std::ostringstream os;
    os << "basis samples are linearly dependent (smallest singular value " << sv.back() << ")";
    throw Error(ErrorKind::SingularBasis, os.str());
  }
}

}  // namespace

AnsatzSpace AnsatzSpace::monomials(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, Slot slot,
                                   int max_degree) {
  AnsatzSpace space(phi, slot);
  for (int total = 0; total <= max_degree; ++total)
    for (int k = 0; k <= total; ++k) {
      const int j = total - k;
      Element e;
      e.j = j;
      e.k = k;
      e.expr = MixedExpr::holomorphic(RationalFunction::monomial(j)) *
               MixedExpr::antiholomorphic(RationalFunction::monomial(k));
      const TwistedSpinorField f = slot_field(phi, m, slot, e.expr);
      e.growth = growth_exponent(f, n, slot);
      e.regular = e.growth <= 0.5;
      space.candidates_.push_back(e);
      if (e.regular) space.fields_.push_back(f);
    }
  check_independent(space, m, n);
  return space;
}

AnsatzSpace AnsatzSpace::empty(const SurfaceMap& phi, Slot slot) { return AnsatzSpace(phi, slot); }

AnsatzSpace AnsatzSpace::from_functions(const SurfaceMap& phi, const ChartedSphere& m, Slot slot,
                                        std::vector<MixedExpr> functions) {
  AnsatzSpace space(phi, slot);
  for (MixedExpr& b : functions) {
    Element e;
    e.j = e.k = -1;
    e.expr = b;
    space.candidates_.push_back(e);
    space.fields_.push_back(slot_field(phi, m, slot, b));
  }
  // node weights are positive, so any target metric serves for the rank test
  check_independent(space, m, m);
  return space;
}

std::vector<double> basis_norms(const AnsatzSpace& space, const ChartedSphere& n, const SphereGrid& grid) {
  std::vector<double> out;
  for (const TwistedSpinorField& f : space.fields()) {
    double sum = 0.0;
    for (const GridNode& node : grid.nodes()) {
      const double v = slot_norm(f, n, node.point, space.slot());
      sum += v * v * node.coord_weight;
    }
    out.push_back(sum);
  }
  return out;
}

Eigen::MatrixXd assemble_dirac_matrix(const AnsatzSpace& space, const ChartedSphere& m, const ChartedSphere& n,
                                      const SphereGrid& grid) {
  const auto& nodes = grid.nodes();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(8 * nodes.size()), static_cast<Eigen::Index>(space.size()));
  for (std::size_t j = 0; j < space.size(); ++j) {
    const TwistedSpinorField& f = space.fields()[j];
    double norm2 = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const ChartPoint& p = nodes[i].point;
      const NodeFrame fr = node_frame(f, m, n, nodes[i]);
      const SlotValues c = f.values(p, fr.target);
      norm2 += std::pow(fr.sqrt_area * fr.sqrt_half_rho * std::abs(c[index(space.slot())]), 2);
      const SlotValues out = dirac_apply(f, m, n, p, fr.target);
      for (int s = 0; s < 4; ++s) {
        const cplx v = fr.sqrt_area * fr.sqrt_half_rho * out[s];
        if (!std::isfinite(std::abs(v))) throw Error(ErrorKind::NonFiniteSample, "non-finite Dirac sample");
        a(static_cast<Eigen::Index>(8 * i + 2 * s), static_cast<Eigen::Index>(j)) = v.real();
        a(static_cast<Eigen::Index>(8 * i + 2 * s + 1), static_cast<Eigen::Index>(j)) = v.imag();
      }
    }
    if (!(norm2 > 0.0)) throw Error(ErrorKind::SingularBasis, "basis element vanishes on the grid");
    a.col(static_cast<Eigen::Index>(j)) /= std::sqrt(norm2);
  }
  return a;
}

std::vector<double> singular_values(const Eigen::MatrixXd& a) {
  if (a.cols() == 0 || a.rows() == 0) return {};
  Eigen::VectorXd s;
  if (a.rows() > a.cols()) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    s = Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues();
  } else {
    s = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
  }
  return {s.data(), s.data() + s.size()};
}

KernelReport near_kernel_from_singular_values(std::vector<double> s, double gap) {
  std::sort(s.begin(), s.end(), std::greater<>());
  KernelReport r;
  r.singular_values = s;
  std::vector<double> ext;
  ext.push_back(std::max(s.empty() ? 1.0 : s.front(), 1.0));
  for (double v : s) ext.push_back(std::max(v, kSingularFloor));
  ext.push_back(kSingularFloor);
  // cut between ext[i] and ext[i + 1]: the last i singular values are discarded
  double best = 0.0;
  std::size_t cut = 0;
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
    const double ratio = ext[i] / ext[i + 1];
    if (ratio > best) {
      best = ratio;
      cut = i;
    }
  }
  r.gap_ratio = best;
  r.dimension = static_cast<int>(s.size() - cut);
  if (best < gap) {
    std::ostringstream os;
    os << "largest singular-value gap " << best << " is below the required " << gap;
    throw Error(ErrorKind::NoSpectralGap, os.str());
  }
  return r;
}

KernelReport near_kernel(const Eigen::MatrixXd& a, double gap) {
  return near_kernel_from_singular_values(singular_values(a), gap);
}

// ---------------------------------------------------------------------------

namespace {

cplx coef(const Theta& t, int i) { return {t(i), t(i + 1)}; }

}  // namespace

Theta theta_holomorphic_line(cplx p1, cplx a) {
  Theta t = Theta::Zero();
  t(2) = p1.real();
  t(3) = p1.imag();
  t(6) = a.real();
  t(7) = a.imag();
  return t;
}

TwistedSpinorField field_from_theta(const Theta& theta, const ChartedSphere& m) {
  const cplx p0 = coef(theta, 0);
  const cplx p1 = coef(theta, 2);
  const cplx eps = coef(theta, 4);
  SurfaceMap phi = SurfaceMap::constant(p0);
  if (p1 != cplx{} || eps != cplx{}) {
    const double hi = std::max(std::abs(p1), std::abs(eps));
    if (std::abs(std::abs(p1) - std::abs(eps)) <= 1e-12 * hi)
      throw Error(ErrorKind::DegenerateMap, "|p1| = |eps|: the map has rank below two everywhere");
    phi = SurfaceMap::general(MixedExpr::constant(p0) + p1 * MixedExpr::z() + eps * MixedExpr::zbar());
  }
  const MixedExpr q = pow(m.factor_expr(Chart::Finite), -0.25);
  SlotExprs c;
  for (Slot s : kAllSlots) {
    const int base = 6 + 6 * index(s);
    const cplx a = coef(theta, base);
    const cplx b = coef(theta, base + 2);
    const cplx e = coef(theta, base + 4);
    if (a == cplx{} && b == cplx{} && e == cplx{}) continue;
    c[index(s)] = q * (MixedExpr::constant(a) + b * MixedExpr::z() + e * MixedExpr::zbar());
  }
  return TwistedSpinorField::from_finite_chart(phi, c, Chart::Finite);
}

Eigen::VectorXd residual_vector(const JointProblem& problem, const Theta& theta) {
  for (int i = 0; i < kThetaSize; ++i)
    if (!(std::abs(theta(i)) <= problem.coefficient_bound))
      throw Error(ErrorKind::InvalidArgument, "parameter outside the coefficient box");
  const TwistedSpinorField psi = field_from_theta(theta, problem.domain);
  const auto& nodes = problem.grid.nodes();
  Eigen::VectorXd r(static_cast<Eigen::Index>(10 * nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ChartPoint& p = nodes[i].point;
    const NodeEvaluation e = evaluate_node(psi, problem.domain, problem.target, p, psi.target_chart(p));
    const SlotValues& out = e.dirac;
    const double s = std::sqrt(nodes[i].coord_weight * e.lambda * 0.5 * e.rho);
    const cplx tau = e.tension;
    const cplx coupling = e.coupling.dw;
    const auto k = static_cast<Eigen::Index>(10 * i);
    for (int j = 0; j < 4; ++j) {
      r(k + 2 * j) = s * out[j].real();
      r(k + 2 * j + 1) = s * out[j].imag();
    }
    const cplx el = std::sqrt(2.0) * s * (tau - coupling);
    r(k + 8) = el.real();
    r(k + 9) = el.imag();
  }
  if (!r.allFinite()) throw Error(ErrorKind::DegenerateMap, "residual is not finite on the grid");
  return r;
}

double joint_residual(const JointProblem& problem, const Theta& theta) {
  return residual_vector(problem, theta).squaredNorm();
}

Eigen::MatrixXd residual_jacobian(const JointProblem& problem, const Theta& theta, const std::vector<bool>& free) {
  const Eigen::VectorXd r0 = residual_vector(problem, theta);
  std::vector<int> cols;
  for (int i = 0; i < kThetaSize; ++i)
    if (free[static_cast<size_t>(i)]) cols.push_back(i);
  Eigen::MatrixXd j(r0.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int i = cols[c];
    const double h = 1e-7 * std::max(1.0, std::abs(theta(i)));
    Theta t = theta;
    t(i) += h;
    j.col(static_cast<Eigen::Index>(c)) = (residual_vector(problem, t) - r0) / h;
  }
  return j;
}

DescentResult descend(const JointProblem& problem, const Theta& theta0, const DescentOptions& options) {
  std::vector<bool> free(kThetaSize, true);
  for (int i : options.fixed) free.at(static_cast<size_t>(i)) = false;
  std::vector<int> cols;
  for (int i = 0; i < kThetaSize; ++i)
    if (free[static_cast<size_t>(i)]) cols.push_back(i);

  DescentResult result;
  result.theta = theta0;
  Eigen::VectorXd r = residual_vector(problem, theta0);
  result.residual = r.squaredNorm();
  result.trace.push_back({0, result.residual, 0.0, true});
  double alpha = options.initial_step;
  for (int it = 1; it <= options.budget; ++it) {
    if (result.residual <= options.tolerance) break;
    const Eigen::MatrixXd jac = residual_jacobian(problem, result.theta, free);
    const Eigen::VectorXd delta = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(jac).solve(-r);
    Theta trial = result.theta;
    for (std::size_t c = 0; c < cols.size(); ++c) trial(cols[c]) += alpha * delta(static_cast<Eigen::Index>(c));
    const double step_norm = alpha * delta.norm();
    bool accepted = false;
    try {
      const Eigen::VectorXd rt = residual_vector(problem, trial);
      const double f = rt.squaredNorm();
      if (f < result.residual) {
        accepted = true;
        result.theta = trial;
        result.residual = f;
        r = rt;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateMap && e.kind() != ErrorKind::InvalidArgument) throw;
    }
    if (accepted) {
      ++result.accepted_steps;
      alpha = std::min(1.0, 2.0 * alpha);
    } else {
      alpha *= 0.5;
    }
    result.trace.push_back({it, result.residual, step_norm, accepted});
    if (alpha < 1e-20) break;
  }
  result.converged = result.residual <= options.tolerance;
  result.budget_exhausted = !result.converged && static_cast<int>(result.trace.size()) > options.budget;
  return result;
}

}  // namespace dhm
