#include "dhm/operators.hpp"

#include <cmath>
#include <limits>

#include "dhm/errors.hpp"

namespace dhm {

namespace {
constexpr cplx kI{0.0, 1.0};

bool excludable(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::PoleAt:
    case ErrorKind::NonPositiveMetric:
    case ErrorKind::NonFiniteSample:
    case ErrorKind::OriginHasNoImage: return true;
    default: return false;
  }
}

bool near_singular(const DiracHarmonicPair& pair, const ChartPoint& p) {
  for (const SingularPoint& s : pair.singular_points)
    if (s.type != "branch_point" && chart_distance(p, s.location) < kExclusionRadius) return true;
  return false;
}

}  // namespace

double chart_distance(const ChartPoint& p, const SpherePoint& s) {
  constexpr double far = std::numeric_limits<double>::infinity();
  if (p.chart == Chart::Finite) return s.at_infinity ? far : std::abs(p.z - s.z);
  if (s.at_infinity) return std::abs(p.z);
  if (s.z == cplx{}) return far;
  return std::abs(p.z - 1.0 / s.z);
}

namespace {

struct Geometry {
  ComplexJet2 w;
  ComplexJet2 lam;
  Chart target;
};

Geometry geometry(const SurfaceMap& phi, const ChartedSphere& m, const ChartPoint& p, Chart target) {
  return {phi.jet(p, target), m.factor_jet(p.z, p.chart), target};
}

SlotValues dirac_from(const SlotJets& c, const Geometry& g, const ChartedSphere& n) {
  SlotValues out{};
  const cplx a = g.lam.d_z / g.lam.value;
  const cplx ab = std::conj(a);
  const double scale = 2.0 / std::sqrt(g.lam.value.real());
  const cplx lw = n.dlog_dz(g.w.value, g.target);
  const cplx lwb = std::conj(lw);
  const cplx wb_z = std::conj(g.w.d_zbar);
  const cplx wb_zb = std::conj(g.w.d_z);

  const ComplexJet2& c1p = c[index(Slot::OnePlus)];
  const ComplexJet2& c0p = c[index(Slot::ZeroPlus)];
  const ComplexJet2& c1m = c[index(Slot::OneMinus)];
  const ComplexJet2& c0m = c[index(Slot::ZeroMinus)];
  out[index(Slot::OneMinus)] = scale * (c1p.d_zbar + 0.25 * ab * c1p.value + lw * g.w.d_zbar * c1p.value);
  out[index(Slot::ZeroMinus)] = scale * (c0p.d_zbar + 0.25 * ab * c0p.value + lwb * wb_zb * c0p.value);
  out[index(Slot::OnePlus)] = -scale * (c1m.d_z + 0.25 * a * c1m.value + lw * g.w.d_z * c1m.value);
  out[index(Slot::ZeroPlus)] = -scale * (c0m.d_z + 0.25 * a * c0m.value + lwb * wb_z * c0m.value);
  return out;
}

cplx tension_from(const Geometry& g, const ChartedSphere& n) {
  const cplx lw = n.dlog_dz(g.w.value, g.target);
  return (4.0 / g.lam.value.real()) * (g.w.d_zzbar + lw * g.w.d_z * g.w.d_zbar);
}

CouplingVector coupling_from(const SlotValues& c, const Geometry& g, const ChartedSphere& n) {
  const double k = n.gauss_curvature(g.w.value, g.target);
  const double rho = n.factor(g.w.value, g.target);
  const FrameSpinor psi1{c[index(Slot::OnePlus)], c[index(Slot::OneMinus)]};
  const FrameSpinor psi2{c[index(Slot::ZeroPlus)], c[index(Slot::ZeroMinus)]};
  // d/dw coefficient of phi_* e_a, times lambda^(1/2)
  const std::array<cplx, 2> w_a{g.w.d_z + g.w.d_zbar, kI * (g.w.d_z - g.w.d_zbar)};
  const std::array<Tangent, 2> e{Tangent::E1, Tangent::E2};
  CouplingVector out;
  for (int a = 0; a < 2; ++a) {
    const cplx h11 = hermitian(psi1, clifford_apply(e[a], psi1));
    const cplx h22 = hermitian(psi2, clifford_apply(e[a], psi2));
    out.dw += (h11 - h22) * w_a[a];
    out.dwbar += (h22 - h11) * std::conj(w_a[a]);
  }
  const double f = k * 0.5 * rho / std::sqrt(g.lam.value.real());
  out.dw *= f;
  out.dwbar *= f;
  return out;
}

}  // namespace

SlotValues dirac_apply(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                       const ChartPoint& p, Chart target) {
  if (psi.is_structurally_zero()) return {};
  return dirac_from(psi.jets(p, target), geometry(psi.map(), m, p, target), n);
}

SlotValues dirac_apply(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                       const ChartPoint& p) {
  return dirac_apply(psi, m, n, p, psi.target_chart(p));
}

cplx tension_field(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, const ChartPoint& p,
                   Chart target) {
  if (phi.orientation() == Orientation::Constant) return {};
  return tension_from(geometry(phi, m, p, target), n);
}

CouplingVector curvature_coupling(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                                  const ChartPoint& p, Chart target) {
  if (psi.is_structurally_zero()) return {};
  return coupling_from(psi.values(p, target), geometry(psi.map(), m, p, target), n);
}

NodeEvaluation evaluate_node(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                             const ChartPoint& p, Chart target) {
  NodeEvaluation e;
  e.target = target;
  const Geometry g = geometry(psi.map(), m, p, target);
  e.w = g.w.value;
  e.lambda = g.lam.value.real();
  e.rho = n.factor(g.w.value, target);
  if (psi.map().orientation() != Orientation::Constant) e.tension = tension_from(g, n);
  if (!psi.is_structurally_zero()) {
    const SlotJets c = psi.jets(p, target);
    for (int i = 0; i < 4; ++i) e.values[i] = c[i].value;
    e.dirac = dirac_from(c, g, n);
    e.coupling = coupling_from(e.values, g, n);
  }
  return e;
}

double tangent_norm(cplx a, const ChartedSphere& n, cplx w, Chart target) {
  if (a == cplx{}) return 0.0;
  return std::abs(a) * std::sqrt(n.factor(w, target));
}

double spinor_norm(const SlotValues& c, const ChartedSphere& n, cplx w, Chart target) {
  double s = 0.0;
  for (const cplx& v : c) s += std::norm(v);
  if (s == 0.0) return 0.0;
  return std::sqrt(0.5 * n.factor(w, target) * s);
}

ELResidualReport el_verify(const DiracHarmonicPair& pair, const SphereGrid& grid) {
  ELResidualReport r;
  r.n_radial = grid.n_radial();
  r.n_angular = grid.n_angular();
  r.node_count = grid.nodes().size();
  const auto update = [](NodeValue& worst, double& max, std::size_t node, double v) {
    if (v > max) {
      max = v;
      worst = {node, v};
    }
  };
  for (std::size_t i = 0; i < grid.nodes().size(); ++i) {
    const ChartPoint& p = grid.nodes()[i].point;
    if (near_singular(pair, p)) {
      ++r.excluded_nodes;
      continue;
    }
    try {
      const NodeEvaluation e = evaluate_node(pair.psi, pair.domain, pair.target, p, pair.psi.target_chart(p));
      const double root_half_rho = std::sqrt(0.5 * e.rho);
      const auto slot_norm2 = [](const SlotValues& v) {
        double s2 = 0.0;
        for (const cplx& x : v) s2 += std::norm(x);
        return std::sqrt(s2);
      };
      const double psi_norm = root_half_rho * slot_norm2(e.values);
      const double dirac = root_half_rho * slot_norm2(e.dirac);
      const double tension = std::sqrt(e.rho) * std::abs(e.tension);
      const double el = std::sqrt(e.rho) * std::abs(e.tension - e.coupling.dw);
      if (!std::isfinite(psi_norm) || !std::isfinite(dirac) || !std::isfinite(tension) || !std::isfinite(el)) {
        ++r.excluded_nodes;
        continue;
      }
      r.field_scale = std::max(r.field_scale, psi_norm);
      update(r.worst_dirac, r.max_dirac_residual, i, dirac);
      update(r.worst_tension, r.max_tension_residual, i, tension);
      update(r.worst_coupling, r.max_coupling_residual, i, el);
    } catch (const Error& e) {
      if (!excludable(e)) throw;
      ++r.excluded_nodes;
    }
  }
  r.exclusions_within_limit = static_cast<double>(r.excluded_nodes) <= kExclusionLimit * static_cast<double>(r.node_count);
  return r;
}

double jacobian(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, const ChartPoint& p,
                Chart target) {
  if (phi.orientation() == Orientation::Constant) return 0.0;
  const ComplexJet2 w = phi.jet(p, target);
  return n.factor(w.value, target) / m.factor(p.z, p.chart) * (std::norm(w.d_z) - std::norm(w.d_zbar));
}

double bochner_rhs(Slot s, const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n,
                   const ChartPoint& p) {
  const Chart t = phi.target_chart(p);
  const double kn_j = phi.orientation() == Orientation::Constant
                          ? 0.0
                          : n.gauss_curvature(phi.jet(p, t).value, t) * jacobian(phi, m, n, p, t);
  const double sign = (s == Slot::OnePlus || s == Slot::ZeroMinus) ? -1.0 : 1.0;
  return 0.5 * m.gauss_curvature(p.z, p.chart) + sign * kn_j;
}

double bochner_defect(Slot s, const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                      const ChartPoint& p, double h) {
  // Fourth-order second differences [-1, 16, -30, 16, -1] / 12h^2 along x and y.
  static constexpr std::array<double, 5> weights{-1.0, 16.0, -30.0, 16.0, -1.0};
  const auto log_norm = [&](cplx offset) {
    const double v = slot_norm(psi, n, {p.chart, p.z + offset}, s);
    if (!(v > 1e-6)) throw Error(ErrorKind::TooCloseToZeroSet, "slot magnitude below 1e-6 on the Bochner stencil");
    return std::log(v);
  };
  double lap = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double step = (k - 2) * h;
    lap += weights[k] * (k == 2 ? 2.0 * log_norm({}) : log_norm({step, 0.0}) + log_norm({0.0, step}));
  }
  lap /= 12.0 * h * h * m.factor(p.z, p.chart);
  return lap - bochner_rhs(s, psi.map(), m, n, p);
}

double twistor_residual(const SpinorField& psi, const ChartedSphere& m, double theta, const ChartPoint& p) {
  const auto& comp = psi.components(p.chart);
  const ComplexJet2 a = comp[0].eval(p.z);
  const ComplexJet2 b = comp[1].eval(p.z);
  const ComplexJet2 lam = m.factor_jet(p.z, p.chart);
  const double l = lam.value.real();
  const cplx A = lam.d_z / lam.value;
  const cplx Ab = std::conj(A);
  const FrameSpinor nabla_dz{a.d_z - 0.25 * A * a.value, b.d_z + 0.25 * A * b.value};
  const FrameSpinor nabla_dzb{a.d_zbar + 0.25 * Ab * a.value, b.d_zbar - 0.25 * Ab * b.value};
  const auto nabla = [&](cplx v) { return v * nabla_dz + std::conj(v) * nabla_dzb; };
  const double s = 1.0 / std::sqrt(l);
  const FrameSpinor dirac = clifford_apply(Tangent::E1, nabla(s), l) + clifford_apply(Tangent::E2, nabla(kI * s), l);
  const cplx v = s * std::polar(1.0, theta);
  const FrameSpinor r = nabla(v) + 0.5 * clifford_apply(v, dirac, l);
  return std::sqrt(std::norm(r.plus) + std::norm(r.minus));
}

double energy_density(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n, const ChartPoint& p) {
  if (phi.orientation() == Orientation::Constant) return 0.0;
  const Chart t = phi.target_chart(p);
  const ComplexJet2 w = phi.jet(p, t);
  return 2.0 * n.factor(w.value, t) / m.factor(p.z, p.chart) * (std::norm(w.d_z) + std::norm(w.d_zbar));
}

EnergyReport energy_report(const DiracHarmonicPair& pair, const SphereGrid& grid) {
  EnergyReport r;
  for (const GridNode& node : grid.nodes()) {
    const ChartPoint& p = node.point;
    if (near_singular(pair, p)) {
      ++r.excluded_nodes;
      continue;
    }
    const double psi2 = norm_squared(pair.psi, pair.target, p);
    const double psi_norm = std::sqrt(psi2);
    if (!std::isfinite(psi_norm) || psi_norm > kUnboundedSpinor)
      throw Error(ErrorKind::UnboundedSpinor, "spinor norm exceeds the bound-check threshold on the grid");
    r.max_spinor_norm = std::max(r.max_spinor_norm, psi_norm);
    const double area = node.coord_weight * pair.domain.factor(p.z, p.chart);
    r.map_energy += energy_density(pair.map(), pair.domain, pair.target, p) * area;
    r.spinor_energy += psi2 * psi2 * area;
  }
  r.energy = r.map_energy + r.spinor_energy;
  return r;
}

}  // namespace dhm
