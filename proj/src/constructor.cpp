#include "dhm/constructor.hpp"

#include <cstdlib>
#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {

bool AdmissibilityReport::accepted() const { return offending() == nullptr; }

const PoleVerdict* AdmissibilityReport::offending() const {
  for (const PoleVerdict& v : poles)
    if (!v.accepted) return &v;
  return nullptr;
}

namespace {

int finite_branch_order(const RationalFunction& r, cplx z0) {
  const int order = r.zero_pole_order(SpherePoint::finite(z0));
  const RationalFunction& local = order < 0 ? r.reciprocal() : r;
  const int d = local.derivative().zero_pole_order(SpherePoint::finite(z0));
  return std::max(d, 0);
}

std::vector<std::pair<SpherePoint, int>> poles_of(const RationalFunction& u) {
  std::vector<std::pair<SpherePoint, int>> out;
  if (u.is_zero()) return out;
  for (const auto& [z, k] : u.finite_poles()) out.emplace_back(SpherePoint::finite(z), k);
  const int at_inf = u.zero_pole_order(SpherePoint::infinity());
  if (at_inf < 0) out.emplace_back(SpherePoint::infinity(), -at_inf);
  return out;
}

const RationalFunction& rational_of(const SurfaceMap& phi) {
  if (!phi.rational()) throw Error(ErrorKind::ConstantMap, "map is not (anti)holomorphic rational");
  return *phi.rational();
}

}  // namespace

int branch_order(const RationalFunction& r, const SpherePoint& p) {
  if (r.is_constant()) throw Error(ErrorKind::ConstantMap, "branch order of a constant map is undefined");
  if (p.at_infinity) return finite_branch_order(r.compose_inversion(), 0.0);
  return finite_branch_order(r, p.z);
}

std::vector<SpherePoint> branch_points(const RationalFunction& r) {
  std::vector<SpherePoint> out;
  for (const auto& [z, k] : r.derivative().finite_zeros()) {
    (void)k;
    out.push_back(SpherePoint::finite(z));
  }
  for (const auto& [z, k] : r.finite_poles())
    if (k >= 2) out.push_back(SpherePoint::finite(z));
  if (branch_order(r, SpherePoint::infinity()) > 0) out.push_back(SpherePoint::infinity());
  return out;
}

AdmissibilityReport check_admissibility(const SurfaceMap& phi, const RationalFunction& u1, const RationalFunction& u2) {
  if (phi.orientation() == Orientation::Constant)
    throw Error(ErrorKind::ConstantMap, "admissibility is undefined for a constant map");
  const RationalFunction& r = rational_of(phi);
  AdmissibilityReport report;
  for (const auto& [name, u] : {std::pair<const char*, const RationalFunction*>{"u1", &u1}, {"u2", &u2}}) {
    for (const auto& [loc, k] : poles_of(*u)) {
      PoleVerdict v;
      v.function = name;
      v.location = loc;
      v.pole_order = k;
      v.branch_order = branch_order(r, loc);
      v.accepted = loc.at_infinity ? (k < 2 || v.branch_order >= k - 1) : v.branch_order >= k;
      report.poles.push_back(v);
    }
  }
  return report;
}

namespace {

std::string describe(const PoleVerdict& v) {
  std::ostringstream os;
  os << "pole of " << v.function << " of order " << v.pole_order << " at ";
  if (v.location.at_infinity)
    os << "infinity";
  else
    os << v.location.z;
  os << " exceeds the branch order " << v.branch_order << " of |dphi|";
  return os.str();
}

RationalFunction map_coordinate(const RationalFunction& r, Chart domain, Chart target) {
  const RationalFunction base = domain == Chart::Finite ? r : r.compose_inversion();
  return target == Chart::Finite ? base : base.reciprocal();
}

}  // namespace

DiracHarmonicPair build_pair(const SurfaceMap& phi, const RationalFunction& u1, const RationalFunction& u2,
                             const ChartedSphere& m, const ChartedSphere& n) {
  if (phi.orientation() == Orientation::Constant) {
    if (!u1.is_zero() || !u2.is_zero())
      throw Error(ErrorKind::ConstantMapWithNonzeroSpinor, "a constant map only carries the zero spinor");
    return trivial_constant(phi.expr(Chart::Finite, Chart::Finite).value(0.0), m, n);
  }
  const AdmissibilityReport report = check_admissibility(phi, u1, u2);
  if (const PoleVerdict* bad = report.offending()) throw Error(ErrorKind::Inadmissible, describe(*bad));
  if (u1.is_zero() && u2.is_zero()) return trivial_harmonic(phi, m, n);

  const RationalFunction& r = rational_of(phi);
  const bool holo = phi.orientation() == Orientation::Holomorphic;
  std::array<std::array<std::optional<SlotExprs>, 2>, 2> charts;
  for (Chart d : {Chart::Finite, Chart::Infinite}) {
    if (!m.has_chart(d)) continue;
    const RationalFunction a = d == Chart::Finite ? u1 : twistor_coefficient_at_infinity(u1);
    const RationalFunction b = d == Chart::Finite ? u2 : twistor_coefficient_at_infinity(u2);
    const MixedExpr q = pow(m.factor_expr(d), -0.25);
    for (Chart t : {Chart::Finite, Chart::Infinite}) {
      const RationalFunction dw = map_coordinate(r, d, t).derivative();
      const MixedExpr holo_part = cplx{-2.0} * (q * MixedExpr::holomorphic(b * dw));
      const MixedExpr anti_part = cplx{2.0} * (q * MixedExpr::antiholomorphic(a * dw));
      SlotExprs c;
      c[index(holo ? Slot::OnePlus : Slot::ZeroPlus)] = holo_part;
      c[index(holo ? Slot::ZeroMinus : Slot::OneMinus)] = anti_part;
      charts[index(d)][index(t)] = c;
    }
  }
  DiracHarmonicPair pair{m, n, TwistedSpinorField::from_charts(phi, charts), std::pair{u1, u2}, "twistor", {}};
  for (const auto& [name, u] : {std::pair<const char*, const RationalFunction*>{"pole_u1", &u1}, {"pole_u2", &u2}})
    for (const auto& [loc, k] : poles_of(*u)) {
      // -i t u(1/t) is regular at t = 0 for a simple pole at infinity
      if (loc.at_infinity && k < 2) continue;
      pair.singular_points.push_back({loc, name});
    }
  for (const SpherePoint& p : branch_points(r)) pair.singular_points.push_back({p, "branch_point"});
  return pair;
}

DiracHarmonicPair trivial_harmonic(const SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n) {
  return DiracHarmonicPair{m, n, TwistedSpinorField(phi), std::nullopt, "trivial_harmonic", {}};
}

DiracHarmonicPair trivial_constant(cplx w0, const ChartedSphere& m, const ChartedSphere& n) {
  return DiracHarmonicPair{m, n, TwistedSpinorField(SurfaceMap::constant(w0)), std::nullopt, "trivial_constant", {}};
}

bool harmonicity_forced(int g_m, int g_n, int deg) {
  if (g_m < 0 || g_n < 0) throw Error(ErrorKind::InvalidArgument, "genera must be non-negative");
  if (g_m == 0) return true;
  return std::abs(static_cast<long long>(g_m) - 1) <
         std::llabs(static_cast<long long>(deg)) * std::llabs(2LL * g_n - 2);
}

DiracHarmonicPair perturbed(const DiracHarmonicPair& pair, Slot slot, const MixedExpr& delta) {
  SlotExprs c;
  c[index(slot)] = delta;
  const TwistedSpinorField d = TwistedSpinorField::from_finite_chart(pair.map(), c, Chart::Finite);
  DiracHarmonicPair out = pair;
  out.psi = pair.psi.plus(d);
  out.provenance = pair.provenance + "+perturbation";
  return out;
}

}  // namespace dhm
