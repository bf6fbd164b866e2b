#include "dhm/spinor.hpp"

#include <cmath>
#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {

namespace {
constexpr cplx kI{0.0, 1.0};
}

FrameSpinor clifford_apply(Tangent x, FrameSpinor s, double lambda) {
  const double root = std::sqrt(lambda);
  switch (x) {
    case Tangent::E1: return {-s.minus, s.plus};
    case Tangent::E2: return {kI * s.minus, kI * s.plus};
    case Tangent::Dz: return {0.0, root * s.plus};
    case Tangent::Dzbar: return {-root * s.minus, 0.0};
  }
  return {};
}

FrameSpinor clifford_apply(cplx v_dz, FrameSpinor s, double lambda) {
  return v_dz * clifford_apply(Tangent::Dz, s, lambda) + std::conj(v_dz) * clifford_apply(Tangent::Dzbar, s, lambda);
}

cplx hermitian(FrameSpinor a, FrameSpinor b) { return a.plus * std::conj(b.plus) + a.minus * std::conj(b.minus); }

// ---------------------------------------------------------------------------

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Holomorphic: return "holo";
    case Orientation::Antiholomorphic: return "anti";
    case Orientation::Constant: return "constant";
    case Orientation::General: return "general";
  }
  return "unknown";
}

SurfaceMap SurfaceMap::holomorphic(RationalFunction r) {
  if (r.is_constant()) return constant(r(0.0));
  SurfaceMap m;
  m.orientation_ = Orientation::Holomorphic;
  const RationalFunction r1 = r.compose_inversion();
  m.expr_[0][0] = MixedExpr::holomorphic(r);
  m.expr_[0][1] = MixedExpr::holomorphic(r.reciprocal());
  m.expr_[1][0] = MixedExpr::holomorphic(r1);
  m.expr_[1][1] = MixedExpr::holomorphic(r1.reciprocal());
  m.rational_ = std::move(r);
  return m;
}

SurfaceMap SurfaceMap::antiholomorphic(RationalFunction r) {
  if (r.is_constant()) return constant(std::conj(r(0.0)));
  SurfaceMap m;
  m.orientation_ = Orientation::Antiholomorphic;
  const RationalFunction r1 = r.compose_inversion();
  m.expr_[0][0] = MixedExpr::antiholomorphic(r);
  m.expr_[0][1] = MixedExpr::antiholomorphic(r.reciprocal());
  m.expr_[1][0] = MixedExpr::antiholomorphic(r1);
  m.expr_[1][1] = MixedExpr::antiholomorphic(r1.reciprocal());
  m.rational_ = std::move(r);
  return m;
}

SurfaceMap SurfaceMap::constant(cplx w0) {
  SurfaceMap m;
  m.orientation_ = Orientation::Constant;
  for (int d = 0; d < 2; ++d) {
    m.expr_[d][0] = MixedExpr::constant(w0);
    if (w0 != cplx{}) m.expr_[d][1] = MixedExpr::constant(1.0 / w0);
  }
  return m;
}

SurfaceMap SurfaceMap::general(MixedExpr w) {
  SurfaceMap m;
  m.orientation_ = Orientation::General;
  const MixedExpr one = MixedExpr::constant(1.0);
  const MixedExpr w1 = compose_inversion(w);
  m.expr_[0][0] = w;
  m.expr_[0][1] = one / w;
  m.expr_[1][0] = w1;
  m.expr_[1][1] = one / w1;
  return m;
}

int SurfaceMap::degree() const {
  switch (orientation_) {
    case Orientation::Holomorphic: return rational_->map_degree();
    case Orientation::Antiholomorphic: return -rational_->map_degree();
    default: return 0;
  }
}

const MixedExpr& SurfaceMap::expr(Chart domain, Chart target) const {
  const auto& e = expr_[index(domain)][index(target)];
  if (!e) throw Error(ErrorKind::ChartUnavailable, "map has no expression in the requested target chart");
  return *e;
}

ComplexJet2 SurfaceMap::jet(const ChartPoint& p, Chart target) const { return expr(p.chart, target).eval(p.z); }

Chart SurfaceMap::target_chart(const ChartPoint& p) const {
  if (!has(p.chart, Chart::Finite)) return Chart::Infinite;
  if (!has(p.chart, Chart::Infinite)) return Chart::Finite;
  try {
    const cplx w = expr(p.chart, Chart::Finite).value(p.z);
    return (std::isfinite(std::abs(w)) && std::abs(w) <= 1.0) ? Chart::Finite : Chart::Infinite;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleAt) return Chart::Infinite;
    throw;
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(Slot s) {
  static constexpr std::string_view names[] = {"1+", "0+", "1-", "0-"};
  return names[index(s)];
}

Slot slot_from_string(std::string_view s) {
  for (Slot slot : kAllSlots)
    if (to_string(slot) == s) return slot;
  throw Error(ErrorKind::InvalidArgument, "unknown slot label '" + std::string(s) + "'");
}

int chirality(Slot s) { return (s == Slot::OnePlus || s == Slot::ZeroPlus) ? 1 : -1; }
bool is_type_10(Slot s) { return s == Slot::OnePlus || s == Slot::OneMinus; }

MixedExpr spin_phase_to_infinite_chart(int chirality_sign) {
  const MixedExpr t = MixedExpr::z();
  const MixedExpr tb = MixedExpr::zbar();
  const MixedExpr inv_abs = pow(t * tb, -0.5);
  return chirality_sign > 0 ? kI * (tb * inv_abs) : -kI * (t * inv_abs);
}

namespace {

SlotExprs target_change(const SlotExprs& c, const MixedExpr& w_source) {
  const MixedExpr f = -(MixedExpr::constant(1.0) / (w_source * w_source));
  const MixedExpr fb = conj(f);
  SlotExprs out;
  for (Slot s : kAllSlots) out[index(s)] = c[index(s)] * (is_type_10(s) ? f : fb);
  return out;
}

SlotExprs domain_change_to_infinite(const SlotExprs& c) {
  const MixedExpr plus = spin_phase_to_infinite_chart(1);
  const MixedExpr minus = spin_phase_to_infinite_chart(-1);
  SlotExprs out;
  for (Slot s : kAllSlots) out[index(s)] = compose_inversion(c[index(s)]) * (chirality(s) > 0 ? plus : minus);
  return out;
}

}  // namespace

TwistedSpinorField::TwistedSpinorField(SurfaceMap map) : map_(std::move(map)) {
  for (int d = 0; d < 2; ++d)
    for (int t = 0; t < 2; ++t)
      if (map_.has(static_cast<Chart>(d), static_cast<Chart>(t))) charts_[d][t] = SlotExprs{};
}

TwistedSpinorField TwistedSpinorField::from_finite_chart(SurfaceMap map, SlotExprs components, Chart target) {
  TwistedSpinorField f(std::move(map));
  for (auto& row : f.charts_)
    for (auto& e : row) e.reset();
  const Chart other_target = other(target);
  f.charts_[0][index(target)] = components;
  if (f.map_.has(Chart::Finite, target) && f.map_.has(Chart::Finite, other_target))
    f.charts_[0][index(other_target)] = target_change(components, f.map_.expr(Chart::Finite, target));
  for (int t = 0; t < 2; ++t)
    if (f.charts_[0][t]) f.charts_[1][t] = domain_change_to_infinite(*f.charts_[0][t]);
  return f;
}

TwistedSpinorField TwistedSpinorField::from_charts(SurfaceMap map,
                                                   std::array<std::array<std::optional<SlotExprs>, 2>, 2> charts) {
  TwistedSpinorField f(std::move(map));
  f.charts_ = std::move(charts);
  return f;
}

const SlotExprs& TwistedSpinorField::components(Chart domain, Chart target) const {
  const auto& e = charts_[index(domain)][index(target)];
  if (!e) throw Error(ErrorKind::ChartUnavailable, "spinor field is not available in the requested chart pair");
  return *e;
}

Chart TwistedSpinorField::target_chart(const ChartPoint& p) const {
  const Chart t = map_.target_chart(p);
  return has(p.chart, t) ? t : other(t);
}

SlotJets TwistedSpinorField::jets(const ChartPoint& p, Chart target) const {
  const SlotExprs& c = components(p.chart, target);
  SlotJets out;
  for (int i = 0; i < 4; ++i) out[i] = c[i].eval(p.z);
  return out;
}

SlotValues TwistedSpinorField::values(const ChartPoint& p, Chart target) const {
  const SlotExprs& c = components(p.chart, target);
  SlotValues out;
  for (int i = 0; i < 4; ++i) out[i] = c[i].is_zero() ? cplx{} : c[i].value(p.z);
  return out;
}

bool TwistedSpinorField::slot_is_structurally_zero(Slot s) const {
  for (const auto& row : charts_)
    for (const auto& e : row)
      if (e && !(*e)[index(s)].is_zero()) return false;
  return true;
}

bool TwistedSpinorField::is_structurally_zero() const {
  for (Slot s : kAllSlots)
    if (!slot_is_structurally_zero(s)) return false;
  return true;
}

TwistedSpinorField TwistedSpinorField::project(Slot s) const {
  TwistedSpinorField out = *this;
  for (auto& row : out.charts_)
    for (auto& e : row)
      if (e)
        for (Slot k : kAllSlots)
          if (k != s) (*e)[index(k)] = MixedExpr();
  return out;
}

TwistedSpinorField TwistedSpinorField::plus(const TwistedSpinorField& o) const {
  TwistedSpinorField out = *this;
  for (int d = 0; d < 2; ++d)
    for (int t = 0; t < 2; ++t) {
      auto& e = out.charts_[d][t];
      const auto& oe = o.charts_[d][t];
      if (!e || !oe) {
        e.reset();
        continue;
      }
      for (int i = 0; i < 4; ++i) (*e)[i] = (*e)[i] + (*oe)[i];
    }
  return out;
}

TwistedSpinorField TwistedSpinorField::scaled(cplx s) const {
  TwistedSpinorField out = *this;
  for (auto& row : out.charts_)
    for (auto& e : row)
      if (e)
        for (auto& c : *e) c = s * c;
  return out;
}

double norm_squared(const TwistedSpinorField& psi, const ChartedSphere& target, const ChartPoint& p) {
  const Chart t = psi.target_chart(p);
  const SlotValues c = psi.values(p, t);
  double sum = 0.0;
  for (const cplx& v : c) sum += std::norm(v);
  if (sum == 0.0) return 0.0;
  const cplx w = psi.map().jet(p, t).value;
  return 0.5 * target.factor(w, t) * sum;
}

double slot_norm(const TwistedSpinorField& psi, const ChartedSphere& target, const ChartPoint& p, Slot s) {
  const Chart t = psi.target_chart(p);
  const cplx c = psi.values(p, t)[index(s)];
  if (c == cplx{}) return 0.0;
  const cplx w = psi.map().jet(p, t).value;
  return std::abs(c) * std::sqrt(0.5 * target.factor(w, t));
}

SlotValues transform_components(const SlotValues& c, const ChartPoint& p, Chart from_target, cplx w,
                                Chart to_domain, Chart to_target) {
  SlotValues out = c;
  if (to_target != from_target) {
    if (w == cplx{}) throw Error(ErrorKind::ChartUnavailable, "map value 0 has no image in the other target chart");
    const cplx f = -1.0 / (w * w);
    for (Slot s : kAllSlots) out[index(s)] *= is_type_10(s) ? f : std::conj(f);
  }
  if (to_domain != p.chart) {
    if (p.z == cplx{}) throw Error(ErrorKind::OriginHasNoImage, "chart origin has no image in the other chart");
    const cplx u = p.z / std::abs(p.z);
    // from z: psi+ -> i z/|z|, psi- -> -i zbar/|z|; from t: the conjugate phases in z = 1/t
    const cplx plus = p.chart == Chart::Finite ? kI * u : -kI * u;
    const cplx minus = p.chart == Chart::Finite ? -kI * std::conj(u) : kI * std::conj(u);
    for (Slot s : kAllSlots) out[index(s)] *= chirality(s) > 0 ? plus : minus;
  }
  return out;
}

SlotValues component_transition(const TwistedSpinorField& psi, const ChartPoint& p, Chart to_target) {
  const double r = std::abs(p.z);
  if (r < 0.5 || r > 2.0) {
    std::ostringstream os;
    os << "point " << p.z << " is outside the chart overlap 0.5 <= |z| <= 2";
    throw Error(ErrorKind::OutsideOverlap, os.str());
  }
  const Chart from = psi.target_chart(p);
  const cplx w = psi.map().jet(p, from).value;
  return transform_components(psi.values(p, from), p, from, w, other(p.chart), to_target);
}

// ---------------------------------------------------------------------------

const std::array<MixedExpr, 2>& SpinorField::components(Chart c) const {
  const auto& e = charts_[index(c)];
  if (!e) throw Error(ErrorKind::ChartUnavailable, "spinor field is not available in the requested chart");
  return *e;
}

RationalFunction twistor_coefficient_at_infinity(const RationalFunction& u) {
  return u.compose_inversion() * RationalFunction::monomial(1, -kI);
}

TwistorSpinor::TwistorSpinor(RationalFunction u1, RationalFunction u2, ChartedSphere domain)
    : u1_(std::move(u1)), u2_(std::move(u2)), domain_(std::move(domain)) {}

RationalFunction TwistorSpinor::u1_infinite() const { return twistor_coefficient_at_infinity(u1_); }
RationalFunction TwistorSpinor::u2_infinite() const { return twistor_coefficient_at_infinity(u2_); }

SpinorField TwistorSpinor::field() const {
  auto chart = [&](Chart c, const RationalFunction& a, const RationalFunction& b) -> std::optional<std::array<MixedExpr, 2>> {
    if (!domain_.has_chart(c)) return std::nullopt;
    const MixedExpr q = pow(domain_.factor_expr(c), 0.25);
    return std::array<MixedExpr, 2>{MixedExpr::antiholomorphic(a) * q, MixedExpr::holomorphic(b) * q};
  };
  return SpinorField(chart(Chart::Finite, u1_, u2_), chart(Chart::Infinite, u1_infinite(), u2_infinite()));
}

}  // namespace dhm
