#pragma once

// Spinor frames psi+, psi- on a conformal chart, their Clifford table, maps
// between spheres, and spinor fields along a map split into the four slots
//   1+ : Sigma+ (x) T^(1,0)N    0+ : Sigma+ (x) T^(0,1)N
//   1- : Sigma- (x) T^(1,0)N    0- : Sigma- (x) T^(0,1)N
// A twisted field is stored per (domain chart, target chart) as four
// coefficient functions on psi+- (x) d/dw, psi+- (x) d/dwbar.
//
// Chart conventions. Going from the finite domain chart z to t = 1/z the
// orthonormal frame rotates by theta with exp(i theta/2) = i z/|z|; the spin
// lift is fixed so that psi+ = (i z/|z|) psi+~ and psi- = (-i zbar/|z|) psi-~.
// Going from target coordinate w to 1/w, d/dw = (-1/w^2) d/dw~.

#include <array>
#include <optional>
#include <string_view>

#include "dhm/mixed_expr.hpp"
#include "dhm/sphere.hpp"

namespace dhm {

// --- Clifford table --------------------------------------------------------

/// plus * psi+ + minus * psi-
struct FrameSpinor {
  cplx plus{};
  cplx minus{};

  friend FrameSpinor operator+(FrameSpinor a, FrameSpinor b) { return {a.plus + b.plus, a.minus + b.minus}; }
  friend FrameSpinor operator*(cplx s, FrameSpinor a) { return {s * a.plus, s * a.minus}; }
};

enum class Tangent { E1, E2, Dz, Dzbar };

/// Clifford multiplication; `lambda` is the conformal factor (used by Dz, Dzbar).
FrameSpinor clifford_apply(Tangent x, FrameSpinor s, double lambda = 1.0);
/// Real tangent vector v = V d/dz + conj(V) d/dzbar.
FrameSpinor clifford_apply(cplx v_dz, FrameSpinor s, double lambda);
/// Hermitian product, linear in the first argument; psi+ and psi- orthonormal.
cplx hermitian(FrameSpinor a, FrameSpinor b);

// --- maps ------------------------------------------------------------------

enum class Orientation { Holomorphic, Antiholomorphic, Constant, General };

std::string_view to_string(Orientation o);

/// A map between spheres, w = w(z, zbar), held as an expression for each
/// (domain chart, target chart) pair.
class SurfaceMap {
 public:
  static SurfaceMap holomorphic(RationalFunction r);
  /// w = conj(r(z))
  static SurfaceMap antiholomorphic(RationalFunction r);
  static SurfaceMap constant(cplx w0);
  /// Arbitrary smooth map given on the finite charts; other charts follow by inversion.
  static SurfaceMap general(MixedExpr w);

  Orientation orientation() const { return orientation_; }
  /// Underlying rational function of an (anti)holomorphic map.
  const std::optional<RationalFunction>& rational() const { return rational_; }
  /// Degree of the map, negative for antiholomorphic maps; 0 for constant/general.
  int degree() const;

  bool has(Chart domain, Chart target) const { return expr_[index(domain)][index(target)].has_value(); }
  const MixedExpr& expr(Chart domain, Chart target) const;
  ComplexJet2 jet(const ChartPoint& p, Chart target) const;
  /// Finite target chart where |w| <= 1, infinite chart otherwise.
  Chart target_chart(const ChartPoint& p) const;

 private:
  SurfaceMap() = default;
  Orientation orientation_ = Orientation::Constant;
  std::optional<RationalFunction> rational_;
  std::array<std::array<std::optional<MixedExpr>, 2>, 2> expr_;
};

// --- twisted spinor fields -------------------------------------------------

enum class Slot : int { OnePlus = 0, ZeroPlus = 1, OneMinus = 2, ZeroMinus = 3 };
inline constexpr std::array<Slot, 4> kAllSlots{Slot::OnePlus, Slot::ZeroPlus, Slot::OneMinus, Slot::ZeroMinus};

std::string_view to_string(Slot s);
Slot slot_from_string(std::string_view s);
inline int index(Slot s) { return static_cast<int>(s); }
/// +1 for Sigma+ slots, -1 for Sigma- slots.
int chirality(Slot s);
/// True for the (1,0) target type.
bool is_type_10(Slot s);

using SlotExprs = std::array<MixedExpr, 4>;
using SlotValues = std::array<cplx, 4>;
using SlotJets = std::array<ComplexJet2, 4>;

class TwistedSpinorField {
 public:
  /// Zero field along `map`.
  explicit TwistedSpinorField(SurfaceMap map);
  /// Field given on (finite domain chart, `target`); the remaining charts are
  /// derived symbolically with the frame transition rules.
  static TwistedSpinorField from_finite_chart(SurfaceMap map, SlotExprs components,
                                              Chart target = Chart::Finite);
  /// Field given explicitly on each chart pair (missing pairs unavailable).
  static TwistedSpinorField from_charts(SurfaceMap map,
                                        std::array<std::array<std::optional<SlotExprs>, 2>, 2> charts);

  const SurfaceMap& map() const { return map_; }
  bool has(Chart domain, Chart target) const { return charts_[index(domain)][index(target)].has_value(); }
  const SlotExprs& components(Chart domain, Chart target) const;

  /// Target chart used at p: the map's preference if available, otherwise the other one.
  Chart target_chart(const ChartPoint& p) const;
  SlotJets jets(const ChartPoint& p, Chart target) const;
  SlotValues values(const ChartPoint& p, Chart target) const;
  SlotValues values(const ChartPoint& p) const { return values(p, target_chart(p)); }

  /// Structurally zero slot (in every available chart).
  bool slot_is_structurally_zero(Slot s) const;
  bool is_structurally_zero() const;

  /// Keeps one slot, zeroes the rest.
  TwistedSpinorField project(Slot s) const;
  /// Chartwise sum; both fields must live along the same map description.
  TwistedSpinorField plus(const TwistedSpinorField& o) const;
  TwistedSpinorField scaled(cplx s) const;

 private:
  SurfaceMap map_;
  std::array<std::array<std::optional<SlotExprs>, 2>, 2> charts_;
};

/// Projection operation.
inline TwistedSpinorField project(const TwistedSpinorField& psi, Slot s) { return psi.project(s); }

/// |psi|^2 = (rho/2) sum |c|^2 at p, with rho the target factor at the map value.
double norm_squared(const TwistedSpinorField& psi, const ChartedSphere& target, const ChartPoint& p);
/// |pi_s psi| at p.
double slot_norm(const TwistedSpinorField& psi, const ChartedSphere& target, const ChartPoint& p, Slot s);

/// Pointwise frame change of component values: (domain chart, target chart)
/// at p -> (to_domain, to_target). `w` is the map value in `from_target`.
SlotValues transform_components(const SlotValues& c, const ChartPoint& p, Chart from_target, cplx w,
                                Chart to_domain, Chart to_target);

/// Components at an overlap point (0.5 <= |z| <= 2) re-expressed in the other
/// domain chart, in target chart `to_target`. Throws OutsideOverlap.
SlotValues component_transition(const TwistedSpinorField& psi, const ChartPoint& p, Chart to_target);

/// Chart-1 expression of the spin phases, as functions of t.
MixedExpr spin_phase_to_infinite_chart(int chirality_sign);

// --- untwisted spinors and twistor spinors ----------------------------------

/// Spinor field a psi+ + b psi- on the domain, per chart.
class SpinorField {
 public:
  SpinorField(std::optional<std::array<MixedExpr, 2>> finite, std::optional<std::array<MixedExpr, 2>> infinite)
      : charts_{std::move(finite), std::move(infinite)} {}
  bool has(Chart c) const { return charts_[index(c)].has_value(); }
  const std::array<MixedExpr, 2>& components(Chart c) const;

 private:
  std::array<std::optional<std::array<MixedExpr, 2>>, 2> charts_;
};

/// Psi = conj(u1) lambda^(1/4) psi+ + u2 lambda^(1/4) psi-, u1 and u2 meromorphic.
class TwistorSpinor {
 public:
  TwistorSpinor(RationalFunction u1, RationalFunction u2, ChartedSphere domain);
  const RationalFunction& u1() const { return u1_; }
  const RationalFunction& u2() const { return u2_; }
  const ChartedSphere& domain() const { return domain_; }
  /// Coefficient functions in the chart t = 1/z: u~(t) = -i t u(1/t).
  RationalFunction u1_infinite() const;
  RationalFunction u2_infinite() const;
  SpinorField field() const;

 private:
  RationalFunction u1_;
  RationalFunction u2_;
  ChartedSphere domain_;
};

/// -i t u(1/t): a twistor coefficient re-expressed in the infinite chart.
RationalFunction twistor_coefficient_at_infinity(const RationalFunction& u);

}  // namespace dhm
