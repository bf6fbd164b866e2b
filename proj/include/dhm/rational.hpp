#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhm/polynomial.hpp"

namespace dhm {

/// A point of the Riemann sphere: a finite complex number or infinity.
struct SpherePoint {
  bool at_infinity = false;
  cplx z{};

  static SpherePoint finite(cplx z) { return {false, z}; }
  static SpherePoint infinity() { return {true, {}}; }
};

/// Root-matching tolerance used for reduction and order counting.
inline constexpr double kRootTolerance = 1e-9;

/// Reduced quotient of complex polynomials. The denominator is monic after
/// normalization and shares no root with the numerator.
class RationalFunction {
 public:
  RationalFunction();  // zero
  explicit RationalFunction(Polynomial num, Polynomial den = Polynomial::constant(1.0));

  static RationalFunction constant(cplx c) { return RationalFunction(Polynomial::constant(c)); }
  static RationalFunction identity() { return RationalFunction(Polynomial({0.0, 1.0})); }
  static RationalFunction monomial(int power, cplx c = 1.0);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// deg(den) - deg(num): zero order at infinity (negative: pole order).
  int degree_at_infinity() const;
  /// Degree of the rational map to the sphere: max(deg num, deg den).
  int map_degree() const;

  cplx operator()(cplx z) const;
  /// Exact jet; the zbar-derivatives vanish. Throws PoleAt.
  ComplexJet2 jet(cplx z) const;
  /// Signed order: positive zero order, negative pole order, 0 otherwise.
  int zero_pole_order(const SpherePoint& p) const;

  /// Finite poles with multiplicities (grouped within kRootTolerance).
  std::vector<std::pair<cplx, int>> finite_poles() const;
  std::vector<std::pair<cplx, int>> finite_zeros() const;

  RationalFunction derivative() const;
  RationalFunction reciprocal() const;
  /// t -> f(1/t)
  RationalFunction compose_inversion() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, cplx s);

  std::string to_string() const;

 private:
  void reduce();
  Polynomial num_;
  Polynomial den_;
};

/// Groups a root list into (root, multiplicity) clusters within kRootTolerance-scaled distance.
std::vector<std::pair<cplx, int>> group_roots(const std::vector<cplx>& roots, double cluster_tol = 1e-6);

}  // namespace dhm
