#pragma once

// Second-order Wirtinger jets.
//
// A ComplexJet2 carries the value of a function f(z, zbar) together with
//   d_z = df/dz,  d_zbar = df/dzbar,
//   d_zz, d_zzbar, d_zbarzbar,
// where d/dz = (d/dx - i d/dy)/2 and d/dzbar = (d/dx + i d/dy)/2.
// Arithmetic propagates these exactly (product rule, quotient rule and the
// Wirtinger chain rule for holomorphic outer functions).

#include <complex>

namespace dhm {

using cplx = std::complex<double>;

struct ComplexJet2 {
  cplx value{};
  cplx d_z{};
  cplx d_zbar{};
  cplx d_zz{};
  cplx d_zzbar{};
  cplx d_zbarzbar{};

  static ComplexJet2 constant(cplx c) { return {c, {}, {}, {}, {}, {}}; }
  /// The coordinate function z.
  static ComplexJet2 variable(cplx z) { return {z, 1.0, {}, {}, {}, {}}; }
  /// The conjugate coordinate zbar.
  static ComplexJet2 conj_variable(cplx z) { return {std::conj(z), {}, 1.0, {}, {}, {}}; }
  /// Jet of a holomorphic function from its value and first two complex derivatives.
  static ComplexJet2 holomorphic(cplx f, cplx df, cplx d2f) { return {f, df, {}, d2f, {}, {}}; }

  ComplexJet2& operator+=(const ComplexJet2& o);
  ComplexJet2& operator-=(const ComplexJet2& o);
  ComplexJet2& operator*=(const ComplexJet2& o);
  ComplexJet2& operator/=(const ComplexJet2& o);
  ComplexJet2& operator*=(cplx s);

  ComplexJet2 operator-() const { return {-value, -d_z, -d_zbar, -d_zz, -d_zzbar, -d_zbarzbar}; }
};

ComplexJet2 operator+(ComplexJet2 a, const ComplexJet2& b);
ComplexJet2 operator-(ComplexJet2 a, const ComplexJet2& b);
ComplexJet2 operator*(const ComplexJet2& a, const ComplexJet2& b);
ComplexJet2 operator/(const ComplexJet2& a, const ComplexJet2& b);
ComplexJet2 operator*(ComplexJet2 a, cplx s);
ComplexJet2 operator*(cplx s, ComplexJet2 a);

/// Applies a holomorphic outer function F given F(u), F'(u), F''(u) at u = inner.value.
ComplexJet2 compose_holomorphic(const ComplexJet2& inner, cplx F, cplx dF, cplx d2F);

/// Jet of conj(f): swaps the roles of z and zbar.
ComplexJet2 conj(const ComplexJet2& f);
ComplexJet2 reciprocal(const ComplexJet2& f);
/// Principal branch; callers keep the value off the negative real axis.
ComplexJet2 log(const ComplexJet2& f);
ComplexJet2 exp(const ComplexJet2& f);
/// Principal-branch real power f^p.
ComplexJet2 pow(const ComplexJet2& f, double p);

/// Substitution z = 1/t: given the jet of f at z = 1/t (in z-derivatives),
/// returns the jet of t -> f(1/t) at t.
ComplexJet2 pullback_inversion(const ComplexJet2& f_at_z, cplx t);

/// Reality test for jets lifted from real-valued functions.
bool is_real_jet(const ComplexJet2& f, double tol);

}  // namespace dhm
