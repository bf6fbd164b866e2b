#include "dhm/jet.hpp"

#include <cmath>

#include "dhm/errors.hpp"

namespace dhm {

ComplexJet2& ComplexJet2::operator+=(const ComplexJet2& o) {
  value += o.value;
  d_z += o.d_z;
  d_zbar += o.d_zbar;
  d_zz += o.d_zz;
  d_zzbar += o.d_zzbar;
  d_zbarzbar += o.d_zbarzbar;
  return *this;
}

ComplexJet2& ComplexJet2::operator-=(const ComplexJet2& o) {
  value -= o.value;
  d_z -= o.d_z;
  d_zbar -= o.d_zbar;
  d_zz -= o.d_zz;
  d_zzbar -= o.d_zzbar;
  d_zbarzbar -= o.d_zbarzbar;
  return *this;
}

ComplexJet2& ComplexJet2::operator*=(const ComplexJet2& o) {
  const ComplexJet2 a = *this;
  value = a.value * o.value;
  d_z = a.d_z * o.value + a.value * o.d_z;
  d_zbar = a.d_zbar * o.value + a.value * o.d_zbar;
  d_zz = a.d_zz * o.value + 2.0 * a.d_z * o.d_z + a.value * o.d_zz;
  d_zzbar = a.d_zzbar * o.value + a.d_z * o.d_zbar + a.d_zbar * o.d_z + a.value * o.d_zzbar;
  d_zbarzbar = a.d_zbarzbar * o.value + 2.0 * a.d_zbar * o.d_zbar + a.value * o.d_zbarzbar;
  return *this;
}

ComplexJet2& ComplexJet2::operator/=(const ComplexJet2& o) { return *this *= reciprocal(o); }

ComplexJet2& ComplexJet2::operator*=(cplx s) {
  value *= s;
  d_z *= s;
  d_zbar *= s;
  d_zz *= s;
  d_zzbar *= s;
  d_zbarzbar *= s;
  return *this;
}

ComplexJet2 operator+(ComplexJet2 a, const ComplexJet2& b) { return a += b; }
ComplexJet2 operator-(ComplexJet2 a, const ComplexJet2& b) { return a -= b; }
ComplexJet2 operator*(const ComplexJet2& a, const ComplexJet2& b) {
  ComplexJet2 r = a;
  return r *= b;
}
ComplexJet2 operator/(const ComplexJet2& a, const ComplexJet2& b) { return a * reciprocal(b); }
ComplexJet2 operator*(ComplexJet2 a, cplx s) { return a *= s; }
ComplexJet2 operator*(cplx s, ComplexJet2 a) { return a *= s; }

ComplexJet2 compose_holomorphic(const ComplexJet2& u, cplx F, cplx dF, cplx d2F) {
  ComplexJet2 r;
  r.value = F;
  r.d_z = dF * u.d_z;
  r.d_zbar = dF * u.d_zbar;
  r.d_zz = d2F * u.d_z * u.d_z + dF * u.d_zz;
  r.d_zzbar = d2F * u.d_z * u.d_zbar + dF * u.d_zzbar;
  r.d_zbarzbar = d2F * u.d_zbar * u.d_zbar + dF * u.d_zbarzbar;
  return r;
}

ComplexJet2 conj(const ComplexJet2& f) {
  return {std::conj(f.value),    std::conj(f.d_zbar),  std::conj(f.d_z),
          std::conj(f.d_zbarzbar), std::conj(f.d_zzbar), std::conj(f.d_zz)};
}

ComplexJet2 reciprocal(const ComplexJet2& f) {
  if (f.value == cplx{}) {
    throw Error(ErrorKind::PoleAt, "reciprocal of a jet with zero value");
  }
  const cplx inv = 1.0 / f.value;
  return compose_holomorphic(f, inv, -inv * inv, 2.0 * inv * inv * inv);
}

ComplexJet2 log(const ComplexJet2& f) {
  if (f.value == cplx{}) {
    throw Error(ErrorKind::PoleAt, "logarithm of a jet with zero value");
  }
  const cplx inv = 1.0 / f.value;
  return compose_holomorphic(f, std::log(f.value), inv, -inv * inv);
}

ComplexJet2 exp(const ComplexJet2& f) {
  const cplx e = std::exp(f.value);
  return compose_holomorphic(f, e, e, e);
}

ComplexJet2 pow(const ComplexJet2& f, double p) {
  if (p == 0.0) return ComplexJet2::constant(1.0);
  if (f.value == cplx{}) {
    throw Error(ErrorKind::PoleAt, "real power of a jet with zero value");
  }
  const cplx F = std::pow(f.value, p);
  const cplx inv = 1.0 / f.value;
  return compose_holomorphic(f, F, p * F * inv, p * (p - 1.0) * F * inv * inv);
}

ComplexJet2 pullback_inversion(const ComplexJet2& f, cplx t) {
  const cplx g1 = -1.0 / (t * t);
  const cplx g2 = 2.0 / (t * t * t);
  const cplx g1c = std::conj(g1);
  ComplexJet2 r;
  r.value = f.value;
  r.d_z = f.d_z * g1;
  r.d_zbar = f.d_zbar * g1c;
  r.d_zz = f.d_zz * g1 * g1 + f.d_z * g2;
  r.d_zzbar = f.d_zzbar * g1 * g1c;
  r.d_zbarzbar = f.d_zbarzbar * g1c * g1c + f.d_zbar * std::conj(g2);
  return r;
}

bool is_real_jet(const ComplexJet2& f, double tol) {
  const auto close = [tol](cplx a, cplx b) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); };
  return std::abs(f.value.imag()) <= tol * (1.0 + std::abs(f.value)) &&
         close(f.d_zbar, std::conj(f.d_z)) && close(f.d_zbarzbar, std::conj(f.d_zz)) &&
         std::abs(f.d_zzbar.imag()) <= tol * (1.0 + std::abs(f.d_zzbar));
}

}  // namespace dhm
