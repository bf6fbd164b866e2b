#pragma once

#include <span>
#include <vector>

#include "dhm/jet.hpp"

namespace dhm {

/// Dense complex polynomial, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, cplx c = 1.0);
  /// (z - root)
  static Polynomial linear_factor(cplx root);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx coeff(int k) const;
  cplx leading() const { return coeffs_.empty() ? cplx{} : coeffs_.back(); }
  /// Sum of coefficient magnitudes weighted by |z|^k; scale for vanishing tests at z.
  double magnitude_at(cplx z) const;

  cplx operator()(cplx z) const;
  /// Value, first and second derivative by Horner's scheme.
  void eval_derivatives(cplx z, cplx& p, cplx& dp, cplx& d2p) const;
  ComplexJet2 jet(cplx z) const;

  Polynomial derivative() const;
  /// z^n p(1/z) with n = max(degree, min_degree).
  Polynomial reversed(int min_degree = 0) const;
  /// Coefficients of p(center + s) in s.
  Polynomial taylor_shift(cplx center) const;
  /// Quotient of synthetic division by (z - root); the remainder is dropped.
  Polynomial deflate(cplx root) const;
  /// Multiplicity of `point` as a root, decided by vanishing of shifted coefficients
  /// relative to tol.
  int root_multiplicity(cplx point, double tol) const;
  /// All complex roots as companion-matrix eigenvalues, Newton-polished.
  std::vector<cplx> roots() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Drops trailing coefficients with magnitude <= rel_tol * max |coeff|.
  void trim(double rel_tol = 0.0);

 private:
  std::vector<cplx> coeffs_;
};

/// Polynomial in (z, zbar): sum of a[j][k] z^j zbar^k.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  /// rows indexed by the power of z, columns by the power of zbar.
  explicit BivariatePolynomial(std::vector<std::vector<cplx>> coeffs);

  static BivariatePolynomial constant(cplx c) { return BivariatePolynomial({{c}}); }
  /// (zbar z)^n
  static BivariatePolynomial modulus_power(int n);

  ComplexJet2 jet(cplx z) const;
  int degree_z() const;
  int degree_zbar() const;
  bool is_zero() const;
  /// a[k][j] == conj(a[j][k]) within tol: the polynomial is real-valued.
  bool is_hermitian(double tol) const;
  const std::vector<std::vector<cplx>>& coeffs() const { return coeffs_; }
  cplx coeff(int j, int k) const;

  /// z^n zbar^m p(1/z, 1/zbar) with n = degree_z(), m = degree_zbar().
  BivariatePolynomial reversed() const;

  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b);

 private:
  void trim();
  std::vector<std::vector<cplx>> coeffs_;
};

}  // namespace dhm
