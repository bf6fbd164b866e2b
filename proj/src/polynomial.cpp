#include "dhm/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "dhm/errors.hpp"

namespace dhm {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int degree, cplx c) {
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative monomial degree");
  std::vector<cplx> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_factor(cplx root) { return Polynomial({-root, 1.0}); }

cplx Polynomial::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<size_t>(k)] : cplx{};
}

double Polynomial::magnitude_at(cplx z) const {
  double s = 0.0;
  double r = 1.0;
  const double az = std::abs(z);
  for (const cplx& c : coeffs_) {
    s += std::abs(c) * r;
    r *= az;
  }
  return s;
}

cplx Polynomial::operator()(cplx z) const {
  cplx p{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) p = p * z + *it;
  return p;
}

void Polynomial::eval_derivatives(cplx z, cplx& p, cplx& dp, cplx& d2p) const {
  p = dp = d2p = cplx{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    d2p = d2p * z + 2.0 * dp;
    dp = dp * z + p;
    p = p * z + *it;
  }
}

ComplexJet2 Polynomial::jet(cplx z) const {
  cplx p, dp, d2p;
  eval_derivatives(z, p, dp, d2p);
  return ComplexJet2::holomorphic(p, dp, d2p);
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::reversed(int min_degree) const {
  const int n = std::max(degree(), min_degree);
  if (n < 0) return {};
  std::vector<cplx> r(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= degree(); ++k) r[static_cast<size_t>(n - k)] = coeffs_[static_cast<size_t>(k)];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::taylor_shift(cplx center) const {
  std::vector<cplx> b = coeffs_;
  const int n = degree();
  // Repeated synthetic division (Horner's shift).
  for (int k = 0; k < n; ++k) {
    for (int j = n - 1; j >= k; --j) b[static_cast<size_t>(j)] += center * b[static_cast<size_t>(j) + 1];
  }
  return Polynomial(std::move(b));
}

Polynomial Polynomial::deflate(cplx root) const {
  const int n = degree();
  if (n <= 0) return {};
  std::vector<cplx> q(static_cast<size_t>(n));
  cplx carry{};
  for (int k = n; k >= 1; --k) {
    carry = carry * root + coeffs_[static_cast<size_t>(k)];
    q[static_cast<size_t>(k) - 1] = carry;
  }
  return Polynomial(std::move(q));
}

int Polynomial::root_multiplicity(cplx point, double tol) const {
  if (is_zero()) throw Error(ErrorKind::IdenticallyZero, "multiplicity in the zero polynomial");
  const Polynomial s = taylor_shift(point);
  double scale = 0.0;
  for (const cplx& c : s.coeffs()) scale = std::max(scale, std::abs(c));
  int m = 0;
  while (m < s.degree() && std::abs(s.coeff(m)) <= tol * scale) ++m;
  return m;
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = leading();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[static_cast<size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> r(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  const Polynomial d = derivative();
  for (cplx& x : r) {
    for (int it = 0; it < 3; ++it) {
      const cplx dv = d(x);
      const cplx v = (*this)(x);
      if (std::abs(dv) <= 1e-8 * magnitude_at(x)) break;  // multiple root: leave as is
      const cplx step = v / dv;
      if (!std::isfinite(std::abs(step))) break;
      x -= step;
    }
  }
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (cplx& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(r));
}

void Polynomial::trim(double rel_tol) {
  double scale = 0.0;
  for (const cplx& c : coeffs_) scale = std::max(scale, std::abs(c));
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= rel_tol * scale) coeffs_.pop_back();
}

// ---------------------------------------------------------------------------

BivariatePolynomial::BivariatePolynomial(std::vector<std::vector<cplx>> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

BivariatePolynomial BivariatePolynomial::modulus_power(int n) {
  std::vector<std::vector<cplx>> a(static_cast<size_t>(n) + 1,
                                   std::vector<cplx>(static_cast<size_t>(n) + 1));
  a[static_cast<size_t>(n)][static_cast<size_t>(n)] = 1.0;
  return BivariatePolynomial(std::move(a));
}

void BivariatePolynomial::trim() {
  for (auto& row : coeffs_)
    while (!row.empty() && row.back() == cplx{}) row.pop_back();
  while (!coeffs_.empty() && coeffs_.back().empty()) coeffs_.pop_back();
}

cplx BivariatePolynomial::coeff(int j, int k) const {
  if (j < 0 || k < 0 || j >= static_cast<int>(coeffs_.size())) return {};
  const auto& row = coeffs_[static_cast<size_t>(j)];
  return k < static_cast<int>(row.size()) ? row[static_cast<size_t>(k)] : cplx{};
}

int BivariatePolynomial::degree_z() const { return static_cast<int>(coeffs_.size()) - 1; }

int BivariatePolynomial::degree_zbar() const {
  int m = -1;
  for (const auto& row : coeffs_) m = std::max(m, static_cast<int>(row.size()) - 1);
  return m;
}

bool BivariatePolynomial::is_zero() const { return coeffs_.empty(); }

bool BivariatePolynomial::is_hermitian(double tol) const {
  const int n = std::max(degree_z(), degree_zbar());
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      if (std::abs(coeff(j, k) - std::conj(coeff(k, j))) > tol) return false;
  return true;
}

ComplexJet2 BivariatePolynomial::jet(cplx z) const {
  // Each row is a polynomial in zbar; the rows are combined as a polynomial in z.
  ComplexJet2 acc;
  const cplx zb = std::conj(z);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    cplx q{}, dq{}, d2q{};
    for (auto c = it->rbegin(); c != it->rend(); ++c) {
      d2q = d2q * zb + 2.0 * dq;
      dq = dq * zb + q;
      q = q * zb + *c;
    }
    // acc <- acc * z + row(zbar)
    ComplexJet2 next;
    next.value = acc.value * z + q;
    next.d_z = acc.d_z * z + acc.value;
    next.d_zbar = acc.d_zbar * z + dq;
    next.d_zz = acc.d_zz * z + 2.0 * acc.d_z;
    next.d_zzbar = acc.d_zzbar * z + acc.d_zbar;
    next.d_zbarzbar = acc.d_zbarzbar * z + d2q;
    acc = next;
  }
  return acc;
}

BivariatePolynomial BivariatePolynomial::reversed() const {
  const int n = degree_z();
  const int m = degree_zbar();
  if (n < 0) return {};
  std::vector<std::vector<cplx>> r(static_cast<size_t>(n) + 1, std::vector<cplx>(static_cast<size_t>(m) + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= m; ++k) r[static_cast<size_t>(n - j)][static_cast<size_t>(m - k)] = coeff(j, k);
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const int n = a.degree_z() + b.degree_z();
  const int m = a.degree_zbar() + b.degree_zbar();
  std::vector<std::vector<cplx>> r(static_cast<size_t>(n) + 1, std::vector<cplx>(static_cast<size_t>(m) + 1));
  for (int j1 = 0; j1 <= a.degree_z(); ++j1)
    for (int k1 = 0; k1 <= a.degree_zbar(); ++k1) {
      const cplx ca = a.coeff(j1, k1);
      if (ca == cplx{}) continue;
      for (int j2 = 0; j2 <= b.degree_z(); ++j2)
        for (int k2 = 0; k2 <= b.degree_zbar(); ++k2)
          r[static_cast<size_t>(j1 + j2)][static_cast<size_t>(k1 + k2)] += ca * b.coeff(j2, k2);
    }
  return BivariatePolynomial(std::move(r));
}

BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const int n = std::max(a.degree_z(), b.degree_z());
  const int m = std::max(a.degree_zbar(), b.degree_zbar());
  if (n < 0) return {};
  std::vector<std::vector<cplx>> r(static_cast<size_t>(n) + 1, std::vector<cplx>(static_cast<size_t>(m) + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= m; ++k) r[static_cast<size_t>(j)][static_cast<size_t>(k)] = a.coeff(j, k) + b.coeff(j, k);
  return BivariatePolynomial(std::move(r));
}

}  // namespace dhm
