#include "dhm/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {

namespace {

constexpr double kClusterTolerance = 1e-4;

std::vector<cplx> cluster_means(const Polynomial& p) {
  std::vector<cplx> out;
  for (const auto& [r, m] : group_roots(p.roots(), kClusterTolerance)) out.push_back(r);
  return out;
}

}  // namespace

std::vector<std::pair<cplx, int>> group_roots(const std::vector<cplx>& roots, double cluster_tol) {
  std::vector<std::pair<cplx, int>> groups;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= cluster_tol * std::max(1.0, std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    groups.emplace_back(sum / static_cast<double>(count), count);
  }
  return groups;
}

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function with zero denominator");
  reduce();
}

RationalFunction RationalFunction::monomial(int power, cplx c) {
  if (power >= 0) return RationalFunction(Polynomial::monomial(power, c));
  return RationalFunction(Polynomial::constant(c), Polynomial::monomial(-power));
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1.0);
    return;
  }
  bool changed = true;
  while (changed && den_.degree() > 0 && num_.degree() > 0) {
    changed = false;
    for (const cplx r : cluster_means(den_)) {
      const bool near_root = std::abs(num_(r)) <= kRootTolerance * num_.magnitude_at(r);
      if (near_root) {
        num_ = num_.deflate(r);
        den_ = den_.deflate(r);
        changed = true;
        break;
      }
    }
  }
  const cplx lead = den_.leading();
  num_ *= 1.0 / lead;
  den_ *= 1.0 / lead;
}

int RationalFunction::degree_at_infinity() const {
  if (is_zero()) throw Error(ErrorKind::IdenticallyZero, "order of the zero function");
  return den_.degree() - num_.degree();
}

int RationalFunction::map_degree() const {
  if (is_zero()) return 0;
  return std::max(num_.degree(), den_.degree());
}

cplx RationalFunction::operator()(cplx z) const { return jet(z).value; }

ComplexJet2 RationalFunction::jet(cplx z) const {
  cplx q, dq, d2q;
  den_.eval_derivatives(z, q, dq, d2q);
  if (std::abs(q) <= kRootTolerance * den_.magnitude_at(z)) {
    std::ostringstream os;
    os << "denominator vanishes at z = " << z;
    throw Error(ErrorKind::PoleAt, os.str());
  }
  cplx p, dp, d2p;
  num_.eval_derivatives(z, p, dp, d2p);
  const cplx f = p / q;
  const cplx df = (dp - f * dq) / q;
  const cplx d2f = (d2p - 2.0 * df * dq - f * d2q) / q;
  return ComplexJet2::holomorphic(f, df, d2f);
}

int RationalFunction::zero_pole_order(const SpherePoint& p) const {
  if (is_zero()) throw Error(ErrorKind::IdenticallyZero, "order of the zero function");
  if (p.at_infinity) return degree_at_infinity();
  return num_.root_multiplicity(p.z, kRootTolerance) - den_.root_multiplicity(p.z, kRootTolerance);
}

std::vector<std::pair<cplx, int>> RationalFunction::finite_poles() const {
  return group_roots(den_.roots(), kClusterTolerance);
}

std::vector<std::pair<cplx, int>> RationalFunction::finite_zeros() const {
  if (is_zero()) throw Error(ErrorKind::IdenticallyZero, "zeros of the zero function");
  return group_roots(num_.roots(), kClusterTolerance);
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::reciprocal() const {
  if (is_zero()) throw Error(ErrorKind::IdenticallyZero, "reciprocal of the zero function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::compose_inversion() const {
  if (is_zero()) return {};
  const int n = std::max(num_.degree(), den_.degree());
  return RationalFunction(num_.reversed(n), den_.reversed(n));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorKind::IdenticallyZero, "division by the zero function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction operator*(const RationalFunction& a, cplx s) { return RationalFunction(a.num_ * s, a.den_); }

namespace {

std::string poly_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const cplx c = p.coeff(k);
    if (c == cplx{}) continue;
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0)
      os << c.real();
    else
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k == 1) os << "*z";
    if (k > 1) os << "*z^" << k;
  }
  return os.str();
}

}  // namespace

std::string RationalFunction::to_string() const {
  if (den_.degree() == 0 && den_.coeff(0) == cplx{1.0}) return poly_string(num_);
  return "(" + poly_string(num_) + ")/(" + poly_string(den_) + ")";
}

}  // namespace dhm
