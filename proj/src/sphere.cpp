#include "dhm/sphere.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {

cplx transition_point(cplx z) {
  if (z == cplx{}) throw Error(ErrorKind::OriginHasNoImage, "the chart origin has no image under z -> 1/z");
  return 1.0 / z;
}

ChartPoint to_other_chart(const ChartPoint& p) { return {other(p.chart), transition_point(p.z)}; }

cplx finite_coordinate(const ChartPoint& p) {
  return p.chart == Chart::Finite ? p.z : transition_point(p.z);
}

namespace {

BivariatePolynomial round_denominator(double c) {
  // (c + z zbar)^2
  return BivariatePolynomial({{c * c}, {0.0, 2.0 * c}, {0.0, 0.0, 1.0}});
}

void check_positive_samples(const ChartedSphere& m) {
  constexpr int n = 24;
  for (Chart c : {Chart::Finite, Chart::Infinite}) {
    if (!m.has_chart(c)) continue;
    for (int i = 0; i <= n; ++i) {
      const double r = static_cast<double>(i) / n;
      for (int j = 0; j < n; ++j) {
        const double th = 2.0 * std::numbers::pi * j / n;
        (void)m.factor(std::polar(r, th), c);  // throws NonPositiveMetric
      }
    }
  }
}

}  // namespace

ChartedSphere ChartedSphere::round(double c) {
  if (!(c > 0.0)) throw Error(ErrorKind::NonPositiveMetric, "round metric parameter must be positive");
  ChartedSphere s = conformal(BivariatePolynomial::constant(4.0 * c), round_denominator(c));
  s.kind_ = Kind::Round;
  s.round_c_ = c;
  return s;
}

ChartedSphere ChartedSphere::conformal(BivariatePolynomial num, BivariatePolynomial den) {
  if (num.is_zero() || den.is_zero())
    throw Error(ErrorKind::NonPositiveMetric, "conformal factor with zero numerator or denominator");
  if (!num.is_hermitian(1e-12) || !den.is_hermitian(1e-12))
    throw Error(ErrorKind::InvalidArgument, "conformal factor polynomials must be real-valued (Hermitian)");
  ChartedSphere s;
  s.kind_ = Kind::Conformal;
  s.num_[0] = num;
  s.den_[0] = den;
  // lambda_t(t) = lambda(1/t) |t|^-4
  const int excess = den.degree_z() - num.degree_z() - 2;
  BivariatePolynomial pn = num.reversed();
  BivariatePolynomial pd = den.reversed();
  if (excess >= 0)
    pn = pn * BivariatePolynomial::modulus_power(excess);
  else
    pd = pd * BivariatePolynomial::modulus_power(-excess);
  s.num_[1] = pn;
  s.den_[1] = pd;
  const cplx q0 = pd.coeff(0, 0);
  const cplx p0 = pn.coeff(0, 0);
  if (q0 == cplx{} || !(p0.real() / q0.real() > 0.0)) {
    throw Error(ErrorKind::NonPositiveMetric,
                "lambda(z)|z|^4 does not tend to a positive constant at infinity");
  }
  check_positive_samples(s);
  return s;
}

ChartedSphere ChartedSphere::flat(double value) {
  if (!(value > 0.0)) throw Error(ErrorKind::NonPositiveMetric, "flat factor must be positive");
  ChartedSphere s;
  s.kind_ = Kind::Flat;
  s.num_[0] = BivariatePolynomial::constant(value);
  s.den_[0] = BivariatePolynomial::constant(1.0);
  s.has_chart_ = {true, false};
  return s;
}

ComplexJet2 ChartedSphere::factor_jet(cplx z, Chart c) const {
  if (!has_chart(c)) throw Error(ErrorKind::ChartUnavailable, "metric has no infinite chart");
  const ComplexJet2 q = den_[index(c)].jet(z);
  const ComplexJet2 p = num_[index(c)].jet(z);
  const double v = (q.value == cplx{}) ? 0.0 : (p.value / q.value).real();
  if (q.value == cplx{} || !(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "conformal factor not positive at " << z << " (chart " << index(c) << ")";
    throw Error(ErrorKind::NonPositiveMetric, os.str());
  }
  ComplexJet2 f = p / q;
  f.value = v;  // drop round-off imaginary part
  f.d_zzbar = f.d_zzbar.real();
  return f;
}

cplx ChartedSphere::dlog_dz(cplx z, Chart c) const {
  const ComplexJet2 f = factor_jet(z, c);
  return f.d_z / f.value;
}

double ChartedSphere::gauss_curvature(cplx z, Chart c) const {
  const ComplexJet2 f = factor_jet(z, c);
  const cplx ddbar_log = f.d_zzbar / f.value - f.d_z * f.d_zbar / (f.value * f.value);
  return (-2.0 / f.value.real() * ddbar_log).real();
}

double ChartedSphere::asymptotic_constant() const { return factor(0.0, Chart::Infinite); }

MixedExpr ChartedSphere::factor_expr(Chart c) const {
  std::ostringstream name;
  name << "lambda" << index(c);
  ChartedSphere self = *this;
  return MixedExpr::function(name.str(), [self, c](cplx z) { return self.factor_jet(z, c); });
}

// ---------------------------------------------------------------------------

SphereGrid::SphereGrid(int n_radial, int n_angular) : n_radial_(n_radial), n_angular_(n_angular) {
  if (n_radial < 1 || n_angular < 1) throw Error(ErrorKind::InvalidArgument, "grid dimensions must be positive");
  nodes_.reserve(2 * static_cast<size_t>(n_radial) * static_cast<size_t>(n_angular));
  const double dr = 1.0 / n_radial;
  const double dth = 2.0 * std::numbers::pi / n_angular;
  for (Chart c : {Chart::Finite, Chart::Infinite}) {
    for (int i = 0; i < n_radial; ++i) {
      const double r = (i + 0.5) * dr;
      for (int j = 0; j < n_angular; ++j) {
        const double th = (j + 0.5) * dth;
        nodes_.push_back({{c, std::polar(r, th)}, r * dr * dth});
      }
    }
  }
}

size_t SphereGrid::node_index(Chart c, int i, int j) const {
  return (static_cast<size_t>(index(c)) * static_cast<size_t>(n_radial_) + static_cast<size_t>(i)) *
             static_cast<size_t>(n_angular_) +
         static_cast<size_t>(j);
}

double integrate(const ChartedSphere& m, const SphereGrid& grid,
                 const std::function<double(const ChartPoint&)>& integrand) {
  double sum = 0.0;
  for (const GridNode& node : grid.nodes()) {
    const double f = integrand(node.point);
    if (!std::isfinite(f)) {
      std::ostringstream os;
      os << "integrand is not finite at " << node.point.z << " (chart " << index(node.point.chart) << ")";
      throw Error(ErrorKind::NonFiniteSample, os.str());
    }
    if (f == 0.0) continue;
    sum += f * node.coord_weight * m.factor(node.point.z, node.point.chart);
  }
  return sum;
}

}  // namespace dhm
