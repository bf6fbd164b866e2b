#pragma once

// The 2-sphere as two stereographic charts z and t = 1/z, each carrying a
// conformal factor: the metric reads lambda(z)|dz|^2 = lambda_t(t)|dt|^2.

#include <array>
#include <functional>
#include <vector>

#include "dhm/mixed_expr.hpp"
#include "dhm/polynomial.hpp"

namespace dhm {

enum class Chart : int { Finite = 0, Infinite = 1 };

inline Chart other(Chart c) { return c == Chart::Finite ? Chart::Infinite : Chart::Finite; }
inline int index(Chart c) { return static_cast<int>(c); }

/// A coordinate value in one of the two charts.
struct ChartPoint {
  Chart chart = Chart::Finite;
  cplx z{};
};

/// z -> 1/z. Throws OriginHasNoImage at 0.
cplx transition_point(cplx z);
/// The same sphere point expressed in the other chart.
ChartPoint to_other_chart(const ChartPoint& p);
/// Coordinate of p in the finite chart; throws OriginHasNoImage for the point at infinity.
cplx finite_coordinate(const ChartPoint& p);

/// Conformal metric on the sphere, stored as lambda = P(z, zbar) / Q(z, zbar)
/// per chart. The infinite-chart quotient is derived from the finite one.
class ChartedSphere {
 public:
  enum class Kind { Round, Conformal, Flat };

  /// lambda = 4c / (c + |z|^2)^2
  static ChartedSphere round(double c = 1.0);
  /// User-supplied positive quotient; validated to extend smoothly over infinity.
  static ChartedSphere conformal(BivariatePolynomial num, BivariatePolynomial den);
  /// Constant factor on the finite chart only; for single-chart checks.
  static ChartedSphere flat(double value);

  Kind kind() const { return kind_; }
  double round_parameter() const { return round_c_; }
  bool has_chart(Chart c) const { return has_chart_[index(c)]; }
  const BivariatePolynomial& numerator(Chart c) const { return num_[index(c)]; }
  const BivariatePolynomial& denominator(Chart c) const { return den_[index(c)]; }

  /// Jet of the conformal factor. Throws NonPositiveMetric.
  ComplexJet2 factor_jet(cplx z, Chart c) const;
  double factor(cplx z, Chart c) const { return factor_jet(z, c).value.real(); }
  /// d(log lambda)/dz
  cplx dlog_dz(cplx z, Chart c) const;
  /// K = -(2/lambda) d^2(log lambda)/dz dzbar
  double gauss_curvature(cplx z, Chart c) const;
  /// lim lambda(z)|z|^4 as z -> infinity, i.e. lambda_t(0).
  double asymptotic_constant() const;

  /// The conformal factor as a leaf of a mixed expression.
  MixedExpr factor_expr(Chart c) const;

 private:
  ChartedSphere() = default;
  Kind kind_ = Kind::Round;
  double round_c_ = 1.0;
  std::array<BivariatePolynomial, 2> num_;
  std::array<BivariatePolynomial, 2> den_;
  std::array<bool, 2> has_chart_{true, true};
};

/// gauss_curvature as a free function (operation form).
inline double gauss_curvature(const ChartedSphere& m, cplx z, Chart c) { return m.gauss_curvature(z, c); }

struct GridNode {
  ChartPoint point;
  /// Coordinate area weight r dr dtheta; the metric factor is applied at integration time.
  double coord_weight = 0.0;
};

/// Midpoint-rule polar grid on the closed unit disk of each chart. The two
/// disks partition the sphere along |z| = 1.
class SphereGrid {
 public:
  SphereGrid(int n_radial, int n_angular);

  int n_radial() const { return n_radial_; }
  int n_angular() const { return n_angular_; }
  const std::vector<GridNode>& nodes() const { return nodes_; }
  /// Node index for (chart, radial ring, angular sector).
  size_t node_index(Chart c, int i, int j) const;

 private:
  int n_radial_;
  int n_angular_;
  std::vector<GridNode> nodes_;
};

/// Quadrature of a pointwise real function against the area element of m.
/// Throws NonFiniteSample.
double integrate(const ChartedSphere& m, const SphereGrid& grid,
                 const std::function<double(const ChartPoint&)>& integrand);

}  // namespace dhm
