#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls the library's Wirtinger formulas: derivatives are central differences
// in real coordinates and the geometry is rebuilt from the real orthonormal
// frames e1 = lambda^(-1/2) d/dx, e2 = lambda^(-1/2) d/dy.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "dhm/constructor.hpp"
#include "dhm/operators.hpp"

namespace oracle {

using dhm::Chart;
using dhm::ChartPoint;
using dhm::ChartedSphere;
using dhm::cplx;
using dhm::TwistedSpinorField;

inline constexpr cplx kI{0.0, 1.0};

/// plus psi+ + minus psi-
struct Spinor {
  cplx p{};
  cplx m{};
};

inline Spinor operator+(Spinor a, Spinor b) { return {a.p + b.p, a.m + b.m}; }
inline Spinor operator*(cplx k, Spinor a) { return {k * a.p, k * a.m}; }

// e1 psi+ = psi-, e1 psi- = -psi+, e2 psi+ = i psi-, e2 psi- = i psi+
inline Spinor e1(Spinor s) { return {-s.m, s.p}; }
inline Spinor e2(Spinor s) { return {kI * s.m, kI * s.p}; }
inline Spinor e(int a, Spinor s) { return a == 0 ? e1(s) : e2(s); }
inline cplx herm(Spinor a, Spinor b) { return a.p * std::conj(b.p) + a.m * std::conj(b.m); }

/// Real-frame Dirac operator along the map by finite differences. Output in
/// slot order (1+, 0+, 1-, 0-).
inline std::array<cplx, 4> dirac(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                                 const ChartPoint& p, Chart target, double h = 1e-5) {
  const auto comps = [&](cplx z) { return psi.values({p.chart, z}, target); };
  const auto w = [&](cplx z) { return psi.map().jet({p.chart, z}, target).value; };
  const auto log_lambda = [&](cplx z) { return std::log(m.factor(z, p.chart)); };
  const auto log_rho = [&](cplx q) { return std::log(n.factor(q, target)); };
  const std::array<cplx, 2> dir{1.0, kI};

  const double lambda = m.factor(p.z, p.chart);
  // u = log(lambda)/2; connection form omega_12 = -u_y dx + u_x dy.
  const double ux = 0.5 * (log_lambda(p.z + h) - log_lambda(p.z - h)) / (2 * h);
  const double uy = 0.5 * (log_lambda(p.z + kI * h) - log_lambda(p.z - kI * h)) / (2 * h);
  const std::array<double, 2> omega{-uy, ux};
  // Christoffel symbol d/dw log rho of the target.
  const cplx w0 = w(p.z);
  const cplx gamma = 0.5 * ((log_rho(w0 + h) - log_rho(w0 - h)) / (2 * h) -
                            kI * (log_rho(w0 + kI * h) - log_rho(w0 - kI * h)) / (2 * h));

  const auto c = comps(p.z);
  const Spinor s10{c[0], c[2]};
  const Spinor s01{c[1], c[3]};
  Spinor out10, out01;
  for (int a = 0; a < 2; ++a) {
    const auto cp = comps(p.z + h * dir[a]);
    const auto cm = comps(p.z - h * dir[a]);
    const cplx dw = (w(p.z + h * dir[a]) - w(p.z - h * dir[a])) / (2 * h);
    const Spinor d10{(cp[0] - cm[0]) / (2 * h), (cp[2] - cm[2]) / (2 * h)};
    const Spinor d01{(cp[1] - cm[1]) / (2 * h), (cp[3] - cm[3]) / (2 * h)};
    // spin connection 1/2 omega_12 e1 e2, with e1 e2 psi+- = -+ i psi+-
    const auto conn = [&](Spinor s) { return Spinor{-0.5 * kI * omega[a] * s.p, 0.5 * kI * omega[a] * s.m}; };
    const Spinor n10 = d10 + conn(s10) + (gamma * dw) * s10;
    const Spinor n01 = d01 + conn(s01) + (std::conj(gamma) * std::conj(dw)) * s01;
    const double scale = 1.0 / std::sqrt(lambda);
    out10 = out10 + scale * e(a, n10);
    out01 = out01 + scale * e(a, n01);
  }
  return {out10.p, out01.p, out10.m, out01.m};
}

/// -<psi^j, e_a psi^k> R(V_j, V_k) phi_* e_a contracted term by term in the
/// real orthonormal target frame V1, V2, with R(X, Y)Z = K (g(X,Z) Y - g(Y,Z) X).
/// Returns the d/dw coefficient.
inline cplx coupling(const TwistedSpinorField& psi, const ChartedSphere& m, const ChartedSphere& n,
                     const ChartPoint& p, Chart target, double h = 1e-6) {
  const auto w = [&](cplx z) { return psi.map().jet({p.chart, z}, target).value; };
  const auto c = psi.values(p, target);
  const cplx w0 = w(p.z);
  const double rho = n.factor(w0, target);
  const double lambda = m.factor(p.z, p.chart);
  const double k = n.gauss_curvature(w0, target);
  // d/dw = sqrt(rho)/2 (V1 - i V2), d/dwbar = sqrt(rho)/2 (V1 + i V2)
  const Spinor s10{c[0], c[2]};
  const Spinor s01{c[1], c[3]};
  const double r = 0.5 * std::sqrt(rho);
  const std::array<Spinor, 2> v{r * (s10 + s01), r * ((-kI) * s10 + kI * s01)};
  const std::array<cplx, 2> dir{1.0, kI};
  std::array<double, 2> tau{0.0, 0.0};
  for (int a = 0; a < 2; ++a) {
    const cplx dw = (w(p.z + h * dir[a]) - w(p.z - h * dir[a])) / (2 * h) / std::sqrt(lambda);
    const std::array<double, 2> x{std::sqrt(rho) * dw.real(), std::sqrt(rho) * dw.imag()};
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) {
        const double pairing = herm(v[j], e(a, v[l])).real();
        std::array<double, 2> rv{0.0, 0.0};
        rv[l] += k * x[j];
        rv[j] -= k * x[l];
        tau[0] -= pairing * rv[0];
        tau[1] -= pairing * rv[1];
      }
  }
  return (tau[0] + kI * tau[1]) / std::sqrt(rho);
}

/// Tension d/dw coefficient: (1/lambda)(Laplacian w + Gamma (w_x^2 + w_y^2)).
inline cplx tension(const dhm::SurfaceMap& phi, const ChartedSphere& m, const ChartedSphere& n,
                    const ChartPoint& p, Chart target, double h = 1e-4) {
  const auto w = [&](cplx z) { return phi.jet({p.chart, z}, target).value; };
  const auto log_rho = [&](cplx q) { return std::log(n.factor(q, target)); };
  const cplx w0 = w(p.z);
  const cplx wx = (w(p.z + h) - w(p.z - h)) / (2 * h);
  const cplx wy = (w(p.z + kI * h) - w(p.z - kI * h)) / (2 * h);
  const cplx lap = (w(p.z + h) + w(p.z - h) + w(p.z + kI * h) + w(p.z - kI * h) - 4.0 * w0) / (h * h);
  const double g = 1e-6;
  const cplx gamma = 0.5 * ((log_rho(w0 + g) - log_rho(w0 - g)) / (2 * g) -
                            kI * (log_rho(w0 + kI * g) - log_rho(w0 - kI * g)) / (2 * g));
  return (lap + gamma * (wx * wx + wy * wy)) / m.factor(p.z, p.chart);
}

/// Components of e_a . Psi (x) phi_* e_a for Psi = conj(u1) lambda^(1/4) psi+ + u2 lambda^(1/4) psi-
/// on the finite chart pair, expanded directly from the Clifford table.
inline std::array<cplx, 4> expansion(const dhm::SurfaceMap& phi, const dhm::RationalFunction& u1,
                                     const dhm::RationalFunction& u2, const ChartedSphere& m, cplx z,
                                     double h = 1e-6) {
  const auto w = [&](cplx q) { return phi.jet({Chart::Finite, q}, Chart::Finite).value; };
  const double lambda = m.factor(z, Chart::Finite);
  const double q = std::pow(lambda, 0.25);
  const Spinor psi{std::conj(u1(z)) * q, u2(z) * q};
  const std::array<cplx, 2> dir{1.0, kI};
  Spinor s10, s01;
  for (int a = 0; a < 2; ++a) {
    const cplx dw = (w(z + h * dir[a]) - w(z - h * dir[a])) / (2 * h) / std::sqrt(lambda);
    const Spinor ep = e(a, psi);
    s10 = s10 + dw * ep;
    s01 = s01 + std::conj(dw) * ep;
  }
  return {s10.p, s01.p, s10.m, s01.m};
}

/// Predicate of the harmonicity-forcing theorem, written out independently.
inline bool harmonicity_forced(int g_m, int g_n, int deg) {
  if (g_m == 0) return true;
  return std::abs(g_m - 1) < std::abs(deg) * std::abs(2 * g_n - 2);
}

/// exp(-1/(1 - |z - c|^2 / r^2)) inside the disk, zero outside.
inline dhm::MixedExpr bump(cplx center, double radius) {
  return dhm::MixedExpr::function("bump", [center, radius](cplx z) {
    if (std::abs(z - center) >= radius) return dhm::ComplexJet2::constant(0.0);
    const dhm::ComplexJet2 d = dhm::ComplexJet2::variable(z) - dhm::ComplexJet2::constant(center);
    const dhm::ComplexJet2 s = d * dhm::conj(d) * cplx{1.0 / (radius * radius)};
    return dhm::exp(-dhm::reciprocal(dhm::ComplexJet2::constant(1.0) - s));
  });
}

/// Pointwise twisted inner product (rho/2) sum c_s conj(d_s).
inline cplx inner(const std::array<cplx, 4>& c, const std::array<cplx, 4>& d, double rho) {
  cplx s{};
  for (int i = 0; i < 4; ++i) s += c[i] * std::conj(d[i]);
  return 0.5 * rho * s;
}

/// Quadrature of <D psi, eta> - <psi, D eta> and of |<D psi, eta>| for fields
/// supported in the finite domain chart.
struct SelfAdjointness {
  double defect = 0.0;
  double scale = 0.0;
};

inline SelfAdjointness self_adjointness(const TwistedSpinorField& psi, const TwistedSpinorField& eta,
                                        const ChartedSphere& m, const ChartedSphere& n, int grid) {
  const dhm::SphereGrid g(grid, grid);
  cplx lhs{}, rhs{};
  double scale = 0.0;
  for (const dhm::GridNode& node : g.nodes()) {
    if (node.point.chart != Chart::Finite) continue;
    const ChartPoint& p = node.point;
    const Chart t = psi.target_chart(p);
    const double rho = n.factor(psi.map().jet(p, t).value, t);
    const double weight = node.coord_weight * m.factor(p.z, p.chart);
    const auto dpsi = dhm::dirac_apply(psi, m, n, p, t);
    const auto deta = dhm::dirac_apply(eta, m, n, p, t);
    const cplx a = inner(dpsi, eta.values(p, t), rho);
    const cplx b = inner(psi.values(p, t), deta, rho);
    lhs += weight * a;
    rhs += weight * b;
    scale += weight * std::abs(a);
  }
  return {std::abs(lhs - rhs), scale};
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("dhm_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string config_path(const std::string& name) { return std::string(DHM_CONFIG_DIR) + "/" + name + ".json"; }

}  // namespace oracle
