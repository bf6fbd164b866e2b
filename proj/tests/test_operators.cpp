#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "dhm/constructor.hpp"
#include "dhm/errors.hpp"
#include "dhm/operators.hpp"
#include "support.hpp"

using namespace dhm;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
using E = MixedExpr;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

RationalFunction poly(std::vector<cplx> c) { return RationalFunction(Polynomial(std::move(c))); }

/// w = z + (0.3 + 0.1i) zbar + 0.1 z^2
SurfaceMap general_map() {
  return SurfaceMap::general(E::z() + cplx{0.3, 0.1} * E::zbar() + cplx{0.1} * E::z() * E::z());
}

/// All four slots populated with non-holomorphic data.
SlotExprs busy_components() {
  return {E::zbar() + E::constant(1.0), E::z() * E::zbar(), E::z() * E::z() + E::constant(kI),
          E::constant(0.5) - E::zbar()};
}

SlotExprs only(Slot s, const E& e) {
  SlotExprs c{};
  c[index(s)] = e;
  return c;
}

double max_abs(const SlotValues& v) {
  double m = 0.0;
  for (cplx c : v) m = std::max(m, std::abs(c));
  return m;
}

const ChartedSphere kRound = ChartedSphere::round();

DiracHarmonicPair golden() {
  return build_pair(SurfaceMap::holomorphic(RationalFunction::identity()), {}, poly({1.0}), kRound, kRound);
}

}  // namespace

TEST_CASE("Dirac operator against the real-frame finite-difference oracle") {
  const ChartedSphere m = ChartedSphere::round(1.0);
  const ChartedSphere n = ChartedSphere::round(2.0);
  const TwistedSpinorField psi = TwistedSpinorField::from_finite_chart(general_map(), busy_components());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.55, 0.55);
  for (int k = 0; k < 12; ++k) {
    const ChartPoint p{Chart::Finite, {u(rng), u(rng)}};
    for (Chart t : {Chart::Finite, Chart::Infinite}) {
      // the infinite target chart is only resolved by the oracle's step away from w = 0
      if (t == Chart::Infinite && std::abs(psi.map().jet(p, Chart::Finite).value) < 0.4) continue;
      const SlotValues a = dirac_apply(psi, m, n, p, t);
      const auto b = oracle::dirac(psi, m, n, p, t);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-7 * std::max(1.0, std::abs(b[i])));
    }
  }
  // conformal domain, holomorphic map, infinite domain chart
  const ChartedSphere bumpy = ChartedSphere::conformal(
      BivariatePolynomial({{2.0}, {0.0, 1.0}}),
      BivariatePolynomial({{1.0}, {0.0, 3.0}, {0.0, 0.0, 3.0}, {0.0, 0.0, 0.0, 1.0}}));
  const DiracHarmonicPair pair =
      perturbed(build_pair(SurfaceMap::holomorphic(poly({0.0, 0.0, 1.0})), poly({1.0}), poly({0.5, 1.0}), bumpy, n),
                Slot::ZeroPlus, E::zbar() * E::z());
  for (cplx z : {cplx{0.3, 0.2}, cplx{-0.5, 0.6}, cplx{0.1, -0.8}})
    for (Chart d : {Chart::Finite, Chart::Infinite}) {
      const ChartPoint p{d, z};
      const Chart t = pair.psi.target_chart(p);
      const SlotValues a = dirac_apply(pair.psi, bumpy, n, p, t);
      const auto b = oracle::dirac(pair.psi, bumpy, n, p, t);
      for (int i = 0; i < 4; ++i) {
        INFO("chart " << index(d) << " target " << index(t) << " z " << z << " slot " << i << " " << a[i] << " " << b[i]);
        CHECK(std::abs(a[i] - b[i]) <= 1e-7 * std::max(1.0, std::abs(b[i])));
      }
    }
}

TEST_CASE("Dirac examples") {
  const SurfaceMap id = SurfaceMap::holomorphic(RationalFunction::identity());
  const E quarter = pow(kRound.factor_expr(Chart::Finite), -0.25);
  const TwistedSpinorField kernel = TwistedSpinorField::from_finite_chart(id, only(Slot::OnePlus, quarter));
  for (cplx z : {cplx{0.0}, cplx{0.4, -0.3}, cplx{0.9, 0.9}})
    CHECK(max_abs(dirac_apply(kernel, kRound, kRound, {Chart::Finite, z}, Chart::Finite)) <= 1e-15);

  const TwistedSpinorField one = TwistedSpinorField::from_finite_chart(id, only(Slot::OnePlus, E::constant(1.0)));
  const SlotValues d = dirac_apply(one, kRound, kRound, {Chart::Finite, 1.0}, Chart::Finite);
  CHECK(std::abs(d[index(Slot::OneMinus)] - (-0.5)) <= 1e-15);
  CHECK(std::abs(d[index(Slot::OnePlus)]) == 0.0);
  CHECK(std::abs(d[index(Slot::ZeroPlus)]) == 0.0);
  CHECK(std::abs(d[index(Slot::ZeroMinus)]) == 0.0);

  const TwistedSpinorField zero(id);
  CHECK(max_abs(dirac_apply(zero, kRound, kRound, {Chart::Finite, {0.2, 0.1}})) == 0.0);
}

TEST_CASE("chirality flip") {
  const ChartedSphere n = ChartedSphere::round(2.0);
  const std::array<Slot, 4> image{Slot::OneMinus, Slot::ZeroMinus, Slot::OnePlus, Slot::ZeroPlus};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (Slot s : kAllSlots) {
    const TwistedSpinorField psi =
        TwistedSpinorField::from_finite_chart(general_map(), only(s, busy_components()[index(s)]));
    for (int k = 0; k < 10; ++k) {
      const ChartPoint p{k % 2 ? Chart::Finite : Chart::Infinite, {u(rng), u(rng)}};
      if (p.chart == Chart::Infinite && std::abs(p.z) < 0.2) continue;
      const SlotValues v = dirac_apply(psi, kRound, n, p);
      for (Slot o : kAllSlots)
        if (o != image[index(s)]) CHECK(std::abs(v[index(o)]) <= 1e-13);
      CHECK(std::abs(v[index(image[index(s)])]) > 1e-6);
    }
  }
}

TEST_CASE("Dirac linearity") {
  const ChartedSphere n = ChartedSphere::round(2.0);
  const TwistedSpinorField a = TwistedSpinorField::from_finite_chart(general_map(), busy_components());
  const SlotExprs other{E::z(), E::constant(2.0), E::zbar() * E::zbar(), E::z() - E::zbar()};
  const TwistedSpinorField b = TwistedSpinorField::from_finite_chart(general_map(), other);
  const cplx alpha{0.7, -1.3};
  const TwistedSpinorField sum = a.scaled(alpha).plus(b);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int k = 0; k < 20; ++k) {
    const ChartPoint p{Chart::Finite, {u(rng), u(rng)}};
    const Chart t = a.target_chart(p);
    const SlotValues l = dirac_apply(sum, kRound, n, p, t);
    const SlotValues da = dirac_apply(a, kRound, n, p, t);
    const SlotValues db = dirac_apply(b, kRound, n, p, t);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(l[i] - (alpha * da[i] + db[i])) <= 1e-12);
  }
}

TEST_CASE("formal self-adjointness") {
  const ChartedSphere n = ChartedSphere::round(2.0);
  const SurfaceMap phi = SurfaceMap::general(cplx{0.5} * E::z() + cplx{0.1, 0.05} * E::zbar() +
                                             cplx{0.05} * E::z() * E::z());
  const E b1 = oracle::bump({0.1, 0.2}, 0.6);
  const E b2 = oracle::bump({-0.1, 0.0}, 0.7);
  const SlotExprs c1{b1 * (E::constant(1.0) + E::z()), b1 * E::zbar(), cplx{0.0, 0.5} * b1, b1 * E::z() * E::zbar()};
  const SlotExprs c2{b2 * E::zbar(), b2 * (E::constant(kI) - E::z()), b2 * E::z() * E::z(), cplx{2.0} * b2};
  std::array<std::array<std::optional<SlotExprs>, 2>, 2> ch1{}, ch2{};
  ch1[0][0] = c1;
  ch2[0][0] = c2;
  const TwistedSpinorField psi = TwistedSpinorField::from_charts(phi, ch1);
  const TwistedSpinorField eta = TwistedSpinorField::from_charts(phi, ch2);
  const oracle::SelfAdjointness r = oracle::self_adjointness(psi, eta, kRound, n, 128);
  MESSAGE("self-adjointness defect " << r.defect << " scale " << r.scale);
  CHECK(r.scale > 1e-2);
  CHECK(r.defect <= 1e-2 * r.scale);
}

TEST_CASE("tension field") {
  const ChartedSphere bumpy = ChartedSphere::conformal(
      BivariatePolynomial({{2.0}, {0.0, 1.0}}),
      BivariatePolynomial({{1.0}, {0.0, 3.0}, {0.0, 0.0, 3.0}, {0.0, 0.0, 0.0, 1.0}}));
  const SurfaceMap holo = SurfaceMap::holomorphic(RationalFunction(Polynomial({1.0, 0.0, 1.0}), Polynomial({0.5, 1.0})));
  for (cplx z : {cplx{0.2, 0.1}, cplx{-0.9, 0.4}}) {
    CHECK(std::abs(tension_field(holo, bumpy, kRound, {Chart::Finite, z}, holo.target_chart({Chart::Finite, z}))) <=
          1e-12);
    CHECK(std::abs(tension_field(SurfaceMap::constant({0.3, 0.3}), kRound, kRound, {Chart::Finite, z}, Chart::Finite)) ==
          0.0);
  }
  const ChartedSphere flat = ChartedSphere::flat(1.0);
  const SurfaceMap zz = SurfaceMap::general(E::z() * E::zbar());
  CHECK(std::abs(tension_field(zz, flat, flat, {Chart::Finite, 1.0}, Chart::Finite) - 4.0) <= 1e-14);

  const ChartedSphere n = ChartedSphere::round(2.0);
  for (cplx z : {cplx{0.3, -0.2}, cplx{0.6, 0.6}}) {
    const ChartPoint p{Chart::Finite, z};
    CHECK(std::abs(tension_field(general_map(), bumpy, n, p, Chart::Finite) -
                   oracle::tension(general_map(), bumpy, n, p, Chart::Finite)) <= 1e-5);
  }
}

TEST_CASE("curvature coupling against the real-frame oracle") {
  const ChartedSphere n = ChartedSphere::round(2.0);
  const TwistedSpinorField psi = TwistedSpinorField::from_finite_chart(general_map(), busy_components());
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int k = 0; k < 10; ++k) {
    const ChartPoint p{Chart::Finite, {u(rng), u(rng)}};
    for (Chart t : {Chart::Finite, Chart::Infinite}) {
      const CouplingVector c = curvature_coupling(psi, kRound, n, p, t);
      const cplx o = oracle::coupling(psi, kRound, n, p, t);
      CHECK(std::abs(c.dw - o) <= 1e-7 * std::max(1.0, std::abs(o)));
      // real vector: the dwbar coefficient is the conjugate
      CHECK(std::abs(c.dwbar - std::conj(c.dw)) <= 1e-12 * std::max(1.0, std::abs(c.dw)));
    }
  }
}

TEST_CASE("curvature coupling examples") {
  const SurfaceMap id = SurfaceMap::holomorphic(RationalFunction::identity());
  const TwistedSpinorField mixed = TwistedSpinorField::from_finite_chart(
      id, {E::constant(1.0), E(), E::constant(1.0), E()});
  const ChartPoint one{Chart::Finite, 1.0};
  const cplx expected = oracle::coupling(mixed, kRound, kRound, one, Chart::Finite);
  CHECK(std::abs(expected - 1.0) <= 1e-9);
  const CouplingVector c = curvature_coupling(mixed, kRound, kRound, one, Chart::Finite);
  CHECK(std::abs(c.dw - 1.0) <= 1e-14);
  CHECK(std::abs(c.dwbar - 1.0) <= 1e-14);

  const TwistedSpinorField zero(id);
  CHECK(std::abs(curvature_coupling(zero, kRound, kRound, one, Chart::Finite).dw) == 0.0);

  // only 1+ and 0- slots along a holomorphic map: zero at every node
  const SurfaceMap holo = SurfaceMap::holomorphic(RationalFunction(Polynomial({1.0, 0.0, 1.0}), Polynomial({0.5, 1.0})));
  const TwistedSpinorField shape =
      TwistedSpinorField::from_finite_chart(holo, {E::zbar() + E::constant(2.0), E(), E(), E::z() * E::zbar()});
  double worst = 0.0;
  for (const GridNode& node : SphereGrid(12, 12).nodes()) {
    if (node.point.chart == Chart::Infinite && std::abs(node.point.z) < 0.1) continue;
    const CouplingVector v = curvature_coupling(shape, kRound, ChartedSphere::round(2.0), node.point,
                                                shape.target_chart(node.point));
    worst = std::max(worst, std::abs(v.dw));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Euler-Lagrange residuals") {
  const SphereGrid grid(64, 64);
  const ELResidualReport g = el_verify(golden(), grid);
  CHECK(g.relative_dirac_residual() <= 1e-9);
  CHECK(g.max_dirac_residual <= 1e-9);
  CHECK(g.max_tension_residual <= 1e-10);
  CHECK(g.max_coupling_residual <= 1e-9);
  CHECK(g.node_count == 2u * 64u * 64u);
  CHECK(g.excluded_nodes == 0u);

  const ELResidualReport t = el_verify(trivial_harmonic(SurfaceMap::holomorphic(poly({0.0, 0.0, 1.0})), kRound, kRound), grid);
  CHECK(t.max_dirac_residual <= 1e-12);
  CHECK(t.max_tension_residual <= 1e-12);
  CHECK(t.max_coupling_residual <= 1e-12);

  const ELResidualReport p = el_verify(perturbed(golden(), Slot::OnePlus, cplx{0.01} * E::zbar()), grid);
  CHECK(p.max_dirac_residual >= 1e-3);
  // regression value of the perturbed residual
  CHECK(p.max_dirac_residual == doctest::Approx(0.02).epsilon(0.05));

  // residual fields are non-negative and name the worst node
  CHECK(p.worst_dirac.value == p.max_dirac_residual);
  CHECK(p.worst_dirac.node < grid.nodes().size());
}

TEST_CASE("exclusions around spinor poles") {
  const DiracHarmonicPair pole = build_pair(SurfaceMap::holomorphic(poly({0.0, 0.0, 1.0})), {},
                                            RationalFunction(Polynomial({1.0}), Polynomial({0.0, 1.0})), kRound, kRound);
  const ELResidualReport r = el_verify(pole, SphereGrid(64, 64));
  CHECK(r.excluded_nodes > 0u);
  CHECK(r.exclusions_within_limit);
  CHECK(r.relative_dirac_residual() <= 1e-9);
}

TEST_CASE("Bochner defects") {
  const DiracHarmonicPair g = golden();
  const ChartPoint half{Chart::Finite, 0.5};
  const double d = bochner_defect(Slot::OnePlus, g.psi, kRound, kRound, half, 1e-2);
  CHECK(std::abs(d) <= 1e-3);

  // flat chart, holomorphic component: log|g| is harmonic and both curvatures vanish
  const ChartedSphere flat = ChartedSphere::flat(1.0);
  std::array<std::array<std::optional<SlotExprs>, 2>, 2> charts{};
  charts[0][0] = only(Slot::OnePlus, E::holomorphic(poly({-0.3, 1.0})) * E::holomorphic(poly({{0.0, 2.0}, 1.0})));
  const TwistedSpinorField h =
      TwistedSpinorField::from_charts(SurfaceMap::holomorphic(RationalFunction::identity()), charts);
  for (cplx z : {cplx{0.0, 0.4}, cplx{0.8, -0.2}, cplx{-0.5, 0.5}})
    CHECK(std::abs(bochner_defect(Slot::OnePlus, h, flat, flat, {Chart::Finite, z}, 1e-2)) <= 1e-6);

  // fourth-order stencil: halving h cuts the truncation error
  const TwistedSpinorField deg2 =
      build_pair(SurfaceMap::holomorphic(poly({0.0, 0.0, 1.0})), {}, poly({1.0}), kRound, kRound).psi;
  const ChartPoint near{Chart::Finite, {0.1, 0.05}};
  const double coarse = std::abs(bochner_defect(Slot::OnePlus, deg2, kRound, kRound, near, 1e-2));
  const double fine = std::abs(bochner_defect(Slot::OnePlus, deg2, kRound, kRound, near, 5e-3));
  MESSAGE("defect h=1e-2 " << coarse << ", h=5e-3 " << fine);
  CHECK(coarse / fine >= 3.0);

  CHECK(kind_of([&] { (void)bochner_defect(Slot::OnePlus, deg2, kRound, kRound, {Chart::Finite, 0.0}, 1e-2); }) ==
        ErrorKind::TooCloseToZeroSet);
  CHECK(kind_of([&] { (void)bochner_defect(Slot::ZeroPlus, g.psi, kRound, kRound, half, 1e-2); }) ==
        ErrorKind::TooCloseToZeroSet);
}

TEST_CASE("Bochner right sides carry the slot signs") {
  const SurfaceMap id = SurfaceMap::holomorphic(RationalFunction::identity());
  const ChartPoint p{Chart::Finite, {0.2, 0.3}};
  // round to round identity: K_M = K_N = J = 1
  CHECK(jacobian(id, kRound, kRound, p, Chart::Finite) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bochner_rhs(Slot::OnePlus, id, kRound, kRound, p) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(bochner_rhs(Slot::ZeroPlus, id, kRound, kRound, p) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(bochner_rhs(Slot::OneMinus, id, kRound, kRound, p) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(bochner_rhs(Slot::ZeroMinus, id, kRound, kRound, p) == doctest::Approx(-0.5).epsilon(1e-14));
  const SurfaceMap anti = SurfaceMap::antiholomorphic(RationalFunction::identity());
  CHECK(jacobian(anti, kRound, kRound, p, Chart::Finite) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("twistor residual") {
  const TwistorSpinor plain(poly({1.0}), {}, kRound);
  const TwistorSpinor cubic(poly({0.0, 0.0, 0.0, 1.0}), {}, kRound);
  const TwistorSpinor both(poly({0.5, {0.0, 1.0}}), RationalFunction(Polynomial({1.0}), Polynomial({-0.5, 1.0})), kRound);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0), angle(0.0, 2 * kPi);
  for (int k = 0; k < 20; ++k) {
    const ChartPoint p{k % 2 ? Chart::Finite : Chart::Infinite, {u(rng), u(rng)}};
    const double theta = angle(rng);
    CHECK(twistor_residual(plain, theta, p) <= 1e-12);
    const double scale = std::max(1.0, std::pow(std::abs(finite_coordinate(p)), 3.0));
    if (p.chart == Chart::Finite || std::abs(p.z) > 0.3) CHECK(twistor_residual(cubic, theta, p) <= 1e-10 * scale);
    if (std::abs(finite_coordinate(p) - 0.5) > 0.05) CHECK(twistor_residual(both, theta, p) <= 1e-10 * scale);
  }

  const E quarter = pow(kRound.factor_expr(Chart::Finite), 0.25);
  const SpinorField modulus(std::array<E, 2>{E::z() * E::zbar() * quarter, E()}, std::nullopt);
  double worst = 0.0;
  for (double theta : {0.0, kPi / 4, kPi / 2, 1.0}) worst = std::max(worst, twistor_residual(modulus, kRound, theta, {Chart::Finite, 1.0}));
  MESSAGE("twistor residual of |z|^2 lambda^(1/4) psi+ at z = 1: " << worst);
  CHECK(worst >= 0.1);
}

TEST_CASE("energy") {
  const SphereGrid grid(64, 64);
  const SurfaceMap id = SurfaceMap::holomorphic(RationalFunction::identity());
  CHECK(energy(trivial_harmonic(id, kRound, kRound), grid) == doctest::Approx(8 * kPi).epsilon(1e-2));
  const SurfaceMap sq = SurfaceMap::holomorphic(poly({0.0, 0.0, 1.0}));
  CHECK(energy(trivial_harmonic(sq, kRound, kRound), grid) == doctest::Approx(16 * kPi).epsilon(1e-2));
  CHECK(energy(trivial_constant({0.5, 0.25}, kRound, kRound), grid) == 0.0);
  const EnergyReport r = energy_report(golden(), grid);
  CHECK(std::isfinite(r.energy));
  CHECK(r.spinor_energy > 0.0);
  CHECK(r.map_energy == doctest::Approx(8 * kPi).epsilon(1e-2));
  const TwistedSpinorField wild = TwistedSpinorField::from_finite_chart(id, only(Slot::OnePlus, E::constant(1e7)));
  DiracHarmonicPair bad{kRound, kRound, wild, std::nullopt, "twistor", {}};
  CHECK(kind_of([&] { (void)energy_report(bad, SphereGrid(16, 16)); }) == ErrorKind::UnboundedSpinor);
}
