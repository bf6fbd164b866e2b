#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dhm/census.hpp"
#include "dhm/constructor.hpp"
#include "dhm/errors.hpp"

using namespace dhm;

namespace {

const ChartedSphere kRound = ChartedSphere::round();

RationalFunction poly(std::vector<cplx> c) { return RationalFunction(Polynomial(std::move(c))); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

DiracHarmonicPair holo_pair(RationalFunction phi, RationalFunction u1, RationalFunction u2) {
  return build_pair(SurfaceMap::holomorphic(std::move(phi)), u1, u2, kRound, kRound);
}

/// Roots of p strictly inside |z - c| < r: the argument-principle count of a polynomial factor.
int roots_inside(const Polynomial& p, cplx c, double r) {
  int n = 0;
  for (cplx root : p.roots()) n += std::abs(root - c) < r;
  return n;
}

}  // namespace

TEST_CASE("predicted totals") {
  const PredictedTotals a = predict_totals(0, 0, 2);
  CHECK(a.total == std::array<int, 4>{3, -5, -5, 3});
  CHECK(a.forced_zero(Slot::ZeroPlus));
  CHECK(a.forced_zero(Slot::OneMinus));
  CHECK_FALSE(a.forced_zero(Slot::OnePlus));
  const PredictedTotals b = predict_totals(0, 0, 0);
  CHECK(b.total == std::array<int, 4>{-1, -1, -1, -1});
  for (Slot s : kAllSlots) CHECK(b.forced_zero(s));
  for (int d : {-3, 0, 1, 7}) CHECK(predict_totals(1, 1, d).total == std::array<int, 4>{0, 0, 0, 0});
  // antiholomorphic degree -1 on spheres
  CHECK(predict_totals(0, 0, -1).total == std::array<int, 4>{-3, 1, 1, -3});
}

TEST_CASE("winding numbers") {
  CHECK(winding_number([](cplx z) { return z; }, 0.0, 1.0, 256).winding == 1);
  CHECK(winding_number([](cplx z) { return z * z * z; }, 0.0, 1.0).winding == 3);
  CHECK(winding_number([](cplx z) { return std::conj(z); }, 0.0, 1.0).winding == -1);
  const Polynomial p = Polynomial::linear_factor(0.3) * Polynomial::linear_factor(-0.3);
  const auto dressed = [&](cplx z) { return p(z) * std::exp(std::norm(z) + cplx{0.0, 0.3} * z.real()); };
  const int expected = roots_inside(p, 0.0, 1.0);
  CHECK(expected == 2);
  CHECK(winding_number(dressed, 0.0, 1.0).winding == expected);
  CHECK(kind_of([] { (void)winding_number([](cplx z) { return z - 1.0; }, 0.0, 1.0); }) == ErrorKind::ZeroOnContour);
}

TEST_CASE("winding is invariant under sample doubling and radius changes") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> roots;
    Polynomial p = Polynomial::constant(1.0);
    for (int k = 0; k < 4; ++k) {
      roots.push_back({u(rng), u(rng)});
      p = p * Polynomial::linear_factor(roots.back());
    }
    const cplx c = roots[0];
    double gap = 1e9;
    for (int k = 1; k < 4; ++k) gap = std::min(gap, std::abs(roots[k] - c));
    const double r = 0.3 * gap;
    const auto f = [&](cplx z) { return p(z) * std::exp(cplx{0.0, 1.0} * std::norm(z)); };
    const int base = winding_number(f, c, r, 64).winding;
    CHECK(base == 1);
    CHECK(winding_number(f, c, r, 128).winding == base);
    CHECK(winding_number(f, c, r, 1024).winding == base);
    CHECK(winding_number(f, c, 0.8 * r).winding == base);
    CHECK(winding_number(f, c, 1.2 * r).winding == base);
    // the big circle counts every root
    CHECK(winding_number(f, 0.0, 2.0).winding == roots_inside(p, 0.0, 2.0));
  }
}

TEST_CASE("census of the golden pair") {
  const DiracHarmonicPair g = holo_pair(RationalFunction::identity(), {}, poly({1.0}));
  const SphereGrid grid(64, 64);
  const ZeroCensusReport one = census(g.psi, kRound, Slot::OnePlus, grid);
  CHECK_FALSE(one.identically_zero);
  REQUIRE(one.zeros.size() == 1u);
  CHECK(one.zeros[0].chart == Chart::Infinite);
  CHECK(std::abs(one.zeros[0].z) <= 1e-8);
  CHECK(one.zeros[0].order == 1);
  CHECK(one.total_order == 1);
  CHECK(one.predicted_total == 1);
  CHECK(one.matches_prediction());

  for (Slot s : {Slot::ZeroPlus, Slot::OneMinus, Slot::ZeroMinus}) {
    const ZeroCensusReport r = census(g.psi, kRound, s, grid);
    CHECK(r.identically_zero);
    CHECK(r.zeros.empty());
    CHECK(r.max_magnitude <= 1e-12);
    CHECK(r.matches_prediction());
  }
}

TEST_CASE("census of degree-2 pairs") {
  const SphereGrid grid(64, 64);
  const DiracHarmonicPair a = holo_pair(poly({0.0, 0.0, 1.0}), {}, poly({1.0}));
  const ZeroCensusReport ra = census(a.psi, kRound, Slot::OnePlus, grid);
  CHECK(ra.total_order == 3);
  CHECK(ra.predicted_total == 3);
  // branch point at 0 (order 1) and a double zero at infinity
  REQUIRE(ra.zeros.size() == 2u);
  CHECK(ra.zeros[0].chart == Chart::Finite);
  CHECK(ra.zeros[0].order == 1);
  CHECK(ra.zeros[1].chart == Chart::Infinite);
  CHECK(ra.zeros[1].order == 2);

  // a pole of u2 cancels the branch zero at 0
  const DiracHarmonicPair b = holo_pair(poly({0.0, 0.0, 1.0}), {}, RationalFunction(Polynomial({1.0}), Polynomial({0.0, 1.0})));
  const ZeroCensusReport rb = census(b.psi, kRound, Slot::OnePlus, grid);
  CHECK(rb.total_order == 3);
  REQUIRE(rb.zeros.size() == 1u);
  CHECK(rb.zeros[0].order == 3);

  // u1 feeds the 0- slot with the same total
  const DiracHarmonicPair c = holo_pair(poly({0.0, 0.0, 1.0}), poly({0.5, 1.0}), {});
  const ZeroCensusReport rc = census(c.psi, kRound, Slot::ZeroMinus, grid);
  CHECK(rc.total_order == 3);
  CHECK(rc.matches_prediction());
}

TEST_CASE("census totals follow the prediction for every constructed pair") {
  const SphereGrid grid(48, 48);
  const std::vector<DiracHarmonicPair> pairs{
      holo_pair(poly({0.0, 0.0, 0.0, 1.0}), {}, poly({1.0})),
      holo_pair(poly({0.0, 0.0, 0.0, 1.0}), poly({0.0, 1.0}), poly({{0.2, 0.1}, 1.0})),
      holo_pair(RationalFunction(Polynomial({1.0, 0.0, 1.0}), Polynomial({0.0, 1.0})), {}, poly({0.7, -0.2})),
      build_pair(SurfaceMap::antiholomorphic(poly({0.0, 0.0, 1.0})), poly({1.0}), {}, kRound, kRound),
  };
  for (const DiracHarmonicPair& p : pairs)
    for (Slot s : kAllSlots) {
      const ZeroCensusReport r = census(p.psi, kRound, s, grid);
      CHECK(r.predicted_total == predict_totals(0, 0, p.map().degree()).total[index(s)]);
      CHECK(r.matches_prediction());
      int sum = 0;
      for (const ZeroRecord& z : r.zeros) {
        CHECK(z.order >= 1);
        sum += z.order;
      }
      CHECK(sum == r.total_order);
      CHECK_FALSE((r.identically_zero && !r.zeros.empty()));
    }
}

TEST_CASE("a zero on the overlap circle is reported once") {
  const DiracHarmonicPair g = holo_pair(RationalFunction::identity(), {}, poly({-1.0, 1.0}));
  const ZeroCensusReport r = census(g.psi, kRound, Slot::OnePlus, SphereGrid(64, 64));
  REQUIRE(r.zeros.size() == 1u);
  CHECK(r.zeros[0].order == 1);
  CHECK(std::abs(finite_coordinate({r.zeros[0].chart, r.zeros[0].z}) - 1.0) <= 1e-7);
  CHECK(r.total_order == 1);
  const int here = zero_order(g.psi, Slot::OnePlus, {Chart::Finite, 1.0}, 1e-3);
  const int there = zero_order(g.psi, Slot::OnePlus, {Chart::Infinite, 1.0}, 1e-3);
  CHECK(here == 1);
  CHECK(there == here);
}

TEST_CASE("census is stable under grid refinement") {
  const DiracHarmonicPair p = holo_pair(poly({0.0, 0.0, 0.0, 1.0}), {}, poly({{0.3, 0.4}, 1.0}));
  for (int n : {32, 64}) {
    const ZeroCensusReport r = census(p.psi, kRound, Slot::OnePlus, SphereGrid(n, n));
    CHECK(r.total_order == 5);
  }
}

TEST_CASE("nearby zeros are flagged as an unresolved cluster") {
  const DiracHarmonicPair p =
      holo_pair(poly({0.0, 0.0, 0.0, 1.0}), {},
                RationalFunction(Polynomial::linear_factor(0.3) * Polynomial::linear_factor(0.3 + 1e-4)));
  CHECK(kind_of([&] { (void)census(p.psi, kRound, Slot::OnePlus, SphereGrid(64, 64)); }) ==
        ErrorKind::UnresolvedCluster);
}
