#include <cmath>

#include "doctest.h"
#include "rigidlab/errors.hpp"
#include "rigidlab/suspension.hpp"

using namespace rigidlab;

namespace {

ToralAutomorphism cat() { return make_automorphism({2, 1, 1, 1}); }

ScalarField roof_cx(double eps) {
  ScalarField r = ScalarField::constant(1.0);
  r.add_cos(1, 0, eps);
  return r;
}

MapOrbit orbit_with_rep(const OrbitCatalog& catalog, int k, const RationalPoint& rep) {
  for (const MapOrbit& o : catalog.orbits(k)) {
    if (o.representative() == rep) return o;
  }
  REQUIRE(false);
  return catalog.orbits(1).front();
}

}  // namespace

TEST_CASE("suspension rejects roofs without a positive certified bound") {
  ScalarField bad = ScalarField::constant(0.1);
  bad.add_cos(1, 0, 0.2);
  CHECK_THROWS_AS((void)make_suspension(cat(), bad), NonPositiveRoof);

  const SuspensionFlow flow = make_suspension(cat(), roof_cx(0.1));
  CHECK(flow.roof_min() == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("orbit periods have closed forms on small orbits") {
  const SuspensionFlow flow = make_suspension(cat(), roof_cx(0.1));
  const OrbitCatalog catalog = enumerate_periodic_orbits(flow.base(), 2);

  const MapOrbit fp = catalog.orbits(1).front();
  CHECK(orbit_period(flow, fp) == doctest::Approx(1.1).epsilon(1e-15));

  // x-coordinates {1/5, 4/5}: cos-sum is 2cos(2*pi/5) = (sqrt5 - 1)/2.
  const MapOrbit o1 = orbit_with_rep(catalog, 2, {1, 2, 5});
  CHECK(orbit_period(flow, o1) ==
        doctest::Approx(2.0 + 0.1 * (std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-15));

  // x-coordinates {2/5, 3/5}: cos-sum is 2cos(4*pi/5) = -(sqrt5 + 1)/2.
  const MapOrbit o2 = orbit_with_rep(catalog, 2, {2, 4, 5});
  CHECK(orbit_period(flow, o2) ==
        doctest::Approx(2.0 - 0.1 * (std::sqrt(5.0) + 1.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("flow orbit data ties period, exponent, and multiplier together") {
  const SuspensionFlow flow = make_suspension(cat(), roof_cx(0.1));
  const OrbitCatalog catalog = enumerate_periodic_orbits(flow.base(), 3);
  catalog.for_each([&](const MapOrbit& o) {
    const FlowOrbitData d = orbit_flow_data(flow, o);
    CHECK(d.period == doctest::Approx(orbit_period(flow, o)).epsilon(1e-15));
    CHECK(d.exponent ==
          doctest::Approx(o.prime_period * flow.base().log_lambda() / d.period)
              .epsilon(1e-15));
    CHECK(d.multiplier ==
          doctest::Approx(std::pow(flow.base().lambda(), -o.prime_period))
              .epsilon(1e-13));
    CHECK(d.multiplier > 0.0);
    CHECK(d.multiplier < 1.0);
  });
}

TEST_CASE("weight integrals are exact on fiber polynomials") {
  const double r = 1.3;
  const SuspensionFlow flow =
      make_suspension(cat(), ScalarField::constant(r));
  const MapOrbit fp = enumerate_periodic_orbits(flow.base(), 1).orbits(1).front();

  FiberWeight square;
  square.add_component(2, ScalarField::constant(1.0));
  CHECK(weight_integral(flow, square, fp) ==
        doctest::Approx(r * r * r / 3.0).epsilon(1e-15));

  // One forced node evaluates s^2 at the midpoint: r * (r/2)^2.
  CHECK(weight_integral(flow, square, fp, 1) ==
        doctest::Approx(r * r * r / 4.0).epsilon(1e-15));
}

TEST_CASE("weight integrals mix base and fiber dependence") {
  const SuspensionFlow flow = make_suspension(cat(), roof_cx(0.1));
  const MapOrbit fp = enumerate_periodic_orbits(flow.base(), 1).orbits(1).front();

  FiberWeight w = FiberWeight::constant(1.0);
  w.add_component(1, ScalarField::constant(1.0));
  // At the fixed point the roof is 1.1: integral of (1 + s) ds from 0 to 1.1.
  CHECK(weight_integral(flow, w, fp) ==
        doctest::Approx(1.1 + 1.1 * 1.1 / 2.0).epsilon(1e-15));

  const FiberWeight one = FiberWeight::constant(1.0);
  CHECK(weight_integral(flow, one, fp) ==
        doctest::Approx(orbit_period(flow, fp)).epsilon(1e-15));
}

TEST_CASE("time advance respects the roof gluing") {
  const SuspensionFlow flow =
      make_suspension(cat(), ScalarField::constant(1.0));

  SUBCASE("short moves stay in the fiber") {
    const FlowPoint p = advance(flow, {{0.25, 0.25}, 0.1}, 0.5);
    CHECK(p.x.x == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.x.y == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.s == doctest::Approx(0.6).epsilon(1e-15));
  }

  SUBCASE("one crossing applies the base map once") {
    const FlowPoint p = advance(flow, {{0.25, 0.25}, 0.9}, 0.3);
    CHECK(p.x.x == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(p.x.y == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.s == doctest::Approx(0.2).epsilon(1e-14));
  }

  SUBCASE("long moves cross several times") {
    const FlowPoint start{{0.25, 0.25}, 0.9};
    const FlowPoint p = advance(flow, start, 2.0);
    // Two crossings: base point advances twice, height returns to 0.9.
    Vec2 x = flow.base().apply_mod1(flow.base().apply_mod1(start.x));
    CHECK(p.x.x == doctest::Approx(x.x).epsilon(1e-14));
    CHECK(p.x.y == doctest::Approx(x.y).epsilon(1e-14));
    CHECK(p.s == doctest::Approx(0.9).epsilon(1e-13));
  }

  CHECK_THROWS_AS((void)advance(flow, {{0.0, 0.0}, 0.0}, -1.0),
                  std::invalid_argument);
}
