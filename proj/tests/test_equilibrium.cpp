#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "rigidlab/equilibrium.hpp"
#include "rigidlab/errors.hpp"

using namespace rigidlab;

namespace {

ToralAutomorphism cat() { return make_automorphism({2, 1, 1, 1}); }

SuspensionFlow unit_flow() {
  return make_suspension(cat(), ScalarField::constant(1.0));
}

SuspensionFlow wavy_flow() {
  ScalarField r = ScalarField::constant(1.0);
  r.add_cos(1, 1, 0.1);
  return make_suspension(cat(), r);
}

FiberWeight cos_weight() {
  ScalarField c;
  c.add_cos(1, 0, 1.0);
  return FiberWeight::fiber_constant(c);
}

}  // namespace

TEST_CASE("ensemble windows select exactly the demanded periods") {
  const SuspensionFlow flow = unit_flow();
  const BowenWeight b;

  // Roof 1: flow period equals the base period, so windows pick whole groups.
  const std::vector<std::pair<double, std::size_t>> cases = {
      {0.5, 1}, {1.0, 2}, {2.0, 5}, {3.0, 10}, {4.0, 24}, {5.0, 50}};
  for (const auto& [t, expected] : cases) {
    const PeriodicEnsemble e = build_ensemble(flow, t, 1.0, b);
    CHECK(e.orbit_count() == expected);
    CHECK(e.materialized());
  }

  const PeriodicEnsemble wide = build_ensemble(flow, 1.0, 2.0, b);
  CHECK(wide.orbit_count() == 7);  // periods 2 and 3
  CHECK(wide.k_cap() == 3);

  std::size_t visited = 0;
  double last_period = 0.0;
  wide.for_each([&](const EnsembleOrbit& o) {
    CHECK(o.period > 1.0);
    CHECK(o.period <= 3.0 + 1e-12);
    CHECK(o.period >= last_period);
    last_period = o.period;
    ++visited;
  });
  CHECK(visited == 7);
}

TEST_CASE("ensemble construction validates its window") {
  const SuspensionFlow flow = unit_flow();
  const BowenWeight b;
  CHECK_THROWS_AS((void)build_ensemble(flow, -1.0, 1.0, b), std::invalid_argument);
  CHECK_THROWS_AS((void)build_ensemble(flow, 1.0, 0.0, b), std::invalid_argument);
  CHECK_THROWS_AS((void)build_ensemble(flow, 25.0, 1.0, b), CostGate);

  const PeriodicEnsemble empty = build_ensemble(flow, 0.2, 0.3, b);
  CHECK(empty.orbit_count() == 0);
  CHECK_THROWS_AS((void)approximate_measure(empty), EmptyCatalog);
}

TEST_CASE("orbit weights follow the declared kinds") {
  const SuspensionFlow flow = unit_flow();
  const double log_lambda = flow.base().log_lambda();

  BowenWeight zero;
  CHECK(zero.value(3, 3.0, log_lambda) == 0.0);

  BowenWeight vol;
  vol.kind = BowenWeight::Kind::minus_log_ju;
  CHECK(vol.value(3, 3.0, log_lambda) == doctest::Approx(-3.0 * log_lambda));

  BowenWeight rate;
  rate.kind = BowenWeight::Kind::constant_rate;
  rate.rate = 0.25;
  rate.offset = 2.0;
  CHECK(rate.value(3, 1.6, log_lambda) == doctest::Approx(0.25 * 1.6 + 2.0));

  const PeriodicEnsemble e = build_ensemble(flow, 2.0, 1.0, vol);
  e.for_each([&](const EnsembleOrbit& o) {
    CHECK(o.b_value ==
          doctest::Approx(-o.orbit.prime_period * log_lambda).epsilon(1e-15));
  });
}

TEST_CASE("the approximating measure integrates constants exactly") {
  const SuspensionFlow flow = wavy_flow();
  for (const auto kind :
       {BowenWeight::Kind::zero, BowenWeight::Kind::minus_log_ju}) {
    BowenWeight b;
    b.kind = kind;
    const PeriodicEnsemble e = build_ensemble(flow, 3.0, 1.0, b);
    const MeasureApprox m = approximate_measure(e);
    CHECK(m.normalization > 0.0);
    CHECK(bowen_integral(m, FiberWeight::constant(1.0)) == 1.0);
  }
}

TEST_CASE("constant offsets in the orbit weight cancel exactly") {
  const SuspensionFlow flow = wavy_flow();
  BowenWeight plain;
  plain.kind = BowenWeight::Kind::minus_log_ju;
  BowenWeight shifted = plain;
  shifted.offset = 7.5;

  const PeriodicEnsemble e1 = build_ensemble(flow, 4.0, 1.0, plain);
  const PeriodicEnsemble e2 = build_ensemble(flow, 4.0, 1.0, shifted);
  const MeasureApprox m1 = approximate_measure(e1);
  const MeasureApprox m2 = approximate_measure(e2);
  CHECK(bowen_integral(m1, cos_weight()) == bowen_integral(m2, cos_weight()));
}

TEST_CASE("accumulation is bit-stable across thread counts") {
  const SuspensionFlow flow = wavy_flow();
  BowenWeight b;
  b.kind = BowenWeight::Kind::minus_log_ju;

  const PeriodicEnsemble e1 = build_ensemble(flow, 5.0, 1.0, b, 1);
  const PeriodicEnsemble e3 = build_ensemble(flow, 5.0, 1.0, b, 3);
  CHECK(e1.orbit_count() == e3.orbit_count());

  const double v1 = bowen_integral(approximate_measure(e1), cos_weight());
  const double v3 = bowen_integral(approximate_measure(e3), cos_weight());
  CHECK(v1 == v3);

  const auto sums1 = e1.accumulate(2, [](const EnsembleOrbit& o, double* slots) {
    slots[0] = o.period;
    slots[1] = std::exp(o.b_value);
  });
  const auto sums3 = e3.accumulate(2, [](const EnsembleOrbit& o, double* slots) {
    slots[0] = o.period;
    slots[1] = std::exp(o.b_value);
  });
  CHECK(sums1[0] == sums3[0]);
  CHECK(sums1[1] == sums3[1]);
}

TEST_CASE("subset proportions respect the window bounds") {
  const SuspensionFlow flow = unit_flow();
  const BowenWeight b;
  const PeriodicEnsemble e = build_ensemble(flow, 1.0, 2.0, b);
  const MeasureApprox m = approximate_measure(e);

  SUBCASE("empty vanishing set") {
    const ProportionReport r =
        positive_proportion(m, [](const EnsembleOrbit&) { return 1.0; }, 1e-9);
    CHECK(r.proportion == 0.0);
    CHECK(r.hat_proportion == 0.0);
    CHECK(r.ratio == 1.0);
    CHECK(r.ratio_within_bounds);
  }

  SUBCASE("full vanishing set") {
    const ProportionReport r =
        positive_proportion(m, [](const EnsembleOrbit&) { return 0.0; }, 1e-9);
    CHECK(r.proportion == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.hat_proportion == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.ratio_within_bounds);
  }

  SUBCASE("period-two subset") {
    const ProportionReport r = positive_proportion(
        m,
        [](const EnsembleOrbit& o) {
          return o.orbit.prime_period == 2 ? 0.0 : 1.0;
        },
        1e-9);
    // Weight zero: each orbit carries mass proportional to its period.
    CHECK(r.proportion == doctest::Approx(4.0 / 19.0).epsilon(1e-14));
    CHECK(r.hat_proportion == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
    CHECK(r.ratio == doctest::Approx(r.proportion / r.hat_proportion)
                         .epsilon(1e-15));
    CHECK(r.ratio_within_bounds);  // bounds are [1/3, 3] for this window
  }

  CHECK_THROWS_AS(
      (void)positive_proportion(m, [](const EnsembleOrbit&) { return 0.0; }, -1.0),
      std::invalid_argument);
}

TEST_CASE("pigeonhole certificates collide in exactly one slot") {
  auto canonical = [](const std::vector<int>& a) {
    std::vector<int> img = a;
    img[0] = 1;
    return std::make_pair(1, img);
  };

  const PigeonholeCertificate c2 = pigeonhole_certificate(2, canonical);
  CHECK(c2.domain_size == 9);
  CHECK(c2.range_size == 6);
  int diff = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    if (c2.alpha_bar[i] != c2.beta_bar[i]) ++diff;
  }
  CHECK(diff == 1);
  CHECK(c2.alpha_bar[static_cast<std::size_t>(c2.index - 1)] !=
        c2.beta_bar[static_cast<std::size_t>(c2.index - 1)]);

  const PigeonholeCertificate c4 = pigeonhole_certificate(4, canonical);
  CHECK(c4.domain_size == 625);
  CHECK(c4.range_size == 500);

  CHECK_THROWS_AS((void)pigeonhole_certificate(1, canonical), std::invalid_argument);
  CHECK_THROWS_AS((void)pigeonhole_certificate(6, canonical), std::invalid_argument);
}

TEST_CASE("malformed index assignments are rejected") {
  SUBCASE("index out of range") {
    CHECK_THROWS_AS((void)pigeonhole_certificate(
                        2,
                        [](const std::vector<int>& a) {
                          return std::make_pair(0, a);
                        }),
                    InvalidAssignment);
  }
  SUBCASE("image of the wrong length") {
    CHECK_THROWS_AS((void)pigeonhole_certificate(
                        2,
                        [](const std::vector<int>& a) {
                          std::vector<int> img = a;
                          img.push_back(1);
                          return std::make_pair(1, img);
                        }),
                    InvalidAssignment);
  }
  SUBCASE("image does not pin the chosen coordinate") {
    CHECK_THROWS_AS((void)pigeonhole_certificate(
                        2,
                        [](const std::vector<int>& a) {
                          return std::make_pair(1, a);  // leaves alpha_1 untouched
                        }),
                    InvalidAssignment);
  }
}

TEST_CASE("vanishing-set decomposition recombines to the full integral") {
  const SuspensionFlow flow = wavy_flow();
  const BowenWeight b;
  const PeriodicEnsemble e = build_ensemble(flow, 1.0, 2.0, b);
  const MeasureApprox m = approximate_measure(e);
  const FiberWeight probe = cos_weight();

  std::vector<std::function<double(const EnsembleOrbit&)>> cocycles;
  cocycles.emplace_back(
      [](const EnsembleOrbit& o) { return o.orbit.prime_period == 2 ? 0.0 : 1.0; });
  cocycles.emplace_back([](const EnsembleOrbit&) { return 0.0; });

  const DecompositionReport rep = alternate_livshits_demo(m, cocycles, probe, 1e-9);
  REQUIRE(rep.mass.size() == 2);
  CHECK(rep.mass[0] + rep.mass[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.mass[0] > 0.0);
  CHECK(rep.mass[1] > 0.0);
  CHECK(rep.dominant_index == (rep.mass[1] > rep.mass[0] ? 1 : 0));

  const double recombined =
      rep.mass[0] * rep.component_integral[0] + rep.mass[1] * rep.component_integral[1];
  CHECK(recombined == doctest::Approx(rep.full_integral).epsilon(1e-12));
  CHECK(rep.full_integral ==
        doctest::Approx(bowen_integral(m, probe)).epsilon(1e-14));
}

TEST_CASE("decomposition demands that some cocycle vanishes everywhere") {
  const SuspensionFlow flow = unit_flow();
  const BowenWeight b;
  const PeriodicEnsemble e = build_ensemble(flow, 1.0, 1.0, b);
  const MeasureApprox m = approximate_measure(e);

  std::vector<std::function<double(const EnsembleOrbit&)>> cocycles;
  cocycles.emplace_back([](const EnsembleOrbit&) { return 1.0; });
  CHECK_THROWS_AS((void)alternate_livshits_demo(m, cocycles, cos_weight(), 0.5),
                  HypothesisViolated);

  std::vector<std::function<double(const EnsembleOrbit&)>> none;
  CHECK_THROWS_AS((void)alternate_livshits_demo(m, none, cos_weight(), 0.5),
                  std::invalid_argument);
}
