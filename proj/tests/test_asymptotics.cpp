#include <cmath>
#include <map>

#include "doctest.h"
#include "rigidlab/asymptotics.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/summation.hpp"

using namespace rigidlab;

namespace {

ToralAutomorphism cat() { return make_automorphism({2, 1, 1, 1}); }

SuspensionFlow flow_cx(double eps) {
  ScalarField r = ScalarField::constant(1.0);
  r.add_cos(1, 0, eps);
  return make_suspension(cat(), r);
}

/// Independent estimate of the regularized homoclinic period sum
/// sum over all i of (roof(A^i h) - roof(origin)), truncated when the terms
/// fall below the round-off floor.
double t_prime_reference(const SuspensionFlow& flow, const HomoclinicPoint& h) {
  CompensatedSum s;
  const double base = flow.roof().value({0.0, 0.0});
  for (int i = 0; i <= 300; ++i) {
    s.add(flow.roof().value_dd(homoclinic_orbit_point_dd(flow.base(), h, i)) - base);
  }
  for (int i = -1; i >= -300; --i) {
    s.add(flow.roof().value_dd(homoclinic_orbit_point_dd(flow.base(), h, i)) - base);
  }
  return s.value();
}

}  // namespace

TEST_CASE("constant roofs give exactly periodic shadowing data") {
  const SuspensionFlow flow =
      make_suspension(cat(), ScalarField::constant(1.0));
  const HomoclinicPoint h = homoclinic_point(flow.base(), {1, 0});
  const HomoclinicExperiment exp = run_homoclinic_experiment(flow, h, 4, 20);

  CHECK(exp.t0 == doctest::Approx(1.0).epsilon(1e-15));
  for (const auto& [n, t] : exp.periods) {
    CHECK(t == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
  }
  CHECK(std::abs(exp.t_prime) < 1e-10);

  const ExponentRecovery rec = recover_exponent(exp, exp.t_prime);
  CHECK(rec.k_is_zero);
  CHECK(rec.residuals.empty());
}

TEST_CASE("extrapolated correction matches the independent homoclinic sum") {
  const SuspensionFlow flow = flow_cx(0.1);
  const HomoclinicPoint h = homoclinic_point(flow.base(), {1, 0});
  const HomoclinicExperiment exp = run_homoclinic_experiment(flow, h, 4, 28);

  const double reference = t_prime_reference(flow, h);
  CHECK(exp.t_prime == doctest::Approx(reference).epsilon(1e-9));
  CHECK(exp.t_prime_uncertainty < 1e-9);
  CHECK(exp.periods.size() == 25);
  CHECK(exp.excess.size() == 25);

  const TPrimeEstimate again = estimate_T_prime(exp);
  CHECK(again.value == exp.t_prime);
  CHECK(again.uncertainty == exp.t_prime_uncertainty);
}

TEST_CASE("gated residuals keep exactly the numerically meaningful range") {
  const SuspensionFlow flow = flow_cx(0.1);
  const HomoclinicPoint h = homoclinic_point(flow.base(), {1, 0});
  const HomoclinicExperiment exp = run_homoclinic_experiment(flow, h, 4, 28);

  const std::map<int, double> gated = gated_residuals(exp, exp.t_prime);
  CHECK(gated.size() == 25);
  CHECK(gated.begin()->first == 4);
  CHECK(gated.rbegin()->first == 28);
  for (const auto& [n, r] : gated) {
    CHECK(std::abs(r) < 1.0);
    CHECK(std::abs(r) > 1e-14);
  }
}

TEST_CASE("exponent recovery finds the unstable multiplier") {
  const SuspensionFlow flow = flow_cx(0.1);
  const HomoclinicPoint h = homoclinic_point(flow.base(), {1, 0});
  const HomoclinicExperiment exp = run_homoclinic_experiment(flow, h, 4, 28);

  const ExponentRecovery rec = recover_exponent(exp, exp.t_prime);
  CHECK_FALSE(rec.k_is_zero);
  CHECK(rec.log_mu_hat ==
        doctest::Approx(-flow.base().log_lambda()).epsilon(0.02));
  CHECK(rec.residuals.size() >= 8);
  CHECK(rec.fit_residual < 0.2);
}

TEST_CASE("range validation and convergence gates") {
  const SuspensionFlow flow = flow_cx(0.1);
  const HomoclinicPoint h = homoclinic_point(flow.base(), {1, 0});

  CHECK_THROWS_AS((void)homoclinic_periods(flow, h, 1, 20), std::invalid_argument);
  CHECK_THROWS_AS((void)homoclinic_periods(flow, h, 10, 9), std::invalid_argument);

  const HomoclinicExperiment short_exp = homoclinic_periods(flow, h, 4, 8);
  CHECK_THROWS_AS((void)estimate_T_prime(short_exp), std::invalid_argument);

  HomoclinicExperiment rigged = homoclinic_periods(flow, h, 4, 20);
  rigged.excess.clear();
  for (int n = 4; n <= 20; ++n) {
    rigged.excess[n] = (n % 2 == 0 ? 1.0 : -1.0) * n;
  }
  CHECK_THROWS_AS((void)estimate_T_prime(rigged), NotConverged);
}

TEST_CASE("case classifier covers the rigidity dichotomy") {
  const ToralAutomorphism A = cat();
  const MapOrbit fp = enumerate_periodic_orbits(A, 1).orbits(1).front();
  const FiberWeight one = FiberWeight::constant(1.0);
  const SuspensionFlow flat = make_suspension(A, ScalarField::constant(1.0));

  SUBCASE("vanishing first integral short-circuits") {
    ScalarField odd;
    odd.add_sin(1, 0, 1.0);
    const CaseClassification c = classify_case(
        flat, FiberWeight::fiber_constant(odd), flat, one, fp, 1e-7);
    CHECK(c.label == RigidityCase::integral_zero);
    CHECK_FALSE(c.contradiction);
    CHECK(std::abs(c.integral1) < 1e-12);
  }

  SUBCASE("both cocycles vanish on constant roofs") {
    const CaseClassification c = classify_case(flat, one, flat, one, fp, 1e-7);
    CHECK(c.label == RigidityCase::both_zero);
    CHECK_FALSE(c.contradiction);
  }

  SUBCASE("one-sided vanishing demands the exponent inequality") {
    ScalarField shrink = ScalarField::constant(1.0);
    shrink.add_cos(1, 0, -0.3);  // roof 0.7 at the fixed point
    const SuspensionFlow wavy = make_suspension(A, shrink);

    const CaseClassification ok = classify_case(flat, one, wavy, one, fp, 1e-7);
    CHECK(ok.label == RigidityCase::first_zero);
    CHECK_FALSE(ok.contradiction);
    CHECK(ok.chi1 < ok.chi2);

    const CaseClassification sym = classify_case(wavy, one, flat, one, fp, 1e-7);
    CHECK(sym.label == RigidityCase::second_zero);
    CHECK_FALSE(sym.contradiction);

    ScalarField grow = ScalarField::constant(1.0);
    grow.add_cos(1, 0, 0.3);  // roof 1.3 at the fixed point: chi drops
    const SuspensionFlow tall = make_suspension(A, grow);
    const CaseClassification bad = classify_case(flat, one, tall, one, fp, 1e-7);
    CHECK(bad.label == RigidityCase::first_zero);
    CHECK(bad.contradiction);
  }

  SUBCASE("matching nonzero cocycles demand equal exponents") {
    ScalarField wave = ScalarField::constant(1.0);
    wave.add_cos(1, 0, 0.2);
    const SuspensionFlow w = make_suspension(A, wave);
    const CaseClassification c = classify_case(w, one, w, one, fp, 1e-7);
    CHECK(c.label == RigidityCase::both_nonzero);
    CHECK_FALSE(c.contradiction);
    CHECK(c.k1 == doctest::Approx(c.k2).epsilon(1e-15));

    ScalarField stretched = ScalarField::constant(1.5);
    stretched.add_cos(1, 0, 0.3);
    const SuspensionFlow s = make_suspension(A, stretched);
    const CaseClassification mismatch = classify_case(w, one, s, one, fp, 1e-7);
    CHECK(mismatch.label == RigidityCase::both_nonzero);
    CHECK(mismatch.contradiction);
  }

  SUBCASE("ambiguous magnitudes refuse to classify") {
    ScalarField faint = ScalarField::constant(1.0);
    faint.add_cos(1, 0, 3e-8);  // cocycle lands inside the ambiguity band
    const SuspensionFlow f = make_suspension(A, faint);
    CHECK_THROWS_AS((void)classify_case(f, one, flat, one, fp, 1e-7),
                    ToleranceAmbiguity);
  }

  SUBCASE("input validation") {
    const SuspensionFlow other =
        make_suspension(make_automorphism({1, 1, 1, 2}), ScalarField::constant(1.0));
    CHECK_THROWS_AS((void)classify_case(flat, one, other, one, fp, 1e-7),
                    BaseMismatch);
    CHECK_THROWS_AS((void)classify_case(flat, one, flat, one, fp, 0.0),
                    std::invalid_argument);
  }
}
