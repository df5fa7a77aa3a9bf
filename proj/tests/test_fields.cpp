#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "rigidlab/fields.hpp"
#include "rigidlab/toral.hpp"

using namespace rigidlab;

namespace {
const double kTau = 6.2831853071795865;

ScalarField sample_field() {
  ScalarField f = ScalarField::constant(0.7);
  f.add_cos(1, 0, 0.25).add_sin(2, -1, -0.4).add_cos(0, 3, 0.1);
  return f;
}
}  // namespace

TEST_CASE("scalar field evaluation matches the defining sum") {
  const ScalarField f = sample_field();
  const Vec2 p{0.3, 0.55};
  const double direct = 0.7 + 0.25 * std::cos(kTau * p.x) -
                        0.4 * std::sin(kTau * (2.0 * p.x - p.y)) +
                        0.1 * std::cos(kTau * 3.0 * p.y);
  CHECK(f.value(p) == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("frequencies are canonicalized so equal fields compare equal") {
  ScalarField a, b;
  a.add_cos(-1, 2, 0.5);
  b.add_cos(1, -2, 0.5);
  CHECK(a == b);

  ScalarField c, d;
  c.add_sin(-1, 2, 0.5);
  d.add_sin(1, -2, -0.5);
  CHECK(c == d);

  ScalarField e;
  e.add_cos(1, 1, 0.3);
  e.add_cos(1, 1, -0.3);
  CHECK(e.is_zero());
}

TEST_CASE("derivatives agree with central differences") {
  const ScalarField f = sample_field();
  const Vec2 p{0.12, 0.77};
  const double h = 1e-6;

  const Vec2 g = f.gradient(p);
  CHECK(g.x == doctest::Approx((f.value({p.x + h, p.y}) - f.value({p.x - h, p.y})) /
                               (2 * h))
                   .epsilon(1e-6));
  CHECK(g.y == doctest::Approx((f.value({p.x, p.y + h}) - f.value({p.x, p.y - h})) /
                               (2 * h))
                   .epsilon(1e-6));

  const auto hess = f.hessian(p);
  const double fxx =
      (f.value({p.x + h, p.y}) - 2 * f.value(p) + f.value({p.x - h, p.y})) / (h * h);
  const double fyy =
      (f.value({p.x, p.y + h}) - 2 * f.value(p) + f.value({p.x, p.y - h})) / (h * h);
  const double fxy = (f.value({p.x + h, p.y + h}) - f.value({p.x + h, p.y - h}) -
                      f.value({p.x - h, p.y + h}) + f.value({p.x - h, p.y - h})) /
                     (4 * h * h);
  CHECK(hess[0] == doctest::Approx(fxx).epsilon(1e-4));
  CHECK(hess[1] == doctest::Approx(fxy).epsilon(1e-4));
  CHECK(hess[2] == doctest::Approx(fyy).epsilon(1e-4));

  const Vec2 u{0.6, -0.8}, v{0.28, 0.96};
  const double quad = hess[0] * u.x * v.x + hess[1] * (u.x * v.y + u.y * v.x) +
                      hess[2] * u.y * v.y;
  CHECK(f.mixed_second(p, u, v) == doctest::Approx(quad).epsilon(1e-12));
  CHECK(f.directional_derivative(p, u) ==
        doctest::Approx(g.x * u.x + g.y * u.y).epsilon(1e-12));
}

TEST_CASE("value_delta is accurate relative to the difference itself") {
  const ScalarField f = sample_field();
  const Vec2 p{0.41, 0.09};

  SUBCASE("tiny displacement tracks the gradient") {
    const Vec2 d{3e-9, -2e-9};
    const double delta = f.value_delta(p, d);
    const Vec2 g = f.gradient(p);
    CHECK(delta == doctest::Approx(g.x * d.x + g.y * d.y).epsilon(1e-7));
  }

  SUBCASE("large displacement matches direct subtraction") {
    const Vec2 d{0.31, 0.18};
    const double delta = f.value_delta(p, d);
    const double direct = f.value({p.x + d.x, p.y + d.y}) - f.value(p);
    CHECK(delta == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("value_dd refines the double evaluation") {
  const ScalarField f = sample_field();
  const DDVec2 p{DD(0.3, 4e-18), DD(0.55, -7e-18)};
  const double coarse = f.value(p.to_double());
  const double fine = f.value_dd(p);
  CHECK(fine == doctest::Approx(coarse).epsilon(1e-14));

  const Vec2 g = f.gradient(p.to_double());
  const double predicted = coarse + g.x * 4e-18 + g.y * (-7e-18);
  CHECK(fine == doctest::Approx(predicted).epsilon(1e-15));
}

TEST_CASE("pullback composes with the matrix action") {
  const ScalarField f = sample_field();
  const Mat2i b{2, 1, 1, 1};
  const ScalarField g = f.pullback(b);
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 x{unit(rng), unit(rng)};
    const Vec2 bx{2.0 * x.x + 1.0 * x.y, 1.0 * x.x + 1.0 * x.y};
    CHECK(g.value(x) == doctest::Approx(f.value(bx)).epsilon(1e-13));
  }
}

TEST_CASE("products expand exactly into combined frequencies") {
  ScalarField c1;
  c1.add_cos(1, 0, 1.0);
  const ScalarField sq = c1 * c1;
  CHECK(sq.constant_part() == doctest::Approx(0.5).epsilon(1e-16));
  REQUIRE(sq.terms().size() == 2);  // constant and cos(2x)

  const Vec2 p{0.234, 0.0};
  CHECK(sq.value(p) == doctest::Approx(c1.value(p) * c1.value(p)).epsilon(1e-14));

  const ScalarField f = sample_field();
  const ScalarField g = ScalarField::constant(0.2).add_sin(1, 1, 0.6);
  const ScalarField prod = f * g;
  const Vec2 q{0.81, 0.37};
  CHECK(prod.value(q) == doctest::Approx(f.value(q) * g.value(q)).epsilon(1e-13));
}

TEST_CASE("amplitude bounds are certified") {
  ScalarField f = ScalarField::constant(1.0);
  f.add_cos(1, 0, 0.06).add_sin(1, 0, 0.08);  // one frequency, amplitude 0.1
  CHECK(f.amplitude_sum() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(f.lower_bound() == doctest::Approx(0.9).epsilon(1e-15));

  double observed_min = 2.0;
  for (int i = 0; i < 400; ++i) {
    observed_min = std::min(observed_min, f.value({i / 400.0, 0.0}));
  }
  CHECK(f.lower_bound() <= observed_min + 1e-12);
  CHECK(f.lower_bound() >= observed_min - 1e-4);
}

TEST_CASE("serialization round-trips through the line parser") {
  const ScalarField f = sample_field();
  ScalarField back;
  std::string text = f.to_text();
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t stop = text.find('\n', start);
    add_field_line(back, text.substr(start, stop - start));
    start = stop == std::string::npos ? text.size() : stop + 1;
  }
  CHECK(back == f);

  ScalarField sink;
  CHECK_THROWS_AS(add_field_line(sink, "cos 1"), std::invalid_argument);
  CHECK_THROWS_AS(add_field_line(sink, "tan 1 0 1"), std::invalid_argument);
  CHECK_THROWS_AS(add_field_line(sink, "cos 1 0 1 junk"), std::invalid_argument);
  CHECK_THROWS_AS(add_field_line(sink, "cos x 0 1"), std::invalid_argument);
}

TEST_CASE("fiber weights evaluate as polynomials in the height") {
  FiberWeight w = FiberWeight::constant(1.0);
  ScalarField lin;
  lin.add_cos(1, 0, 0.5);
  w.add_component(1, lin);
  ScalarField quad = ScalarField::constant(-0.25);
  w.add_component(2, quad);

  const Vec2 x{0.2, 0.9};
  const double s = 1.7;
  const double direct =
      1.0 + s * 0.5 * std::cos(kTau * x.x) + s * s * (-0.25);
  CHECK(w.value(x, s) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(w.fiber_degree() == 2);
  CHECK_FALSE(w.is_fiber_constant());
  CHECK(FiberWeight::constant(3.0).is_fiber_constant());
}

TEST_CASE("fiber weight lower bounds cover the whole height range") {
  FiberWeight w = FiberWeight::constant(1.0);
  ScalarField lin;
  lin.add_cos(1, 0, -0.3);
  w.add_component(1, lin);

  const double lb = w.lower_bound(2.0);
  double observed = 100.0;
  for (int i = 0; i < 60; ++i) {
    for (int j = 0; j <= 20; ++j) {
      observed = std::min(observed, w.value({i / 60.0, 0.0}, 2.0 * j / 20.0));
    }
  }
  CHECK(lb <= observed + 1e-12);
  CHECK(lb >= 0.35);  // 1 - 0.3 * 2 = 0.4 up to bound slack
}

TEST_CASE("linear combinations of weights evaluate pointwise") {
  const FiberWeight a = FiberWeight::fiber_constant(sample_field());
  FiberWeight b = FiberWeight::constant(0.5);
  ScalarField g;
  g.add_sin(0, 1, 0.9);
  b.add_component(1, g);

  const FiberWeight combo = FiberWeight::linear_combination(0.7, a, -1.3, b);
  const Vec2 x{0.66, 0.14};
  const double s = 0.8;
  CHECK(combo.value(x, s) ==
        doctest::Approx(0.7 * a.value(x, s) - 1.3 * b.value(x, s)).epsilon(1e-14));
}
