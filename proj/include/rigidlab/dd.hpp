#pragma once

#include <cmath>
#include <cstdint>

namespace rigidlab {

/// Double-double number: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
/// Carries roughly 106 bits of mantissa, enough to track orbits through
/// ~48 hyperbolic doubling steps before rounding reaches 1e-12.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
  explicit operator double() const { return hi + lo; }
};

namespace detail {

inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  return DD{s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  double s = a + b;
  double v = s - a;
  return DD{s, (a - (s - v)) + (b - v)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return DD{p, std::fma(a, b, -p)};
}

}  // namespace detail

inline DD operator+(DD a, DD b) {
  DD s = detail::two_sum(a.hi, b.hi);
  DD t = detail::two_sum(a.lo, b.lo);
  double lo = s.lo + t.hi;
  DD r = detail::quick_two_sum(s.hi, lo);
  lo = r.lo + t.lo;
  return detail::quick_two_sum(r.hi, lo);
}

inline DD operator-(DD a) { return DD{-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  DD p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = a - DD(q1) * b;
  double q2 = r.hi / b.hi;
  r = r - DD(q2) * b;
  double q3 = r.hi / b.hi;
  DD q = detail::quick_two_sum(q1, q2);
  return q + DD(q3);
}

inline DD operator+(DD a, double b) { return a + DD(b); }
inline DD operator+(double a, DD b) { return DD(a) + b; }
inline DD operator-(DD a, double b) { return a - DD(b); }
inline DD operator-(double a, DD b) { return DD(a) - b; }
inline DD operator*(DD a, double b) { return a * DD(b); }
inline DD operator*(double a, DD b) { return DD(a) * b; }
inline DD operator/(DD a, double b) { return a / DD(b); }
inline DD operator/(double a, DD b) { return DD(a) / b; }

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }

inline DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

/// sqrt via one double-double Newton step from the double seed.
inline DD dd_sqrt(DD a) {
  if (a.hi == 0.0) return DD{0.0, 0.0};
  double x = std::sqrt(a.hi);
  DD y{x, 0.0};
  y = DD(0.5) * (y + a / y);
  y = DD(0.5) * (y + a / y);
  return y;
}

/// Integer power by binary exponentiation; n may be negative.
inline DD dd_pow_int(DD a, long n) {
  if (n < 0) return DD(1.0) / dd_pow_int(a, -n);
  DD r{1.0, 0.0};
  DD base = a;
  unsigned long e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1UL) r = r * base;
    base = base * base;
    e >>= 1UL;
  }
  return r;
}

/// Largest integer <= a, exact.
inline DD dd_floor(DD a) {
  double f = std::floor(a.hi);
  if (f != a.hi) return DD{f, 0.0};
  return detail::quick_two_sum(f, std::floor(a.lo));
}

/// Fractional part in [0, 1).
inline DD dd_mod1(DD a) {
  DD r = a - dd_floor(a);
  if (r.hi >= 1.0) r = r - DD(1.0);
  if (r.hi < 0.0) r = r + DD(1.0);
  return r;
}

/// Distance to the nearest integer, as a double.
inline double dd_dist_to_integer(DD a) {
  DD f = dd_mod1(a);
  double d = f.to_double();
  return d <= 0.5 ? d : 1.0 - d;
}

}  // namespace rigidlab
