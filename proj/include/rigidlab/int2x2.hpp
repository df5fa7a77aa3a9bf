#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rigidlab/errors.hpp"

namespace rigidlab {

namespace detail {

inline std::int64_t checked_i64(__int128 v, const char* what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN)) {
    throw Overflow(std::string(what) + " exceeds the exact 64-bit integer range");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// 2x2 integer matrix [[a, b], [c, d]] with overflow-checked arithmetic.
struct Mat2i {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static Mat2i identity() { return Mat2i{}; }

  friend Mat2i operator*(const Mat2i& x, const Mat2i& y) {
    auto mul = [](std::int64_t p, std::int64_t q) {
      return static_cast<__int128>(p) * q;
    };
    return Mat2i{
        detail::checked_i64(mul(x.a, y.a) + mul(x.b, y.c), "matrix product"),
        detail::checked_i64(mul(x.a, y.b) + mul(x.b, y.d), "matrix product"),
        detail::checked_i64(mul(x.c, y.a) + mul(x.d, y.c), "matrix product"),
        detail::checked_i64(mul(x.c, y.b) + mul(x.d, y.d), "matrix product"),
    };
  }

  friend bool operator==(const Mat2i&, const Mat2i&) = default;

  Mat2i pow(int k) const {
    Mat2i r = identity();
    Mat2i base = *this;
    for (int e = k; e > 0; e >>= 1) {
      if (e & 1) r = r * base;
      if (e > 1) base = base * base;
    }
    return r;
  }

  std::int64_t det() const {
    __int128 v = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
    return detail::checked_i64(v, "determinant");
  }

  std::int64_t trace() const {
    return detail::checked_i64(static_cast<__int128>(a) + d, "trace");
  }

  Mat2i sub_identity() const { return Mat2i{a - 1, b, c, d - 1}; }
};

/// Smith-type diagonalization of M restricted to what lattice enumeration
/// needs: positive d1 | d2 with d1*d2 = |det M| and a unimodular V such that
/// U·M·V = diag(d1, d2) for some (untracked) unimodular U.  Points x with
/// M·x integral are then exactly x = V·(i/d1, j/d2) mod 1.
struct SmithForm {
  std::int64_t d1 = 1, d2 = 1;
  Mat2i v = Mat2i::identity();
};

SmithForm smith_form(Mat2i m);

}  // namespace rigidlab
