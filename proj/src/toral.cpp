#include "rigidlab/toral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rigidlab/errors.hpp"

namespace rigidlab {

namespace {

using i128 = __int128;

std::int64_t sub_mul_checked(std::int64_t x, std::int64_t q, std::int64_t y) {
  return detail::checked_i64(static_cast<i128>(x) - static_cast<i128>(q) * y,
                             "smith form coefficient");
}

DD dd_from_i128(i128 v) {
  double hi = static_cast<double>(v);
  double lo = static_cast<double>(v - static_cast<i128>(hi));
  return DD(hi) + DD(lo);
}

std::int64_t pos_mod(i128 v, std::int64_t n) {
  i128 r = v % n;
  if (r < 0) r += n;
  return static_cast<std::int64_t>(r);
}

}  // namespace

double Vec2::norm() const { return std::hypot(x, y); }

RationalPoint RationalPoint::reduced() const {
  std::int64_t g = std::gcd(std::gcd(num_x, num_y), den);
  if (g <= 1) return *this;
  return {num_x / g, num_y / g, den / g};
}

SmithForm smith_form(Mat2i m) {
  const std::int64_t det0 = detail::checked_i64(m.det(), "smith form determinant");
  if (det0 == 0) throw std::invalid_argument("smith_form: singular matrix");
  Mat2i v = Mat2i::identity();

  auto col_swap = [&] {
    std::swap(m.a, m.b);
    std::swap(m.c, m.d);
    std::swap(v.a, v.b);
    std::swap(v.c, v.d);
  };
  // col2 -= q * col1; clearing entry b this way keeps |pivot a| monotone.
  auto col2_sub = [&](std::int64_t q) {
    m.b = sub_mul_checked(m.b, q, m.a);
    m.d = sub_mul_checked(m.d, q, m.c);
    v.b = sub_mul_checked(v.b, q, v.a);
    v.d = sub_mul_checked(v.d, q, v.c);
  };
  // row2 -= q * row1 (left multiplication, V untouched)
  auto row2_sub = [&](std::int64_t q) {
    m.c = sub_mul_checked(m.c, q, m.a);
    m.d = sub_mul_checked(m.d, q, m.b);
  };
  auto row_swap = [&] {
    std::swap(m.a, m.c);
    std::swap(m.b, m.d);
  };

  for (int round = 0; round < 512; ++round) {
    while (m.b != 0) {
      if (m.a == 0) {
        col_swap();
        continue;
      }
      col2_sub(m.b / m.a);
      if (m.b != 0) col_swap();
    }
    while (m.c != 0) {
      if (m.a == 0) {
        row_swap();
        continue;
      }
      row2_sub(m.c / m.a);
      if (m.c != 0) row_swap();
    }
    if (m.b == 0 && m.c == 0) {
      std::int64_t d1 = std::abs(m.a), d2 = std::abs(m.d);
      if (d1 != 0 && d2 % d1 == 0) {
        SmithForm out{d1, d2, v};
        if (static_cast<i128>(d1) * d2 != (det0 < 0 ? -static_cast<i128>(det0)
                                                    : static_cast<i128>(det0)) ||
            std::abs(detail::checked_i64(v.det(), "smith form V det")) != 1) {
          throw std::logic_error("smith_form: internal consistency check failed");
        }
        return out;
      }
      // Force d1 | d2: add column 2 to column 1 and reduce again.
      m.a = detail::checked_i64(static_cast<i128>(m.a) + m.b, "smith form");
      m.c = detail::checked_i64(static_cast<i128>(m.c) + m.d, "smith form");
      v.a = detail::checked_i64(static_cast<i128>(v.a) + v.b, "smith form");
      v.c = detail::checked_i64(static_cast<i128>(v.c) + v.d, "smith form");
    }
  }
  throw std::logic_error("smith_form: reduction did not terminate");
}

ToralAutomorphism make_automorphism(const std::array<std::int64_t, 4>& entries) {
  Mat2i m{entries[0], entries[1], entries[2], entries[3]};
  const std::int64_t det = detail::checked_i64(m.det(), "determinant");
  if (det != 1 && det != -1) {
    throw NotUnimodular("determinant must be +1 or -1, got " + std::to_string(det));
  }
  const std::int64_t tr = m.trace();
  if (std::abs(tr) <= 2) {
    throw NotHyperbolic("|trace| must exceed 2, got " + std::to_string(tr));
  }

  ToralAutomorphism A;
  A.m_ = m;
  const i128 disc = static_cast<i128>(tr) * tr - static_cast<i128>(4) * det;
  const DD sqrt_disc = dd_sqrt(dd_from_i128(disc));
  A.lambda_dd_ = tr > 0 ? (DD(static_cast<double>(tr)) + sqrt_disc) * DD(0.5)
                        : (DD(static_cast<double>(tr)) - sqrt_disc) * DD(0.5);
  A.lambda_s_dd_ = DD(static_cast<double>(det)) / A.lambda_dd_;
  A.log_lambda_ = std::log(std::abs(A.lambda_dd_.to_double()));

  // b = 0 would force a, d = ±1 and |trace| <= 2, excluded above.
  const DD b(static_cast<double>(m.b));
  A.slope_u_ = (A.lambda_dd_ - DD(static_cast<double>(m.a))) / b;
  A.slope_s_ = (A.lambda_s_dd_ - DD(static_cast<double>(m.a))) / b;

  const double gu = A.slope_u_.to_double();
  const double gs = A.slope_s_.to_double();
  const double nu = std::hypot(1.0, gu), ns = std::hypot(1.0, gs);
  A.e_u_ = {1.0 / nu, gu / nu};
  A.e_s_ = {1.0 / ns, gs / ns};
  return A;
}

RationalPoint ToralAutomorphism::apply(const RationalPoint& p) const {
  const std::int64_t d = p.den;
  std::int64_t nx = pos_mod(static_cast<i128>(m_.a) * p.num_x + static_cast<i128>(m_.b) * p.num_y, d);
  std::int64_t ny = pos_mod(static_cast<i128>(m_.c) * p.num_x + static_cast<i128>(m_.d) * p.num_y, d);
  return RationalPoint{nx, ny, d}.reduced();
}

Vec2 ToralAutomorphism::apply_mod1(Vec2 v) const {
  double x = static_cast<double>(m_.a) * v.x + static_cast<double>(m_.b) * v.y;
  double y = static_cast<double>(m_.c) * v.x + static_cast<double>(m_.d) * v.y;
  x -= std::floor(x);
  y -= std::floor(y);
  if (x >= 1.0) x = 0.0;
  if (y >= 1.0) y = 0.0;
  return {x, y};
}

DDVec2 ToralAutomorphism::apply_mod1(const DDVec2& v) const {
  DD x = v.x * static_cast<double>(m_.a) + v.y * static_cast<double>(m_.b);
  DD y = v.x * static_cast<double>(m_.c) + v.y * static_cast<double>(m_.d);
  return {dd_mod1(x), dd_mod1(y)};
}

Vec2 ToralAutomorphism::to_eigen(Vec2 x) const {
  const double det = e_u_.x * e_s_.y - e_s_.x * e_u_.y;
  return {(x.x * e_s_.y - e_s_.x * x.y) / det, (e_u_.x * x.y - x.x * e_u_.y) / det};
}

Vec2 ToralAutomorphism::from_eigen(Vec2 ab) const {
  return ab.x * e_u_ + ab.y * e_s_;
}

std::int64_t OrbitCatalog::total_orbits() const {
  std::int64_t n = 0;
  for (const auto& g : groups_) n += static_cast<std::int64_t>(g.size());
  return n;
}

void OrbitCatalog::for_each(const std::function<void(const MapOrbit&)>& fn) const {
  for (const auto& g : groups_)
    for (const auto& orb : g) fn(orb);
}

namespace {

constexpr int kMaxPeriod = 24;

void check_period_range(int k) {
  if (k < 1) throw std::invalid_argument("period must be >= 1");
  if (k > kMaxPeriod) {
    throw Overflow("period " + std::to_string(k) + " outside the exact enumeration range [1, " +
                   std::to_string(kMaxPeriod) + "]");
  }
}

struct LatticeGrid {
  Mat2i a;       // base matrix
  Mat2i m;       // A^k - I
  SmithForm snf;
  std::int64_t n;  // d1 * d2 = |Fix(A^k)|

  std::pair<std::int64_t, std::int64_t> point(std::int64_t i, std::int64_t j) const {
    const auto& v = snf.v;
    std::int64_t nx = pos_mod(static_cast<i128>(v.a) * i * snf.d2 + static_cast<i128>(v.b) * j * snf.d1, n);
    std::int64_t ny = pos_mod(static_cast<i128>(v.c) * i * snf.d2 + static_cast<i128>(v.d) * j * snf.d1, n);
    return {nx, ny};
  }
  std::pair<std::int64_t, std::int64_t> step(std::pair<std::int64_t, std::int64_t> p) const {
    return {pos_mod(static_cast<i128>(a.a) * p.first + static_cast<i128>(a.b) * p.second, n),
            pos_mod(static_cast<i128>(a.c) * p.first + static_cast<i128>(a.d) * p.second, n)};
  }
  bool fixed_by_power(std::pair<std::int64_t, std::int64_t> p) const {
    // (A^k - I) p ≡ 0 mod n, i.e. M p ≡ 0.
    return pos_mod(static_cast<i128>(m.a) * p.first + static_cast<i128>(m.b) * p.second, n) == 0 &&
           pos_mod(static_cast<i128>(m.c) * p.first + static_cast<i128>(m.d) * p.second, n) == 0;
  }
};

LatticeGrid make_grid(const ToralAutomorphism& A, int k) {
  check_period_range(k);
  Mat2i mk = A.matrix().pow(k).sub_identity();
  SmithForm s = smith_form(mk);
  std::int64_t n = detail::checked_i64(static_cast<i128>(s.d1) * s.d2, "fixed point count");
  return {A.matrix(), mk, s, n};
}

}  // namespace

std::int64_t det_fixed_point_count(const ToralAutomorphism& A, int k) {
  check_period_range(k);
  i128 d = A.matrix().pow(k).sub_identity().det();
  if (d < 0) d = -d;
  return detail::checked_i64(d, "fixed point count");
}

std::int64_t for_each_fixed_point(const ToralAutomorphism& A, int k,
                                  const std::function<void(const RationalPoint&)>& fn) {
  LatticeGrid g = make_grid(A, k);
  std::int64_t visited = 0;
  for (std::int64_t j = 0; j < g.snf.d2; ++j) {
    for (std::int64_t i = 0; i < g.snf.d1; ++i) {
      auto p = g.point(i, j);
      ++visited;
      if (fn) fn(RationalPoint{p.first, p.second, g.n}.reduced());
    }
  }
  return visited;
}

std::int64_t count_fixed_points_verified(const ToralAutomorphism& A, int k) {
  LatticeGrid g = make_grid(A, k);
  std::vector<i128> keys;
  keys.reserve(static_cast<std::size_t>(g.n));
  for (std::int64_t j = 0; j < g.snf.d2; ++j) {
    for (std::int64_t i = 0; i < g.snf.d1; ++i) {
      auto p = g.point(i, j);
      if (!g.fixed_by_power(p)) {
        throw std::logic_error("enumerated lattice point not fixed by the matrix power");
      }
      keys.push_back(static_cast<i128>(p.first) * g.n + p.second);
    }
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw std::logic_error("enumerated lattice points are not pairwise distinct");
  }
  return static_cast<std::int64_t>(keys.size());
}

void for_each_prime_orbit_stripe(const ToralAutomorphism& A, int k, int stripe,
                                 int n_stripes,
                                 const std::function<void(const MapOrbit&)>& fn) {
  if (n_stripes < 1 || stripe < 0 || stripe >= n_stripes) {
    throw std::invalid_argument("invalid stripe partition");
  }
  LatticeGrid g = make_grid(A, k);
  const std::int64_t j_lo = g.snf.d2 * stripe / n_stripes;
  const std::int64_t j_hi = g.snf.d2 * (stripe + 1) / n_stripes;
  const double mult = dd_pow_int(A.lambda_dd(), k).to_double();

  std::array<std::pair<std::int64_t, std::int64_t>, kMaxPeriod> walk{};
  for (std::int64_t j = j_lo; j < j_hi; ++j) {
    for (std::int64_t i = 0; i < g.snf.d1; ++i) {
      auto start = g.point(i, j);
      auto cur = start;
      for (int t = 0; t < k; ++t) {
        walk[static_cast<std::size_t>(t)] = cur;
        cur = g.step(cur);
      }
      if (cur != start) {
        throw std::logic_error("lattice point does not return after k steps");
      }
      int prime = k;
      for (int t = 1; t < k; ++t) {
        if (walk[static_cast<std::size_t>(t)] == start) {
          prime = t;
          break;
        }
      }
      if (prime != k) continue;  // belongs to a smaller period
      bool is_min = true;
      for (int t = 1; t < k; ++t) {
        if (walk[static_cast<std::size_t>(t)] < start) {
          is_min = false;
          break;
        }
      }
      if (!is_min) continue;  // emitted at its lex-min point instead

      MapOrbit orbit;
      orbit.prime_period = k;
      orbit.multiplier = mult;
      orbit.points.reserve(static_cast<std::size_t>(k));
      for (int t = 0; t < k; ++t) {
        const auto& p = walk[static_cast<std::size_t>(t)];
        orbit.points.push_back(RationalPoint{p.first, p.second, g.n}.reduced());
      }
      fn(orbit);
    }
  }
}

void for_each_prime_orbit(const ToralAutomorphism& A, int k,
                          const std::function<void(const MapOrbit&)>& fn) {
  for_each_prime_orbit_stripe(A, k, 0, 1, fn);
}

namespace {

bool rational_less(const RationalPoint& p, const RationalPoint& q) {
  i128 lx = static_cast<i128>(p.num_x) * q.den, rx = static_cast<i128>(q.num_x) * p.den;
  if (lx != rx) return lx < rx;
  i128 ly = static_cast<i128>(p.num_y) * q.den, ry = static_cast<i128>(q.num_y) * p.den;
  return ly < ry;
}

}  // namespace

OrbitCatalog enumerate_periodic_orbits(const ToralAutomorphism& A, int k_max) {
  check_period_range(k_max);
  std::vector<std::vector<MapOrbit>> groups;
  groups.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    std::vector<MapOrbit> orbits;
    for_each_prime_orbit(A, k, [&](const MapOrbit& o) { orbits.push_back(o); });
    std::sort(orbits.begin(), orbits.end(), [](const MapOrbit& a, const MapOrbit& b) {
      return rational_less(a.representative(), b.representative());
    });
    groups.push_back(std::move(orbits));
  }
  return OrbitCatalog(k_max, std::move(groups));
}

HomoclinicPoint homoclinic_point(const ToralAutomorphism& A,
                                 const std::array<std::int64_t, 2>& m) {
  if (m[0] == 0 && m[1] == 0) {
    throw std::invalid_argument("homoclinic lattice shift must be nonzero");
  }
  const DD m1(static_cast<double>(m[0])), m2(static_cast<double>(m[1]));
  const DD gu = A.slope_u_dd(), gs = A.slope_s_dd();
  // alpha*(1,gu) - beta*(1,gs) = m  =>  alpha - beta = m1, alpha*gu - beta*gs = m2.
  const DD alpha = (m2 - m1 * gs) / (gu - gs);
  const DD beta = alpha - m1;

  HomoclinicPoint h;
  h.lattice_shift = m;
  h.alpha_dd = alpha;
  h.beta_dd = beta;
  h.alpha = alpha.to_double();
  h.beta = beta.to_double();
  DD px = dd_mod1(alpha);
  DD py = dd_mod1(alpha * gu);
  h.position = {px.to_double(), py.to_double()};
  return h;
}

DDVec2 homoclinic_orbit_point_dd(const ToralAutomorphism& A, const HomoclinicPoint& h,
                                 int i) {
  if (i >= 0) {
    const DD c = h.beta_dd * dd_pow_int(A.lambda_stable_dd(), i);
    return {dd_mod1(c), dd_mod1(c * A.slope_s_dd())};
  }
  const DD c = h.alpha_dd * dd_pow_int(A.lambda_dd(), i);
  return {dd_mod1(c), dd_mod1(c * A.slope_u_dd())};
}

Vec2 homoclinic_orbit_point(const ToralAutomorphism& A, const HomoclinicPoint& h, int i) {
  return homoclinic_orbit_point_dd(A, h, i).to_double();
}

ShadowingOrbit shadowing_periodic_point(const ToralAutomorphism& A,
                                        const HomoclinicPoint& h, int n) {
  if (n < 2) throw std::invalid_argument("shadowing order must be >= 2");
  // lambda^n must stay well inside the double-double headroom (~1e32 * 1e-12).
  if (static_cast<double>(n) * A.log_lambda() > std::log(1.2e20)) {
    throw PrecisionLoss("lambda^n exceeds the double-double safe range at n = " +
                        std::to_string(n));
  }

  const DD lam = A.lambda_dd(), lam_s = A.lambda_stable_dd();
  const DD lam_n = dd_pow_int(lam, n);
  ShadowingOrbit out;
  out.n = n;
  out.coeff_u = h.alpha_dd / (lam_n - DD(1.0));
  out.coeff_s = h.beta_dd / (DD(1.0) - dd_pow_int(lam_s, n));

  const DD gu = A.slope_u_dd(), gs = A.slope_s_dd();
  out.points.reserve(static_cast<std::size_t>(n));
  DD cu = out.coeff_u, cs = out.coeff_s;
  for (int i = 0; i < n; ++i) {
    DD x = cu + cs;
    DD y = cu * gu + cs * gs;
    out.points.push_back({dd_mod1(x), dd_mod1(y)});
    cu = cu * lam;
    cs = cs * lam_s;
  }
  out.q = out.points.front().to_double();

  DDVec2 z = out.points.front();
  for (int i = 0; i < n; ++i) z = A.apply_mod1(z);
  const DD dx = z.x - out.points.front().x;
  const DD dy = z.y - out.points.front().y;
  out.residual = std::hypot(dd_dist_to_integer(dx), dd_dist_to_integer(dy));
  return out;
}

}  // namespace rigidlab
