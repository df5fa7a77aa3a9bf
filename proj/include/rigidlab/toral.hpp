#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "rigidlab/dd.hpp"
#include "rigidlab/int2x2.hpp"

namespace rigidlab {

struct Vec2 {
  double x = 0.0, y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const;
};

struct DDVec2 {
  DD x, y;
  Vec2 to_double() const { return {x.to_double(), y.to_double()}; }
};

/// Exact torus point (num_x/den, num_y/den) with 0 <= num < den, lowest terms.
struct RationalPoint {
  std::int64_t num_x = 0, num_y = 0, den = 1;

  Vec2 to_double() const {
    double d = static_cast<double>(den);
    return {static_cast<double>(num_x) / d, static_cast<double>(num_y) / d};
  }
  RationalPoint reduced() const;
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Hyperbolic automorphism of the 2-torus given by an integer matrix with
/// |det| = 1 and |trace| > 2.
class ToralAutomorphism {
 public:
  const Mat2i& matrix() const { return m_; }
  /// Unstable eigenvalue; |lambda| > 1 and lambda > 1 whenever trace > 2.
  double lambda() const { return lambda_dd_.to_double(); }
  /// Stable eigenvalue det/lambda.
  double lambda_stable() const { return lambda_s_dd_.to_double(); }
  double log_lambda() const { return log_lambda_; }
  /// Unit eigenvectors with positive first coordinate.
  Vec2 e_u() const { return e_u_; }
  Vec2 e_s() const { return e_s_; }

  DD lambda_dd() const { return lambda_dd_; }
  DD lambda_stable_dd() const { return lambda_s_dd_; }
  /// Eigendirection slopes: e_u is parallel to (1, slope_u).
  DD slope_u_dd() const { return slope_u_; }
  DD slope_s_dd() const { return slope_s_; }

  RationalPoint apply(const RationalPoint& p) const;
  Vec2 apply_mod1(Vec2 v) const;
  DDVec2 apply_mod1(const DDVec2& v) const;

  /// Coordinates (a, b) with x = a e_u + b e_s in the unit eigenvector gauge.
  Vec2 to_eigen(Vec2 x) const;
  Vec2 from_eigen(Vec2 ab) const;

  friend ToralAutomorphism make_automorphism(const std::array<std::int64_t, 4>& entries);

 private:
  ToralAutomorphism() = default;

  Mat2i m_;
  DD lambda_dd_, lambda_s_dd_;
  DD slope_u_, slope_s_;
  Vec2 e_u_, e_s_;
  double log_lambda_ = 0.0;
};

/// Validates entries (row-major [[a,b],[c,d]]) and computes eigendata.
ToralAutomorphism make_automorphism(const std::array<std::int64_t, 4>& entries);

/// Periodic orbit of the base map with exact rational points.
struct MapOrbit {
  int prime_period = 1;
  /// Consecutive images under the matrix; the lexicographically smallest
  /// point comes first.
  std::vector<RationalPoint> points;
  /// Unstable multiplier of the k-step return, lambda^k.
  double multiplier = 1.0;

  const RationalPoint& representative() const { return points.front(); }
};

/// Catalog of prime orbits grouped by period: orbits(k) for 1 <= k <= k_max.
class OrbitCatalog {
 public:
  OrbitCatalog(int k_max, std::vector<std::vector<MapOrbit>> groups)
      : k_max_(k_max), groups_(std::move(groups)) {}
  int k_max() const { return k_max_; }
  const std::vector<MapOrbit>& orbits(int k) const { return groups_.at(k - 1); }
  std::int64_t total_orbits() const;
  /// Visits orbits by ascending k, then by representative.
  void for_each(const std::function<void(const MapOrbit&)>& fn) const;

 private:
  int k_max_;
  std::vector<std::vector<MapOrbit>> groups_;
};

/// |det(A^k - I)|, the exact fixed-point count of A^k.
std::int64_t det_fixed_point_count(const ToralAutomorphism& A, int k);

/// Streams every fixed point of A^k in a fixed lattice order; returns the
/// visit count.  Pass a null fn to count only.
std::int64_t for_each_fixed_point(const ToralAutomorphism& A, int k,
                                  const std::function<void(const RationalPoint&)>& fn);

/// Enumerates Fix(A^k), verifying each streamed point is genuinely fixed and
/// that all points are pairwise distinct; returns the verified count.
std::int64_t count_fixed_points_verified(const ToralAutomorphism& A, int k);

/// Streams the prime-period-k orbits in deterministic lattice order (not
/// sorted by representative).  stripe/n_stripes partition the lattice for
/// parallel scans; every orbit is emitted by exactly one stripe regardless of
/// the partition.
void for_each_prime_orbit_stripe(const ToralAutomorphism& A, int k, int stripe,
                                 int n_stripes,
                                 const std::function<void(const MapOrbit&)>& fn);
void for_each_prime_orbit(const ToralAutomorphism& A, int k,
                          const std::function<void(const MapOrbit&)>& fn);

/// Exact enumeration for all prime periods k <= k_max (1 <= k_max <= 24).
OrbitCatalog enumerate_periodic_orbits(const ToralAutomorphism& A, int k_max);

/// Transverse homoclinic point of the origin: alpha and beta solve
/// alpha*u - beta*s = m in the slope-normalized eigenbasis u = (1, slope_u),
/// s = (1, slope_s), and position = alpha*u mod Z^2.
struct HomoclinicPoint {
  std::array<std::int64_t, 2> lattice_shift{1, 0};
  double alpha = 0.0;
  double beta = 0.0;
  Vec2 position;
  DD alpha_dd, beta_dd;
};

HomoclinicPoint homoclinic_point(const ToralAutomorphism& A,
                                 const std::array<std::int64_t, 2>& m);

/// Orbit point A^i h in closed form (forward images decay along e_s, backward
/// along e_u); exact linear dynamics, no iteration error.
DDVec2 homoclinic_orbit_point_dd(const ToralAutomorphism& A, const HomoclinicPoint& h, int i);
Vec2 homoclinic_orbit_point(const ToralAutomorphism& A, const HomoclinicPoint& h, int i);

/// Period-n shadowing orbit of the homoclinic loop, from the closed-form
/// eigenbasis solve of (A^n - I) q = m.
struct ShadowingOrbit {
  int n = 0;
  /// Eigenbasis coefficients of q in the slope-normalized basis:
  /// q = coeff_u*(1, slope_u) + coeff_s*(1, slope_s).
  DD coeff_u, coeff_s;
  /// Orbit points A^i q mod 1 for i = 0..n-1, double-double precision.
  std::vector<DDVec2> points;
  Vec2 q;
  /// Torus distance between A^n q and q measured by iterating the dynamics.
  double residual = 0.0;
};

ShadowingOrbit shadowing_periodic_point(const ToralAutomorphism& A,
                                        const HomoclinicPoint& h, int n);

}  // namespace rigidlab
