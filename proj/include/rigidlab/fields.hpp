#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rigidlab/toral.hpp"

namespace rigidlab {

/// One trigonometric term cos_amp*cos(2π κ·x) + sin_amp*sin(2π κ·x).
struct FieldTerm {
  std::int64_t kx = 0, ky = 0;
  double cos_amp = 0.0, sin_amp = 0.0;

  friend bool operator==(const FieldTerm&, const FieldTerm&) = default;
};

/// Real trigonometric polynomial on the 2-torus.  Terms are kept with
/// canonical frequency sign (kx > 0, or kx = 0 and ky >= 0) and sorted, so
/// equal fields have identical term lists.
class ScalarField {
 public:
  ScalarField() = default;
  static ScalarField constant(double c);
  ScalarField& add_cos(std::int64_t kx, std::int64_t ky, double amp);
  ScalarField& add_sin(std::int64_t kx, std::int64_t ky, double amp);

  double value(Vec2 p) const;
  /// Evaluation at a double-double point; the tail enters through a
  /// first-order trig correction, keeping the result accurate to ~1 ulp.
  double value_dd(const DDVec2& p) const;
  /// value(p + d) - value(p), evaluated in cancellation-free form
  /// (product-to-difference identities), accurate relative to the difference.
  double value_delta(Vec2 p, Vec2 d) const;

  Vec2 gradient(Vec2 p) const;
  double directional_derivative(Vec2 p, Vec2 dir) const;
  /// Hessian entries (xx, xy, yy).
  std::array<double, 3> hessian(Vec2 p) const;
  /// u^T Hess(p) v.
  double mixed_second(Vec2 p, Vec2 u, Vec2 v) const;

  double constant_part() const;
  /// Sum of sqrt(cos² + sin²) over nonzero frequencies: a pointwise bound on
  /// the oscillating part.
  double amplitude_sum() const;
  /// Certified lower bound constant_part() - amplitude_sum().
  double lower_bound() const { return constant_part() - amplitude_sum(); }

  /// The field x ↦ value(Bx); frequencies map through Bᵀ exactly.
  ScalarField pullback(const Mat2i& b) const;

  bool is_zero() const { return terms_.empty(); }
  const std::vector<FieldTerm>& terms() const { return terms_; }

  friend ScalarField operator+(const ScalarField& f, const ScalarField& g);
  friend ScalarField operator-(const ScalarField& f, const ScalarField& g);
  friend ScalarField operator*(double t, const ScalarField& f);
  /// Pointwise product; frequencies combine, so the result stays exact.
  friend ScalarField operator*(const ScalarField& f, const ScalarField& g);
  friend bool operator==(const ScalarField&, const ScalarField&) = default;

  /// One line per term: "cos kx ky amp" / "sin kx ky amp".
  std::string to_text() const;

 private:
  void add_term(std::int64_t kx, std::int64_t ky, double ca, double sa);
  std::vector<FieldTerm> terms_;
};

/// Parses one serialized term line into the field; throws
/// std::invalid_argument with a reason on malformed input.
void add_field_line(ScalarField& field, const std::string& line);

/// Weight on the mapping torus, polynomial in the fiber coordinate:
/// φ(x, s) = Σ_m s^m g_m(x).
class FiberWeight {
 public:
  FiberWeight() = default;
  static FiberWeight constant(double c);
  static FiberWeight fiber_constant(ScalarField g);
  FiberWeight& add_component(int s_power, ScalarField g);

  double value(Vec2 x, double s) const;
  int fiber_degree() const;
  bool is_fiber_constant() const;
  const std::vector<std::pair<int, ScalarField>>& components() const { return comps_; }

  /// b·phi + c·psi.
  static FiberWeight linear_combination(double b, const FiberWeight& phi, double c,
                                        const FiberWeight& psi);

  /// Certified lower bound of the weight over T² × [0, s_max].
  double lower_bound(double s_max) const;

  friend bool operator==(const FiberWeight&, const FiberWeight&) = default;

  /// Term lines, with "spow d" introducing each fiber power block.
  std::string to_text() const;

 private:
  std::vector<std::pair<int, ScalarField>> comps_;  // sorted by power, unique
};

}  // namespace rigidlab
