#pragma once

#include <array>
#include <vector>

namespace rigidlab {

/// Bivariate polynomial truncated at a fixed total degree.
class Jet2 {
 public:
  Jet2() : Jet2(3) {}
  explicit Jet2(int degree);

  int degree() const { return deg_; }
  double at(int i, int j) const;
  void set(int i, int j, double c);
  void add(int i, int j, double c);

  double eval(double x, double y) const;

  Jet2 operator+(const Jet2& o) const;
  Jet2 operator-(const Jet2& o) const;
  Jet2 scaled(double t) const;
  /// Product truncated at the common degree.
  Jet2 operator*(const Jet2& o) const;
  /// Largest |coefficient| difference.
  double max_coeff_diff(const Jet2& o) const;
  double max_abs_coeff() const;

  static Jet2 variable_x(int degree);
  static Jet2 variable_y(int degree);

 private:
  int deg_;
  std::vector<double> c_;  // index i*(deg+1)+j, zero whenever i+j > deg
};

/// Pair of jets as a truncated planar map fixing the origin.
struct JetMap {
  Jet2 f1, f2;

  int degree() const { return f1.degree(); }
  static JetMap identity(int degree);
  /// Linear part entries (∂f/∂(x,y) at 0), row-major.
  std::array<double, 4> linear_part() const;
  double max_coeff_diff(const JetMap& o) const;
};

/// f ∘ g truncated.
JetMap compose(const JetMap& f, const JetMap& g);
Jet2 substitute(const Jet2& f, const JetMap& g);

/// Inverse of a map with invertible linear part, as a truncated jet;
/// compose(f, inverse(f)) = identity up to the truncation degree.
JetMap jet_inverse(const JetMap& f);

/// Hyperbolic area-preserving jet: contracting eigenvalue mu ∈ (0,1).
struct PlanarJet {
  JetMap map;
  double mu = 0.0;
};

/// Validates the fixed point, unit determinant, and the real hyperbolic
/// eigenvalue pair; computes mu.
PlanarJet make_planar_jet(JetMap map);

struct MoserResult {
  PlanarJet normal;
  JetMap change;  ///< accumulated coordinate change Ψ with normal = Ψ⁻¹∘F∘Ψ
};

/// Normal form of a hyperbolic area-preserving jet near the saddle: after a
/// det-1 linear diagonalization, quadratic terms are removed, both invariant
/// axes are straightened, and the axis restrictions are linearized, leaving
/// (beyond the linear part) only coefficients on monomials divisible by xy.
MoserResult moser_normal_form(const PlanarJet& jet);

}  // namespace rigidlab
