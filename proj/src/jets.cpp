#include "rigidlab/jets.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace rigidlab {

Jet2::Jet2(int degree) : deg_(degree) {
  if (degree < 1 || degree > 16) {
    throw std::invalid_argument("jet degree out of range [1, 16]");
  }
  c_.assign(static_cast<std::size_t>((degree + 1) * (degree + 1)), 0.0);
}

double Jet2::at(int i, int j) const {
  if (i < 0 || j < 0 || i + j > deg_) return 0.0;
  return c_[static_cast<std::size_t>(i * (deg_ + 1) + j)];
}

void Jet2::set(int i, int j, double c) {
  if (i < 0 || j < 0 || i + j > deg_) {
    throw std::invalid_argument("jet monomial outside truncation degree");
  }
  c_[static_cast<std::size_t>(i * (deg_ + 1) + j)] = c;
}

void Jet2::add(int i, int j, double c) { set(i, j, at(i, j) + c); }

double Jet2::eval(double x, double y) const {
  double s = 0.0;
  for (int i = deg_; i >= 0; --i) {
    double row = 0.0;
    for (int j = deg_ - i; j >= 0; --j) row = row * y + at(i, j);
    s = s * x + row;
  }
  return s;
}

Jet2 Jet2::operator+(const Jet2& o) const {
  Jet2 r(deg_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Jet2 Jet2::operator-(const Jet2& o) const {
  Jet2 r(deg_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Jet2 Jet2::scaled(double t) const {
  Jet2 r(deg_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = t * c_[i];
  return r;
}

Jet2 Jet2::operator*(const Jet2& o) const {
  Jet2 r(deg_);
  for (int i1 = 0; i1 <= deg_; ++i1) {
    for (int j1 = 0; i1 + j1 <= deg_; ++j1) {
      const double a = at(i1, j1);
      if (a == 0.0) continue;
      for (int i2 = 0; i1 + i2 <= deg_; ++i2) {
        for (int j2 = 0; i1 + j1 + i2 + j2 <= deg_; ++j2) {
          const double b = o.at(i2, j2);
          if (b != 0.0) r.add(i1 + i2, j1 + j2, a * b);
        }
      }
    }
  }
  return r;
}

double Jet2::max_coeff_diff(const Jet2& o) const {
  double m = 0.0;
  for (int i = 0; i <= deg_; ++i)
    for (int j = 0; i + j <= deg_; ++j) m = std::max(m, std::abs(at(i, j) - o.at(i, j)));
  return m;
}

double Jet2::max_abs_coeff() const {
  double m = 0.0;
  for (int i = 0; i <= deg_; ++i)
    for (int j = 0; i + j <= deg_; ++j) m = std::max(m, std::abs(at(i, j)));
  return m;
}

Jet2 Jet2::variable_x(int degree) {
  Jet2 j(degree);
  j.set(1, 0, 1.0);
  return j;
}

Jet2 Jet2::variable_y(int degree) {
  Jet2 j(degree);
  j.set(0, 1, 1.0);
  return j;
}

JetMap JetMap::identity(int degree) {
  return {Jet2::variable_x(degree), Jet2::variable_y(degree)};
}

std::array<double, 4> JetMap::linear_part() const {
  return {f1.at(1, 0), f1.at(0, 1), f2.at(1, 0), f2.at(0, 1)};
}

double JetMap::max_coeff_diff(const JetMap& o) const {
  return std::max(f1.max_coeff_diff(o.f1), f2.max_coeff_diff(o.f2));
}

Jet2 substitute(const Jet2& f, const JetMap& g) {
  const int d = f.degree();
  // Powers of the components, truncated.
  std::vector<Jet2> px(static_cast<std::size_t>(d) + 1, Jet2(d));
  std::vector<Jet2> py(static_cast<std::size_t>(d) + 1, Jet2(d));
  px[0].set(0, 0, 1.0);
  py[0].set(0, 0, 1.0);
  for (int a = 1; a <= d; ++a) {
    px[static_cast<std::size_t>(a)] = px[static_cast<std::size_t>(a - 1)] * g.f1;
    py[static_cast<std::size_t>(a)] = py[static_cast<std::size_t>(a - 1)] * g.f2;
  }
  Jet2 r(d);
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; i + j <= d; ++j) {
      const double c = f.at(i, j);
      if (c == 0.0) continue;
      const Jet2 term = px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(j)];
      r = r + term.scaled(c);
    }
  }
  return r;
}

JetMap compose(const JetMap& f, const JetMap& g) {
  return {substitute(f.f1, g), substitute(f.f2, g)};
}

JetMap jet_inverse(const JetMap& f) {
  const int d = f.degree();
  const auto l = f.linear_part();
  const double det = l[0] * l[3] - l[1] * l[2];
  if (std::abs(det) < 1e-14) {
    throw std::invalid_argument("jet inverse requires an invertible linear part");
  }
  JetMap linv = JetMap::identity(d);
  linv.f1.set(1, 0, l[3] / det);
  linv.f1.set(0, 1, -l[1] / det);
  linv.f2.set(1, 0, -l[2] / det);
  linv.f2.set(0, 1, l[0] / det);

  // Fixed-point iteration g ← g + L⁻¹∘(id − f∘g); degree-ℓ terms stabilize
  // after ℓ rounds.
  JetMap g = linv;
  const JetMap id = JetMap::identity(d);
  for (int it = 0; it < d + 1; ++it) {
    JetMap fg = compose(f, g);
    JetMap err{id.f1 - fg.f1, id.f2 - fg.f2};
    JetMap corr = compose(linv, err);
    // compose(linv, err) applies the linear inverse to the error terms.
    g = {g.f1 + corr.f1, g.f2 + corr.f2};
  }
  return g;
}

}  // namespace rigidlab
