#include "rigidlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rigidlab/errors.hpp"

namespace rigidlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
// Double-double split of 2π.
constexpr double kTwoPiHi = 6.283185307179586;
constexpr double kTwoPiLo = 2.4492935982947064e-16;

std::string format_amp(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ScalarField ScalarField::constant(double c) {
  ScalarField f;
  f.add_cos(0, 0, c);
  return f;
}

void ScalarField::add_term(std::int64_t kx, std::int64_t ky, double ca, double sa) {
  if (kx < 0 || (kx == 0 && ky < 0)) {
    kx = -kx;
    ky = -ky;
    sa = -sa;
  }
  if (kx == 0 && ky == 0) sa = 0.0;
  if (ca == 0.0 && sa == 0.0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{kx, ky},
                             [](const FieldTerm& t, const std::pair<std::int64_t, std::int64_t>& k) {
                               return std::pair{t.kx, t.ky} < k;
                             });
  if (it != terms_.end() && it->kx == kx && it->ky == ky) {
    it->cos_amp += ca;
    it->sin_amp += sa;
    if (it->cos_amp == 0.0 && it->sin_amp == 0.0) terms_.erase(it);
  } else {
    terms_.insert(it, FieldTerm{kx, ky, ca, sa});
  }
}

ScalarField& ScalarField::add_cos(std::int64_t kx, std::int64_t ky, double amp) {
  add_term(kx, ky, amp, 0.0);
  return *this;
}

ScalarField& ScalarField::add_sin(std::int64_t kx, std::int64_t ky, double amp) {
  add_term(kx, ky, 0.0, amp);
  return *this;
}

double ScalarField::value(Vec2 p) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    const double th = kTwoPi * (static_cast<double>(t.kx) * p.x + static_cast<double>(t.ky) * p.y);
    s += t.cos_amp * std::cos(th) + t.sin_amp * std::sin(th);
  }
  return s;
}

double ScalarField::value_dd(const DDVec2& p) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    DD arg = p.x * static_cast<double>(t.kx) + p.y * static_cast<double>(t.ky);
    arg = dd_mod1(arg);
    const DD th = arg * DD(kTwoPiHi, kTwoPiLo);
    const double c = std::cos(th.hi), sn = std::sin(th.hi);
    s += t.cos_amp * (c - th.lo * sn) + t.sin_amp * (sn + th.lo * c);
  }
  return s;
}

double ScalarField::value_delta(Vec2 p, Vec2 d) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    const double kx = static_cast<double>(t.kx), ky = static_cast<double>(t.ky);
    const double th = kTwoPi * (kx * p.x + ky * p.y);
    const double dth = kTwoPi * (kx * d.x + ky * d.y);
    const double half = 0.5 * dth;
    const double mid = th + half;
    s += 2.0 * std::sin(half) * (t.sin_amp * std::cos(mid) - t.cos_amp * std::sin(mid));
  }
  return s;
}

Vec2 ScalarField::gradient(Vec2 p) const {
  Vec2 g{0.0, 0.0};
  for (const auto& t : terms_) {
    const double kx = static_cast<double>(t.kx), ky = static_cast<double>(t.ky);
    const double th = kTwoPi * (kx * p.x + ky * p.y);
    const double w = kTwoPi * (-t.cos_amp * std::sin(th) + t.sin_amp * std::cos(th));
    g.x += w * kx;
    g.y += w * ky;
  }
  return g;
}

double ScalarField::directional_derivative(Vec2 p, Vec2 dir) const {
  return gradient(p).dot(dir);
}

std::array<double, 3> ScalarField::hessian(Vec2 p) const {
  std::array<double, 3> h{0.0, 0.0, 0.0};
  for (const auto& t : terms_) {
    const double kx = static_cast<double>(t.kx), ky = static_cast<double>(t.ky);
    const double th = kTwoPi * (kx * p.x + ky * p.y);
    const double w = -kTwoPi * kTwoPi * (t.cos_amp * std::cos(th) + t.sin_amp * std::sin(th));
    h[0] += w * kx * kx;
    h[1] += w * kx * ky;
    h[2] += w * ky * ky;
  }
  return h;
}

double ScalarField::mixed_second(Vec2 p, Vec2 u, Vec2 v) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    const double kx = static_cast<double>(t.kx), ky = static_cast<double>(t.ky);
    const double th = kTwoPi * (kx * p.x + ky * p.y);
    const double w = -kTwoPi * kTwoPi * (t.cos_amp * std::cos(th) + t.sin_amp * std::sin(th));
    s += w * (kx * u.x + ky * u.y) * (kx * v.x + ky * v.y);
  }
  return s;
}

double ScalarField::constant_part() const {
  for (const auto& t : terms_) {
    if (t.kx == 0 && t.ky == 0) return t.cos_amp;
  }
  return 0.0;
}

double ScalarField::amplitude_sum() const {
  double s = 0.0;
  for (const auto& t : terms_) {
    if (t.kx == 0 && t.ky == 0) continue;
    s += std::hypot(t.cos_amp, t.sin_amp);
  }
  return s;
}

ScalarField ScalarField::pullback(const Mat2i& b) const {
  ScalarField out;
  for (const auto& t : terms_) {
    const std::int64_t kx = detail::checked_i64(
        static_cast<__int128>(b.a) * t.kx + static_cast<__int128>(b.c) * t.ky, "pullback frequency");
    const std::int64_t ky = detail::checked_i64(
        static_cast<__int128>(b.b) * t.kx + static_cast<__int128>(b.d) * t.ky, "pullback frequency");
    out.add_term(kx, ky, t.cos_amp, t.sin_amp);
  }
  return out;
}

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
  ScalarField out = f;
  for (const auto& t : g.terms_) out.add_term(t.kx, t.ky, t.cos_amp, t.sin_amp);
  return out;
}

ScalarField operator-(const ScalarField& f, const ScalarField& g) {
  ScalarField out = f;
  for (const auto& t : g.terms_) out.add_term(t.kx, t.ky, -t.cos_amp, -t.sin_amp);
  return out;
}

ScalarField operator*(double t, const ScalarField& f) {
  ScalarField out;
  if (t == 0.0) return out;
  for (const auto& term : f.terms_) out.add_term(term.kx, term.ky, t * term.cos_amp, t * term.sin_amp);
  return out;
}

ScalarField operator*(const ScalarField& f, const ScalarField& g) {
  ScalarField out;
  for (const auto& p : f.terms_) {
    for (const auto& q : g.terms_) {
      const double ac = p.cos_amp * q.cos_amp, bd = p.sin_amp * q.sin_amp;
      const double ad = p.cos_amp * q.sin_amp, bc = p.sin_amp * q.cos_amp;
      out.add_term(detail::checked_i64(static_cast<__int128>(p.kx) + q.kx, "frequency sum"),
                   detail::checked_i64(static_cast<__int128>(p.ky) + q.ky, "frequency sum"),
                   0.5 * (ac - bd), 0.5 * (ad + bc));
      out.add_term(detail::checked_i64(static_cast<__int128>(p.kx) - q.kx, "frequency sum"),
                   detail::checked_i64(static_cast<__int128>(p.ky) - q.ky, "frequency sum"),
                   0.5 * (ac + bd), 0.5 * (bc - ad));
    }
  }
  return out;
}

std::string ScalarField::to_text() const {
  std::string s;
  for (const auto& t : terms_) {
    if (t.cos_amp != 0.0) {
      s += "cos " + std::to_string(t.kx) + " " + std::to_string(t.ky) + " " +
           format_amp(t.cos_amp) + "\n";
    }
    if (t.sin_amp != 0.0) {
      s += "sin " + std::to_string(t.kx) + " " + std::to_string(t.ky) + " " +
           format_amp(t.sin_amp) + "\n";
    }
  }
  return s;
}

void add_field_line(ScalarField& field, const std::string& line) {
  std::istringstream in(line);
  std::string kind;
  std::int64_t kx = 0, ky = 0;
  double amp = 0.0;
  if (!(in >> kind >> kx >> ky >> amp)) {
    throw std::invalid_argument("expected '<cos|sin> kx ky amp', got: " + line);
  }
  std::string extra;
  if (in >> extra) {
    throw std::invalid_argument("trailing token '" + extra + "' in field term: " + line);
  }
  if (kind == "cos") {
    field.add_cos(kx, ky, amp);
  } else if (kind == "sin") {
    field.add_sin(kx, ky, amp);
  } else {
    throw std::invalid_argument("unknown field term kind '" + kind + "' (want cos or sin)");
  }
}

FiberWeight FiberWeight::constant(double c) {
  FiberWeight w;
  w.add_component(0, ScalarField::constant(c));
  return w;
}

FiberWeight FiberWeight::fiber_constant(ScalarField g) {
  FiberWeight w;
  w.add_component(0, std::move(g));
  return w;
}

FiberWeight& FiberWeight::add_component(int s_power, ScalarField g) {
  if (s_power < 0) throw std::invalid_argument("fiber power must be >= 0");
  auto it = std::lower_bound(comps_.begin(), comps_.end(), s_power,
                             [](const auto& c, int p) { return c.first < p; });
  if (it != comps_.end() && it->first == s_power) {
    it->second = it->second + g;
    if (it->second.is_zero()) comps_.erase(it);
  } else if (!g.is_zero()) {
    comps_.insert(it, {s_power, std::move(g)});
  }
  return *this;
}

double FiberWeight::value(Vec2 x, double s) const {
  double acc = 0.0;
  for (const auto& [m, g] : comps_) {
    double sp = 1.0;
    for (int i = 0; i < m; ++i) sp *= s;
    acc += sp * g.value(x);
  }
  return acc;
}

int FiberWeight::fiber_degree() const {
  return comps_.empty() ? 0 : comps_.back().first;
}

bool FiberWeight::is_fiber_constant() const {
  return comps_.empty() || (comps_.size() == 1 && comps_.front().first == 0);
}

FiberWeight FiberWeight::linear_combination(double b, const FiberWeight& phi, double c,
                                            const FiberWeight& psi) {
  FiberWeight out;
  for (const auto& [m, g] : phi.comps_) out.add_component(m, b * g);
  for (const auto& [m, g] : psi.comps_) out.add_component(m, c * g);
  return out;
}

double FiberWeight::lower_bound(double s_max) const {
  double acc = 0.0;
  for (const auto& [m, g] : comps_) {
    const double lb = g.lower_bound();
    if (m == 0) {
      acc += lb;
    } else if (lb < 0.0) {
      double sp = 1.0;
      for (int i = 0; i < m; ++i) sp *= s_max;
      acc += sp * lb;
    }
  }
  return acc;
}

std::string FiberWeight::to_text() const {
  std::string s;
  for (const auto& [m, g] : comps_) {
    if (m > 0) s += "spow " + std::to_string(m) + "\n";
    s += g.to_text();
  }
  return s;
}

}  // namespace rigidlab
