#include <cmath>
#include <stdexcept>

#include "rigidlab/errors.hpp"
#include "rigidlab/jets.hpp"

namespace rigidlab {

namespace {

double small_divisor_guard(double divisor) {
  if (std::abs(divisor) < 1e-10) {
    throw ResonanceAtTruncation("homological divisor " + std::to_string(divisor) +
                                " below 1e-10");
  }
  return divisor;
}

/// Applies the change ψ = id + p and returns ψ⁻¹∘f∘ψ.
JetMap conjugate_by(const JetMap& f, const JetMap& p) {
  const int d = f.degree();
  JetMap psi{Jet2::variable_x(d) + p.f1, Jet2::variable_y(d) + p.f2};
  return compose(jet_inverse(psi), compose(f, psi));
}

/// Removes the listed monomials (i, j, component) of degree ℓ via one
/// homological change; mu1, mu2 are the diagonal eigenvalues.
JetMap kill_monomials(const JetMap& f, double mu1, double mu2,
                      const std::vector<std::array<int, 3>>& targets, JetMap* accum) {
  const int d = f.degree();
  JetMap p{Jet2(d), Jet2(d)};
  bool any = false;
  for (const auto& [i, j, comp] : targets) {
    const double h = (comp == 1 ? f.f1 : f.f2).at(i, j);
    if (h == 0.0) continue;
    const double own = comp == 1 ? mu1 : mu2;
    const double divisor = small_divisor_guard(std::pow(mu1, i) * std::pow(mu2, j) - own);
    (comp == 1 ? p.f1 : p.f2).set(i, j, h / divisor);
    any = true;
  }
  if (!any) return f;
  JetMap psi{Jet2::variable_x(d) + p.f1, Jet2::variable_y(d) + p.f2};
  *accum = compose(*accum, psi);
  return conjugate_by(f, p);
}

}  // namespace

PlanarJet make_planar_jet(JetMap map) {
  if (map.degree() < 3) {
    throw InvalidJet("jet degree must be at least 3");
  }
  if (std::abs(map.f1.at(0, 0)) > 1e-14 || std::abs(map.f2.at(0, 0)) > 1e-14) {
    throw InvalidJet("constant terms must vanish (fixed point at the origin)");
  }
  const auto l = map.linear_part();
  const double det = l[0] * l[3] - l[1] * l[2];
  if (std::abs(det - 1.0) > 1e-12) {
    throw InvalidJet("linear part determinant " + std::to_string(det) + " is not 1");
  }
  const double tr = l[0] + l[3];
  if (!(tr > 2.0)) {
    throw InvalidJet("linear part trace " + std::to_string(tr) +
                     " does not give a positive hyperbolic pair");
  }
  const double mu = (tr - std::sqrt(tr * tr - 4.0)) / 2.0;  // contracting root
  PlanarJet out;
  out.map = std::move(map);
  out.mu = mu;
  return out;
}

MoserResult moser_normal_form(const PlanarJet& jet) {
  const int d = jet.map.degree();
  const double mu = jet.mu;
  const auto l = jet.map.linear_part();

  // Step 1: diagonalize the linear part with a determinant-1 change.
  // Eigenvector for mu: (l01, mu - l00) unless degenerate, then (mu - l11, l10).
  // Signs are normalized so an already-diagonal jet gets the identity change.
  const auto eigenvector = [&l](double t, double* vx, double* vy) {
    *vx = l[1];
    *vy = t - l[0];
    if (std::abs(*vx) + std::abs(*vy) < 1e-14) {
      *vx = t - l[3];
      *vy = l[2];
    }
    const double lead = std::abs(*vx) >= std::abs(*vy) ? *vx : *vy;
    if (lead < 0.0) {
      *vx = -*vx;
      *vy = -*vy;
    }
  };
  const double nu = 1.0 / mu;
  JetMap accum = JetMap::identity(d);
  JetMap g = jet.map;
  if (l[1] != 0.0 || l[2] != 0.0 || l[0] > l[3]) {
    double v1x, v1y, v2x, v2y;
    eigenvector(mu, &v1x, &v1y);
    eigenvector(nu, &v2x, &v2y);
    double cdet = v1x * v2y - v2x * v1y;
    if (cdet < 0.0) {
      v2x = -v2x;
      v2y = -v2y;
      cdet = -cdet;
    }
    const double scale = 1.0 / std::sqrt(cdet);
    v1x *= scale;
    v1y *= scale;
    v2x *= scale;
    v2y *= scale;

    JetMap change = JetMap::identity(d);
    change.f1.set(1, 0, v1x);
    change.f1.set(0, 1, v2x);
    change.f2.set(1, 0, v1y);
    change.f2.set(0, 1, v2y);
    accum = change;
    g = conjugate_by(jet.map,
                     {change.f1 - Jet2::variable_x(d), change.f2 - Jet2::variable_y(d)});
  }

  // Step 2: remove every quadratic monomial (no resonances at even degree).
  {
    std::vector<std::array<int, 3>> targets;
    for (int comp = 1; comp <= 2; ++comp)
      for (int i = 0; i <= 2; ++i) targets.push_back({i, 2 - i, comp});
    g = kill_monomials(g, mu, nu, targets, &accum);
  }

  // Steps 3 and 4, degree by degree: straighten the invariant axes
  // (component 2 on x-powers, component 1 on y-powers), then linearize the
  // axis restrictions (component 1 on x-powers, component 2 on y-powers).
  for (int deg = 3; deg <= d; ++deg) {
    g = kill_monomials(g, mu, nu, {{0, deg, 1}, {deg, 0, 2}}, &accum);
    g = kill_monomials(g, mu, nu, {{deg, 0, 1}, {0, deg, 2}}, &accum);
  }

  MoserResult out;
  out.normal = make_planar_jet(g);
  out.change = accum;
  return out;
}

}  // namespace rigidlab
