#include "rigidlab/cocycle_k.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rigidlab/errors.hpp"
#include "rigidlab/summation.hpp"

namespace rigidlab {

namespace {

constexpr double kTau = 6.2831853071795864769;

/// One summand of the weighted return time: amp · t(2πκ·x) · r(x)^j / j.
/// Both evaluation methods run per feature and combine linearly at the end,
/// so the cocycle is linear in the weight down to the last rounding.
struct Feature {
  std::int64_t kx = 0, ky = 0;
  bool is_sin = false;
  int j = 1;
  double amp = 0.0;
};

std::vector<Feature> make_features(const FiberWeight& phi) {
  std::vector<Feature> out;
  for (const auto& [power, g] : phi.components()) {
    const int j = power + 1;
    for (const auto& t : g.terms()) {
      if (t.cos_amp != 0.0) out.push_back({t.kx, t.ky, false, j, t.cos_amp});
      if (t.sin_amp != 0.0) out.push_back({t.kx, t.ky, true, j, t.sin_amp});
    }
  }
  return out;
}

void check_orbit(const SuspensionFlow& flow, const MapOrbit& orbit) {
  if (orbit.prime_period < 1 || orbit.points.empty() ||
      orbit.points.size() != static_cast<std::size_t>(orbit.prime_period)) {
    throw std::invalid_argument("orbit data is empty or inconsistent");
  }
  const int k = orbit.prime_period;
  for (int i = 0; i < k; ++i) {
    if (!(flow.base().apply(orbit.points[i]).reduced() ==
          orbit.points[(i + 1) % k].reduced())) {
      throw std::invalid_argument("orbit does not belong to the base automorphism");
    }
  }
}

/// Mixed second derivative e_uᵀ Hess F e_s of F = t(2πκ·x)·r(x)^j / j.
double feature_mixed_second(const Feature& f, const ScalarField& roof, Vec2 x, Vec2 eu,
                            Vec2 es) {
  const double theta = kTau * (static_cast<double>(f.kx) * x.x + static_cast<double>(f.ky) * x.y);
  const double tu = kTau * (static_cast<double>(f.kx) * eu.x + static_cast<double>(f.ky) * eu.y);
  const double ts = kTau * (static_cast<double>(f.kx) * es.x + static_cast<double>(f.ky) * es.y);
  const double t0 = f.is_sin ? std::sin(theta) : std::cos(theta);
  const double t1 = f.is_sin ? std::cos(theta) : -std::sin(theta);
  const double t2 = -t0;

  const double r = roof.value(x);
  const double ru = roof.directional_derivative(x, eu);
  const double rs = roof.directional_derivative(x, es);
  const double rus = roof.mixed_second(x, eu, es);

  const int j = f.j;
  const double rj = std::pow(r, j);
  const double rjm1 = std::pow(r, j - 1);
  const double rjm2 = j >= 2 ? std::pow(r, j - 2) : 0.0;

  double total = t2 * tu * ts * rj;
  total += t1 * tu * j * rjm1 * rs;
  total += t1 * ts * j * rjm1 * ru;
  total += t0 * (j * (j - 1) * rjm2 * ru * rs + j * rjm1 * rus);
  return total / j;
}

double analytic_feature_sum(const SuspensionFlow& flow, const MapOrbit& orbit,
                            const Feature& f) {
  const auto& base = flow.base();
  const double det = static_cast<double>(base.matrix().det());
  const Vec2 eu = base.e_u(), es = base.e_s();
  CompensatedSum sum;
  double weight = 1.0;
  for (const auto& p : orbit.points) {
    sum.add(weight * feature_mixed_second(f, flow.roof(), p.to_double(), eu, es));
    weight *= det;
  }
  return sum.value();
}

/// t(θ+dθ) − t(θ) in product form, accurate relative to the difference.
double trig_delta(bool is_sin, double theta, double dtheta) {
  const double s = 2.0 * std::sin(0.5 * dtheta);
  const double mid = theta + 0.5 * dtheta;
  return is_sin ? s * std::cos(mid) : -s * std::sin(mid);
}

/// F(x+d) − F(x) for F = t(2πκ·x)·r(x)^j / j, cancellation-free.
double feature_delta(const Feature& f, const ScalarField& roof, Vec2 x, Vec2 d) {
  const double theta = kTau * (static_cast<double>(f.kx) * x.x + static_cast<double>(f.ky) * x.y);
  const double dtheta = kTau * (static_cast<double>(f.kx) * d.x + static_cast<double>(f.ky) * d.y);
  const double dt = trig_delta(f.is_sin, theta, dtheta);
  const double t_old = f.is_sin ? std::sin(theta) : std::cos(theta);

  const double r_old = roof.value(x);
  const double dr = roof.value_delta(x, d);
  const double r_new = r_old + dr;

  double geom = 0.0;  // Σ r_new^q · r_old^{j-1-q}, so Δ(r^j) = Δr · geom
  for (int q = 0; q < f.j; ++q) {
    geom += std::pow(r_new, q) * std::pow(r_old, f.j - 1 - q);
  }
  const double d_rj = dr * geom;
  const double rj_new = std::pow(r_new, f.j);
  return (dt * rj_new + t_old * d_rj) / f.j;
}

struct StencilGeometry {
  int k = 0;
  double lambda = 0.0, lambda_s = 0.0;
  Vec2 eu, es;
  std::vector<Vec2> points;
  /// Unstable-side step factor λ^{-(k-1)}, so the i-th displacement
  /// h_a·λⁱ stays within h for all i < k.
  double unstable_scale = 1.0;
};

StencilGeometry stencil_geometry(const SuspensionFlow& flow, const MapOrbit& orbit,
                                 double h0) {
  if (!(h0 <= 0.05)) {
    throw std::invalid_argument("finite-difference step above 0.05 leaves the linearization range");
  }
  if (!(h0 >= 1e-6)) {
    throw StepTooSmall("base step " + std::to_string(h0) + " underflows the stencil");
  }
  StencilGeometry g;
  g.k = orbit.prime_period;
  g.lambda = flow.base().lambda();
  g.lambda_s = flow.base().lambda_stable();
  g.eu = flow.base().e_u();
  g.es = flow.base().e_s();
  g.unstable_scale = std::pow(std::abs(g.lambda), -(g.k - 1));
  if (h0 * g.unstable_scale * 0.25 < 1e-14) {
    throw StepTooSmall("effective unstable step " +
                       std::to_string(h0 * g.unstable_scale * 0.25) +
                       " is below the rounding floor at period " + std::to_string(g.k));
  }
  g.points.reserve(g.k);
  for (const auto& p : orbit.points) g.points.push_back(p.to_double());
  return g;
}

/// Corner increment Σᵢ ΔF(xᵢ, δᵢ) with δᵢ = sa·h_a·λⁱ·e_u + sb·h_b·λ_sⁱ·e_s.
double corner_delta(const Feature& f, const ScalarField& roof, const StencilGeometry& g,
                    double ha, double hb, int sa, int sb) {
  CompensatedSum sum;
  double au = sa * ha, bs = sb * hb;
  for (int i = 0; i < g.k; ++i) {
    const Vec2 d{au * g.eu.x + bs * g.es.x, au * g.eu.y + bs * g.es.y};
    sum.add(feature_delta(f, roof, g.points[i], d));
    au *= g.lambda;
    bs *= g.lambda_s;
  }
  return sum.value();
}

double fd_feature(const Feature& f, const ScalarField& roof, const StencilGeometry& g,
                  double h0) {
  double d[3];
  for (int level = 0; level < 3; ++level) {
    const double h = h0 / static_cast<double>(1 << level);
    const double ha = h * g.unstable_scale, hb = h;
    const double cpp = corner_delta(f, roof, g, ha, hb, +1, +1);
    const double cpm = corner_delta(f, roof, g, ha, hb, +1, -1);
    const double cmp = corner_delta(f, roof, g, ha, hb, -1, +1);
    const double cmm = corner_delta(f, roof, g, ha, hb, -1, -1);
    d[level] = ((cpp - cpm) - (cmp - cmm)) / (4.0 * ha * hb);
  }
  const double n01 = (4.0 * d[1] - d[0]) / 3.0;
  const double n12 = (4.0 * d[2] - d[1]) / 3.0;
  return (16.0 * n12 - n01) / 15.0;
}

double combine(const std::vector<Feature>& features, const std::vector<double>& per_feature) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < features.size(); ++i) sum.add(features[i].amp * per_feature[i]);
  return sum.value();
}

double evaluate(const SuspensionFlow& flow, const MapOrbit& orbit, const FiberWeight& phi,
                CocycleMethod method, double h0) {
  const auto features = make_features(phi);
  std::vector<double> vals(features.size());
  if (method == CocycleMethod::analytic) {
    for (std::size_t i = 0; i < features.size(); ++i) {
      vals[i] = analytic_feature_sum(flow, orbit, features[i]);
    }
  } else {
    const auto g = stencil_geometry(flow, orbit, h0);
    for (std::size_t i = 0; i < features.size(); ++i) {
      vals[i] = fd_feature(features[i], flow.roof(), g, h0);
    }
  }
  return combine(features, vals);
}

}  // namespace

CocycleValue longitudinal_cocycle(const SuspensionFlow& flow, const MapOrbit& orbit,
                                  const FiberWeight& phi, CocycleMethod method, double h0) {
  check_orbit(flow, orbit);
  CocycleValue out;
  out.k = orbit.prime_period;
  out.rep = orbit.representative();
  out.method = method;
  out.value = evaluate(flow, orbit, phi, method, h0);
  return out;
}

CocycleValue longitudinal_cocycle(const SuspensionFlow& flow, const MapOrbit& orbit,
                                  CocycleMethod method, double h0) {
  return longitudinal_cocycle(flow, orbit, FiberWeight::constant(1.0), method, h0);
}

TransversalCheck transversal_independence_check(const SuspensionFlow& flow,
                                                const MapOrbit& orbit,
                                                const ScalarField& tilt, double h0) {
  check_orbit(flow, orbit);
  const double bound = std::abs(tilt.constant_part()) + tilt.amplitude_sum();
  if (!(bound <= 0.05 * flow.roof_min())) {
    throw TiltTooLarge("tilt amplitude " + std::to_string(bound) + " exceeds 5% of roof minimum " +
                       std::to_string(flow.roof_min()));
  }

  const Feature plain{0, 0, false, 1, 1.0};
  const auto g = stencil_geometry(flow, orbit, h0);
  const double lam_k = std::pow(g.lambda, g.k);
  const double lam_s_k = std::pow(g.lambda_s, g.k);

  double straight[3], tilted[3];
  for (int level = 0; level < 3; ++level) {
    const double h = h0 / static_cast<double>(1 << level);
    const double ha = h * g.unstable_scale, hb = h;
    double s[2][2], t[2][2];
    for (int ia = 0; ia < 2; ++ia) {
      for (int ib = 0; ib < 2; ++ib) {
        const int sa = ia == 0 ? 1 : -1, sb = ib == 0 ? 1 : -1;
        const double base_delta = corner_delta(plain, flow.roof(), g, ha, hb, sa, sb);
        // Section change adds the coboundary tilt∘Aᵏ − tilt; at the periodic
        // point Aᵏp ≡ p on the torus, so both ends evaluate from p.
        const Vec2 d0{sa * ha * g.eu.x + sb * hb * g.es.x, sa * ha * g.eu.y + sb * hb * g.es.y};
        const Vec2 dk{sa * ha * lam_k * g.eu.x + sb * hb * lam_s_k * g.es.x,
                      sa * ha * lam_k * g.eu.y + sb * hb * lam_s_k * g.es.y};
        const Vec2 p = g.points[0];
        s[ia][ib] = base_delta;
        t[ia][ib] = base_delta - tilt.value_delta(p, d0) + tilt.value_delta(p, dk);
      }
    }
    straight[level] = ((s[0][0] - s[0][1]) - (s[1][0] - s[1][1])) / (4.0 * ha * hb);
    tilted[level] = ((t[0][0] - t[0][1]) - (t[1][0] - t[1][1])) / (4.0 * ha * hb);
  }
  const auto extrapolate = [](const double* d) {
    const double n01 = (4.0 * d[1] - d[0]) / 3.0;
    const double n12 = (4.0 * d[2] - d[1]) / 3.0;
    return (16.0 * n12 - n01) / 15.0;
  };
  TransversalCheck out;
  out.straight = extrapolate(straight);
  out.tilted = extrapolate(tilted);
  out.discrepancy = std::abs(out.tilted - out.straight);
  return out;
}

IdentityReport verify_cocycle_identities(const SuspensionFlow& flow,
                                         const std::vector<MapOrbit>& orbits,
                                         const FiberWeight& phi, const FiberWeight& psi,
                                         double b, double c, double h0) {
  if (!phi.is_fiber_constant()) {
    throw std::invalid_argument("reparametrization check needs a fiber-constant weight");
  }
  ScalarField g_field = ScalarField::constant(0.0);
  if (!phi.components().empty()) g_field = phi.components().front().second;
  if (!(g_field.lower_bound() > 0.0)) {
    throw NonPositiveWeight("weight lower bound " + std::to_string(g_field.lower_bound()) +
                            " is not positive");
  }
  const FiberWeight combined = FiberWeight::linear_combination(b, phi, c, psi);
  const SuspensionFlow repar = make_suspension(flow.base(), g_field * flow.roof());

  IdentityReport report;
  for (const auto& orbit : orbits) {
    IdentityRow row;
    row.k = orbit.prime_period;
    row.rep = orbit.representative();
    for (auto method : {CocycleMethod::analytic, CocycleMethod::finite_difference}) {
      const double k_comb = longitudinal_cocycle(flow, orbit, combined, method, h0).value;
      const double k_phi = longitudinal_cocycle(flow, orbit, phi, method, h0).value;
      const double k_psi = longitudinal_cocycle(flow, orbit, psi, method, h0).value;
      const double defect = std::abs(k_comb - (b * k_phi + c * k_psi));
      (method == CocycleMethod::analytic ? row.linearity_analytic : row.linearity_fd) = defect;
    }
    const double k_y =
        longitudinal_cocycle(repar, orbit, CocycleMethod::finite_difference, h0).value;
    const double k_x_phi =
        longitudinal_cocycle(flow, orbit, phi, CocycleMethod::finite_difference, h0).value;
    row.covariance_gap = std::abs(k_y - k_x_phi);
    report.max_linearity_analytic = std::max(report.max_linearity_analytic, row.linearity_analytic);
    report.max_linearity_fd = std::max(report.max_linearity_fd, row.linearity_fd);
    report.max_covariance_gap = std::max(report.max_covariance_gap, row.covariance_gap);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace rigidlab
