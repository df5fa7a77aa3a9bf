#include "rigidlab/suspension.hpp"

#include <cmath>
#include <stdexcept>

#include "rigidlab/errors.hpp"
#include "rigidlab/quadrature.hpp"
#include "rigidlab/summation.hpp"

namespace rigidlab {

SuspensionFlow make_suspension(ToralAutomorphism base, ScalarField roof) {
  const double lo = roof.lower_bound();
  if (!(lo > 0.0)) {
    throw NonPositiveRoof("certified roof lower bound " + std::to_string(lo) +
                          " is not positive");
  }
  return SuspensionFlow(std::move(base), std::move(roof), lo);
}

double orbit_period(const SuspensionFlow& flow, const MapOrbit& orbit) {
  CompensatedSum t;
  for (const auto& p : orbit.points) t.add(flow.roof().value(p.to_double()));
  return t.value();
}

FlowOrbitData orbit_flow_data(const SuspensionFlow& flow, const MapOrbit& orbit) {
  FlowOrbitData d;
  d.map_orbit = orbit;
  d.period = orbit_period(flow, orbit);
  const int k = orbit.prime_period;
  d.exponent = static_cast<double>(k) * flow.base().log_lambda() / d.period;
  d.multiplier = (DD(1.0) / dd_abs(dd_pow_int(flow.base().lambda_dd(), k))).to_double();
  return d;
}

double weight_integral(const SuspensionFlow& flow, const FiberWeight& phi,
                       const MapOrbit& orbit, int node_override) {
  const int degree = phi.fiber_degree();
  const int nodes = node_override > 0 ? node_override : (degree + 2) / 2;
  const QuadratureRule rule = gauss_legendre(nodes);
  CompensatedSum acc;
  for (const auto& p : orbit.points) {
    const Vec2 x = p.to_double();
    const double r = flow.roof().value(x);
    acc.add(quad_integrate(rule, 0.0, r, [&](double s) { return phi.value(x, s); }));
  }
  return acc.value();
}

FlowPoint advance(const SuspensionFlow& flow, FlowPoint p, double t) {
  if (t < 0.0) throw std::invalid_argument("advance requires t >= 0");
  for (;;) {
    const double remain = flow.roof().value(p.x) - p.s;
    if (t < remain) {
      p.s += t;
      return p;
    }
    t -= remain;
    p.x = flow.base().apply_mod1(p.x);
    p.s = 0.0;
  }
}

}  // namespace rigidlab
