#include "rigidlab/cocycles.hpp"

#include <cmath>

#include "rigidlab/errors.hpp"

namespace rigidlab {

double default_matching_tol(int k_max) { return 1e-9 * (1.0 + static_cast<double>(k_max)); }

ObstructionReport periodic_obstructions(const SuspensionFlow& flow, const FiberWeight& phi,
                                        int k_max, double tol) {
  ObstructionReport rep;
  rep.tol = tol;
  const OrbitCatalog catalog = enumerate_periodic_orbits(flow.base(), k_max);
  std::int64_t id = 0;
  catalog.for_each([&](const MapOrbit& orbit) {
    ObstructionEntry e;
    e.orbit_id = id++;
    e.k = orbit.prime_period;
    e.rep = orbit.representative();
    e.period = orbit_period(flow, orbit);
    e.value = weight_integral(flow, phi, orbit);
    rep.max_abs = std::max(rep.max_abs, std::abs(e.value));
    rep.entries.push_back(std::move(e));
  });
  rep.is_coboundary_candidate = rep.max_abs <= tol;
  return rep;
}

AbelianFit abelian_coboundary_test(const SuspensionFlow& flow, const FiberWeight& phi,
                                   int k_max, double tol) {
  ObstructionReport rep = periodic_obstructions(flow, phi, k_max, tol);
  if (rep.entries.empty()) {
    throw EmptyCatalog("no periodic orbits with period <= " + std::to_string(k_max));
  }
  // Entries are ordered by k, so the first row has the smallest period.
  const ObstructionEntry& fit_row = rep.entries.front();
  AbelianFit out;
  out.c = fit_row.value / static_cast<double>(fit_row.k);
  out.success = true;
  for (const auto& e : rep.entries) {
    const double resid = std::abs(e.value - out.c * static_cast<double>(e.k));
    if (resid > out.worst_residual) {
      out.worst_residual = resid;
      out.worst = e;
    }
  }
  if (out.worst_residual > tol) out.success = false;
  return out;
}

MatchReport matching_report(const SuspensionFlow& flow1, const FiberWeight& phi1,
                            const SuspensionFlow& flow2, const FiberWeight& phi2,
                            int k_max, double tol) {
  if (!(flow1.base().matrix() == flow2.base().matrix())) {
    throw BaseMismatch("matching requires identical base matrices");
  }
  MatchReport rep;
  rep.tol = tol;
  const OrbitCatalog catalog = enumerate_periodic_orbits(flow1.base(), k_max);
  catalog.for_each([&](const MapOrbit& orbit) {
    MatchRow row;
    row.k = orbit.prime_period;
    row.rep = orbit.representative();
    const FlowOrbitData d1 = orbit_flow_data(flow1, orbit);
    const FlowOrbitData d2 = orbit_flow_data(flow2, orbit);
    row.t1 = d1.period;
    row.t2 = d2.period;
    row.i1 = weight_integral(flow1, phi1, orbit);
    row.i2 = weight_integral(flow2, phi2, orbit);
    row.gap = std::abs(row.i1 - row.i2);
    row.exponent_gap = d1.exponent - d2.exponent;
    rep.max_gap = std::max(rep.max_gap, row.gap);
    rep.rows.push_back(std::move(row));
  });
  rep.matched = rep.max_gap <= tol;
  return rep;
}

}  // namespace rigidlab
