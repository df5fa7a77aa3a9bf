#pragma once

#include <cstdint>
#include <vector>

#include "rigidlab/suspension.hpp"

namespace rigidlab {

/// Per-orbit flow integral of a weight, the Livshits periodic datum.
struct ObstructionEntry {
  std::int64_t orbit_id = 0;
  int k = 0;
  RationalPoint rep;
  double period = 0.0;
  double value = 0.0;
};

struct ObstructionReport {
  std::vector<ObstructionEntry> entries;
  double max_abs = 0.0;
  double tol = 0.0;
  bool is_coboundary_candidate = false;
};

/// Round-off budget for Birkhoff sums over orbits up to length k_max.
double default_matching_tol(int k_max);

/// ∫_γ φ dt over every prime orbit with k ≤ k_max, ordered by k then by
/// lexicographic representative.
ObstructionReport periodic_obstructions(const SuspensionFlow& flow, const FiberWeight& phi,
                                        int k_max, double tol);

/// Outcome of fitting ∫_γ φ = c·k(γ) (k = section crossings) over the catalog.
struct AbelianFit {
  bool success = false;
  double c = 0.0;
  double worst_residual = 0.0;
  ObstructionEntry worst;
};

/// Tests whether the periodic data of φ matches a multiple of the section
/// crossing count, the generator of the suspension's first cohomology.  The
/// constant is fitted on the smallest-period orbit.
AbelianFit abelian_coboundary_test(const SuspensionFlow& flow, const FiberWeight& phi,
                                   int k_max, double tol);

struct MatchRow {
  int k = 0;
  RationalPoint rep;
  double t1 = 0.0, t2 = 0.0;
  double i1 = 0.0, i2 = 0.0;
  double gap = 0.0;           ///< |i1 - i2|
  double exponent_gap = 0.0;  ///< χ₁ - χ₂
};

struct MatchReport {
  std::vector<MatchRow> rows;
  double tol = 0.0;
  double max_gap = 0.0;
  bool matched = false;
};

/// Per-orbit comparison of two weighted flows over the same base; the orbit
/// correspondence is the identity.
MatchReport matching_report(const SuspensionFlow& flow1, const FiberWeight& phi1,
                            const SuspensionFlow& flow2, const FiberWeight& phi2,
                            int k_max, double tol);

}  // namespace rigidlab
