#pragma once

#include <vector>

#include "rigidlab/fields.hpp"
#include "rigidlab/suspension.hpp"
#include "rigidlab/toral.hpp"

namespace rigidlab {

enum class CocycleMethod { analytic, finite_difference };

/// Longitudinal cocycle value at one periodic orbit: the mixed partial
/// ∂²ξ_φ/∂a∂b of the weighted return time, in the coordinates
/// q = p + a·e_u + b·e_s on the section {fiber = 0}.  The number depends on
/// the eigenvector gauge (rescaling e_u, e_s by a, b > 0 divides it by ab);
/// zero sets, signs, and ratios between orbits are gauge free.
struct CocycleValue {
  int k = 0;
  RationalPoint rep;
  double value = 0.0;
  CocycleMethod method = CocycleMethod::analytic;
};

/// Evaluates the cocycle with the fiber weight φ.  The analytic method sums
/// exact mixed Hessians along the orbit; the finite-difference method uses a
/// 4-point cross stencil, Richardson-extrapolated over h ∈ {h₀, h₀/2, h₀/4},
/// with the unstable-side step shrunk by λ^{-(k-1)} so displacements stay
/// O(h₀) along the whole orbit.
CocycleValue longitudinal_cocycle(const SuspensionFlow& flow, const MapOrbit& orbit,
                                  const FiberWeight& phi, CocycleMethod method,
                                  double h0 = 1e-3);
/// Weight ≡ 1.
CocycleValue longitudinal_cocycle(const SuspensionFlow& flow, const MapOrbit& orbit,
                                  CocycleMethod method, double h0 = 1e-3);

struct TransversalCheck {
  double straight = 0.0;
  double tilted = 0.0;
  double discrepancy = 0.0;
};

/// Recomputes the finite-difference cocycle from the tilted section
/// {fiber = tilt(x)}, whose return time differs by the coboundary
/// tilt∘Aᵏ − tilt, and reports both values with |difference|.
TransversalCheck transversal_independence_check(const SuspensionFlow& flow,
                                                const MapOrbit& orbit,
                                                const ScalarField& tilt, double h0 = 1e-3);

struct IdentityRow {
  int k = 0;
  RationalPoint rep;
  double linearity_analytic = 0.0;
  double linearity_fd = 0.0;
  double covariance_gap = 0.0;
};

struct IdentityReport {
  std::vector<IdentityRow> rows;
  double max_linearity_analytic = 0.0;
  double max_linearity_fd = 0.0;
  double max_covariance_gap = 0.0;
};

/// Per-orbit checks of |K_{bφ+cψ} − bK_φ − cK_ψ| under both methods, plus the
/// reparametrization identity: for strictly positive fiber-constant φ = g the
/// flow with roof g·r has plain cocycle equal to K_φ of the original flow.
IdentityReport verify_cocycle_identities(const SuspensionFlow& flow,
                                         const std::vector<MapOrbit>& orbits,
                                         const FiberWeight& phi, const FiberWeight& psi,
                                         double b, double c, double h0 = 1e-3);

}  // namespace rigidlab
