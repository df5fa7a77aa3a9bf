#pragma once

#include <map>
#include <vector>

#include "rigidlab/cocycle_k.hpp"
#include "rigidlab/suspension.hpp"
#include "rigidlab/toral.hpp"

namespace rigidlab {

/// Periods T_n of the shadowing periodic orbits around a homoclinic loop,
/// together with the compensated excess sums a_n = T_n − n·T0 they are
/// recovered from.
struct HomoclinicExperiment {
  SuspensionFlow flow;
  HomoclinicPoint h;
  int n_lo = 0, n_hi = 0;
  double t0 = 0.0;
  std::map<int, double> periods;  ///< n → T_n
  std::map<int, double> excess;   ///< n → a_n = T_n − n·T0, summed term-by-term

  /// Filled by run_homoclinic_experiment; the pure estimators below return
  /// the same numbers without mutating the experiment.
  double t_prime = 0.0;
  double t_prime_uncertainty = 0.0;
  std::map<int, double> residuals;  ///< n → T_n − n·T0 − T′, noise-gated
};

HomoclinicExperiment homoclinic_periods(const SuspensionFlow& flow, const HomoclinicPoint& h,
                                        int n_lo, int n_hi);

struct TPrimeEstimate {
  double value = 0.0;
  /// Last Cauchy increment |a_{n_hi} − a_{n_hi−1}|.
  double uncertainty = 0.0;
};

/// Geometric-tail extrapolation of a_n = T_n − n·T0 through the last three
/// points.  Throws NotConverged when the increments stop shrinking over the
/// last five points (the range has outrun the precision floor).
TPrimeEstimate estimate_T_prime(const HomoclinicExperiment& exp);

/// Residuals above the noise gate: n is reported when the predicted size
/// amp·n·λ⁻ⁿ exceeds 100× the summation error bound n·1e-15·scale.
std::map<int, double> gated_residuals(const HomoclinicExperiment& exp, double t_prime);

struct ExponentRecovery {
  double log_mu_hat = 0.0;
  bool k_is_zero = false;
  /// Residuals that passed the noise gate and entered the fits.
  std::map<int, double> residuals;
  /// Largest |fit residual| of the accepted model, in log units.
  double fit_residual = 0.0;
};

/// Fits log|R_n| − log n (multiplier branch) and log|R_n| (vanishing-K
/// branch) over the gated residuals and returns the model that fits tighter,
/// after its own affinity confirmation.  With no gated residuals at all the
/// degenerate vanishing-K branch is reported with log_mu_hat = NaN.
ExponentRecovery recover_exponent(const HomoclinicExperiment& exp, double t_prime);

/// homoclinic_periods + estimate_T_prime + gated residuals in one pass,
/// with the derived fields filled in.
HomoclinicExperiment run_homoclinic_experiment(const SuspensionFlow& flow,
                                               const HomoclinicPoint& h, int n_lo, int n_hi);

enum class RigidityCase {
  integral_zero,    // case 0: ∫φ₁ over the orbit vanishes
  both_zero,        // case 1: K₁ = K₂ = 0
  first_zero,       // case 2: K₁ = 0, K₂ ≠ 0, demands χ₁ < χ₂
  second_zero,      // case 3: K₁ ≠ 0, K₂ = 0, demands χ₁ > χ₂
  both_nonzero,     // case 4: demands χ₁ = χ₂
};

struct CaseClassification {
  RigidityCase label = RigidityCase::both_zero;
  /// Set when the exponent relation demanded by the label fails: a genuine
  /// counterexample to the dichotomy, never expected on valid pairs.
  bool contradiction = false;
  double integral1 = 0.0;
  double k1 = 0.0, k2 = 0.0;
  double chi1 = 0.0, chi2 = 0.0;
};

/// Zero tests use `tol`, with an ambiguity band (tol, 10·tol] that throws
/// ToleranceAmbiguity rather than guessing.
CaseClassification classify_case(const SuspensionFlow& flow1, const FiberWeight& phi1,
                                 const SuspensionFlow& flow2, const FiberWeight& phi2,
                                 const MapOrbit& orbit, double tol = 1e-7);

}  // namespace rigidlab
