#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "rigidlab/fields.hpp"
#include "rigidlab/suspension.hpp"
#include "rigidlab/toral.hpp"

namespace rigidlab {

/// Orbit weight B(γ) for the Bowen ensembles.  The offset is added to every
/// value; normalized integrals are invariant under it.
struct BowenWeight {
  enum class Kind {
    zero,           ///< B ≡ 0: measure of maximal entropy
    minus_log_ju,   ///< B = −log J^u: B(γ) = −k·log λ, the volume weight
    constant_rate,  ///< B ≡ rate pointwise: B(γ) = rate·period
  };
  Kind kind = Kind::zero;
  double rate = 0.0;
  double offset = 0.0;

  double value(int k, double period, double log_lambda) const;
};

struct EnsembleOrbit {
  MapOrbit orbit;
  double period = 0.0;
  double b_value = 0.0;
};

/// All prime flow orbits with period in (T, T+Δ], found by exhaustive lattice
/// enumeration of base periods up to k_cap = ⌈(T+Δ)/roof_min⌉.  Entries are
/// materialized (sorted by period count, then representative) when
/// k_cap ≤ 14; larger ensembles re-enumerate on every pass.  Either way the
/// traversal order is deterministic and independent of the thread count.
class PeriodicEnsemble {
 public:
  const SuspensionFlow& flow() const { return flow_; }
  double t() const { return t_; }
  double delta() const { return delta_; }
  const BowenWeight& weight() const { return weight_; }
  int k_min() const { return k_min_; }
  int k_cap() const { return k_cap_; }
  std::size_t orbit_count() const { return count_; }
  bool materialized() const { return materialized_; }
  int threads() const { return threads_; }

  void for_each(const std::function<void(const EnsembleOrbit&)>& fn) const;

  /// Stripe-parallel accumulation: `terms` maps an orbit to `width` addends,
  /// accumulated per stripe and merged in stripe order, so totals are
  /// bit-stable for every thread count.
  std::vector<double> accumulate(
      std::size_t width,
      const std::function<void(const EnsembleOrbit&, double*)>& terms) const;

  friend PeriodicEnsemble build_ensemble(const SuspensionFlow& flow, double t, double delta,
                                         const BowenWeight& weight, int threads);

 private:
  PeriodicEnsemble(SuspensionFlow flow, double t, double delta, BowenWeight weight)
      : flow_(std::move(flow)), t_(t), delta_(delta), weight_(weight) {}

  SuspensionFlow flow_;
  double t_, delta_;
  BowenWeight weight_;
  int k_min_ = 1, k_cap_ = 1;
  std::size_t count_ = 0;
  bool materialized_ = false;
  int threads_ = 1;
  std::vector<EnsembleOrbit> entries_;
};

/// Throws CostGate when k_cap exceeds 20.
PeriodicEnsemble build_ensemble(const SuspensionFlow& flow, double t, double delta,
                                const BowenWeight& weight, int threads = 1);

/// Bowen approximating measure μ_{T,B}: orbit γ carries mass |γ|e^{B(γ)}
/// before normalization.
struct MeasureApprox {
  const PeriodicEnsemble* ensemble = nullptr;
  double normalization = 0.0;  ///< Σ |γ| e^{B(γ)}
};

MeasureApprox approximate_measure(const PeriodicEnsemble& ensemble);

/// (Σ_γ e^{B(γ)} ∫_γ g dt) / (Σ_γ |γ| e^{B(γ)}); integrates 1 to exactly 1.
double bowen_integral(const MeasureApprox& m, const FiberWeight& g);

struct ProportionReport {
  double proportion = 0.0;      ///< μ_{T,B}-mass of {γ : |a(γ)| ≤ tol}
  double hat_proportion = 0.0;  ///< same set under counting mass e^{B(γ)}
  double ratio = 1.0;           ///< proportion / hat_proportion when defined
  bool ratio_within_bounds = true;  ///< T/(T+Δ) ≤ ratio ≤ (T+Δ)/T
};

ProportionReport positive_proportion(const MeasureApprox& m,
                                     const std::function<double(const EnsembleOrbit&)>& a,
                                     double tol);

/// Collision certificate for the index-assignment pigeonhole: two tuples in
/// {1..N+1}^N differing in exactly one coordinate with equal images.
struct PigeonholeCertificate {
  int n = 0;
  std::vector<int> alpha_bar, beta_bar;
  int index = 0;  ///< 1-based coordinate where the tuples differ
  long long domain_size = 0, range_size = 0;
};

using IndexAssignment =
    std::function<std::pair<int, std::vector<int>>(const std::vector<int>&)>;

/// Exhaustive search over {1..N+1}^N, 2 ≤ N ≤ 5.  The assignment must send
/// ᾱ to (i, ᾱ with coordinate i replaced by 1); anything else throws
/// InvalidAssignment.
PigeonholeCertificate pigeonhole_certificate(int n, const IndexAssignment& assignment);

struct DecompositionReport {
  std::vector<double> mass;                ///< s_T^i per cocycle index, sums to 1
  std::vector<double> component_integral;  ///< ∫ probe dμ_i (0 when s_T^i = 0)
  double full_integral = 0.0;              ///< ∫ probe dμ_{T,B}
  int dominant_index = 0;                  ///< argmax of mass, smallest on ties
};

/// Partitions the ensemble by the first cocycle that vanishes (|aᵢ(γ)| ≤ tol,
/// smallest index wins) and reports the convex decomposition of μ_{T,B}.
/// Throws HypothesisViolated when some orbit has no vanishing cocycle.
DecompositionReport alternate_livshits_demo(
    const MeasureApprox& m,
    const std::vector<std::function<double(const EnsembleOrbit&)>>& cocycles,
    const FiberWeight& probe, double tol);

}  // namespace rigidlab
