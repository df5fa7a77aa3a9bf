#pragma once

#include "rigidlab/fields.hpp"
#include "rigidlab/toral.hpp"

namespace rigidlab {

/// Suspension of a toral automorphism under a positive trigonometric roof.
class SuspensionFlow {
 public:
  const ToralAutomorphism& base() const { return base_; }
  const ScalarField& roof() const { return roof_; }
  /// Certified positive lower bound of the roof.
  double roof_min() const { return roof_min_; }

  friend SuspensionFlow make_suspension(ToralAutomorphism base, ScalarField roof);

 private:
  SuspensionFlow(ToralAutomorphism base, ScalarField roof, double roof_min)
      : base_(std::move(base)), roof_(std::move(roof)), roof_min_(roof_min) {}
  ToralAutomorphism base_;
  ScalarField roof_;
  double roof_min_;
};

SuspensionFlow make_suspension(ToralAutomorphism base, ScalarField roof);

/// Flow-level data attached to a base periodic orbit.
struct FlowOrbitData {
  MapOrbit map_orbit;
  double period = 0.0;      ///< T = Birkhoff sum of the roof
  double exponent = 0.0;    ///< χ = k log λ / T
  double multiplier = 0.0;  ///< μ = |λ|^{-k} ∈ (0, 1)
};

/// Compensated Birkhoff sum of the roof over the orbit.
double orbit_period(const SuspensionFlow& flow, const MapOrbit& orbit);

FlowOrbitData orbit_flow_data(const SuspensionFlow& flow, const MapOrbit& orbit);

/// Σᵢ ∫₀^{roof(xᵢ)} φ(xᵢ, s) ds with per-fiber Gauss-Legendre quadrature,
/// exact on the polynomial fiber degree.  node_override > 0 forces a node
/// count (used by quadrature-exactness checks).
double weight_integral(const SuspensionFlow& flow, const FiberWeight& phi,
                       const MapOrbit& orbit, int node_override = 0);

/// Point of the mapping torus: base point plus fiber height in [0, roof(x)).
struct FlowPoint {
  Vec2 x;
  double s = 0.0;
};

/// Time-t flow with lazy gluing (x, roof(x)) ~ (Ax, 0); t >= 0.
FlowPoint advance(const SuspensionFlow& flow, FlowPoint p, double t);

}  // namespace rigidlab
