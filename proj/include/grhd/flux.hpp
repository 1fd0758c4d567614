#pragma once

#include "grhd/states.hpp"

namespace grhd {

/// Nonzero covariant direction vector with its raised components cached.
struct DirectionVector {
  Vec3 xi_dn;
  Vec3 xi_up;     // Upsilon xi
  double xi_sq;   // xi_j xi^j

  static DirectionVector make(const Vec3& xi_dn, const MetricSample& ms);
};

/// Wave-speed bound: rho_xi for the U-system, eta_xi = alpha rho_xi for the
/// W-system.
struct SpeedBound {
  double rho_xi;
  double eta_xi;
};

/// Physical flux F^i = (D vt^i, vt^i m + p e_i, E vt^i + p v^i) with
/// vt^i = v^i - beta^i / alpha. prim and u must describe the same state.
Vec5 physical_flux(const Primitives& prim, const ConservedState& u,
                   const MetricSample& ms, int axis);

/// Rescaled flux H^j(W) = sqrt(-g) Sigma F^j from a recovered point state.
Vec5 rescaled_flux(const PointState& ps, const MetricSample& ms, int axis);

/// Convenience overload that runs the recovery first.
Vec5 rescaled_flux(const RescaledState& w, const MetricSample& ms,
                   const EosParams& eos, int axis);

/// EOS-agnostic bound rho_xi = sqrt(xi_j xi^j) + |xi_j beta^j| / alpha.
SpeedBound speed_bound_general(const DirectionVector& xi, const MetricSample& ms);

/// Sharper bound valid for the ideal EOS; always <= the general bound.
/// Throws UnsupportedError for a non-ideal EOS.
SpeedBound speed_bound_ideal(const Primitives& prim, const DirectionVector& xi,
                             const MetricSample& ms, const EosParams& eos);

/// The varsigma-based alternative. Valid for the LxF splitting property but
/// generally NOT an upper bound of the spectral radius; never use it as a CFL
/// speed.
SpeedBound speed_bound_sigma_variant(const Primitives& prim,
                                     const DirectionVector& xi,
                                     const MetricSample& ms);

/// The five eigenvalues of d(xi_j F^j)/dU, sorted ascending. The middle three
/// coincide.
std::array<double, 5> eigenvalues(const Primitives& prim,
                                  const DirectionVector& xi,
                                  const MetricSample& ms, const EosParams& eos);

}  // namespace grhd
