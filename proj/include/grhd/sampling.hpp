#pragma once

#include <random>

#include "grhd/states.hpp"

namespace grhd {

/// Random SPD inverse spatial metric, built as L L^T from a lower-triangular
/// factor with log-uniform diagonal in [0.3, 3] and bounded off-diagonals.
Mat3 random_spd_upsilon(std::mt19937_64& rng);

/// Metric sample for a constant metric whose Upsilon is as given (unit
/// lapse, zero shift); handy for sampling-based set-membership tests.
MetricSample metric_from_upsilon(const Mat3& upsilon);

struct PrimitiveRanges {
  double p_min = 1e-10;
  double p_max = 1e2;
  /// pressure-to-density ratio; coupling the two keeps the recovery
  /// double-precision-representable at large Lorentz factors
  double ratio_min = 1e-2;
  double ratio_max = 1e2;
  double lorentz_max = 1e2;
};

/// Log-uniform pressure and p/rho ratio, isotropic velocity direction with
/// log-uniform Lorentz factor in [1, lorentz_max].
Primitives random_admissible_primitives(std::mt19937_64& rng,
                                        const MetricSample& ms,
                                        const EosParams& eos,
                                        const PrimitiveRanges& r = {});

/// Rejection-sampled conserved state with D > 0 and q_gamma > 0; margins can
/// get arbitrarily small.
ConservedState random_admissible_conserved(std::mt19937_64& rng,
                                           const Mat3& upsilon);

/// Random direction with log-uniform magnitude in [0.1, 10].
Vec3 random_direction(std::mt19937_64& rng);

/// Intrinsic double-precision floor of the relative pressure error of
/// conservative-to-primitive recovery at this state: one ulp of E already
/// moves the pressure root by ~ eps (E+p) |dPsi/dE| / (p dPsi/dp). States
/// with a large floor (ultrarelativistic with Gamma near 2 and p >> rho)
/// cannot round-trip to arbitrary accuracy regardless of the solver.
double recovery_conditioning_floor(const Primitives& prim,
                                   const EosParams& eos);

}  // namespace grhd
