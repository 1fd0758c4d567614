#include "grhd/flux.hpp"

#include <algorithm>
#include <cmath>

namespace grhd {

DirectionVector DirectionVector::make(const Vec3& xi_dn, const MetricSample& ms) {
  DirectionVector d;
  d.xi_dn = xi_dn;
  d.xi_up = mat_vec(ms.upsilon, xi_dn);
  d.xi_sq = dot(xi_dn, d.xi_up);
  if (!(d.xi_sq > 0.0))
    throw ContractError("direction vector must be nonzero");
  return d;
}

Vec5 physical_flux(const Primitives& prim, const ConservedState& u,
                   const MetricSample& ms, int axis) {
  const double vt = prim.v_up[axis] - ms.beta_up[axis] / ms.alpha;
  Vec5 f;
  f[0] = u.D * vt;
  for (int j = 0; j < 3; ++j) f[1 + j] = vt * u.m_dn[j];
  f[1 + axis] += prim.p;
  f[4] = u.E * vt + prim.p * prim.v_up[axis];
  return f;
}

Vec5 rescaled_flux(const PointState& ps, const MetricSample& ms, int axis) {
  return ms.sqrt_neg_g * ms.sigma.apply(physical_flux(ps.prim, ps.u, ms, axis));
}

Vec5 rescaled_flux(const RescaledState& w, const MetricSample& ms,
                   const EosParams& eos, int axis) {
  return rescaled_flux(recover_point(w.w, ms, eos), ms, axis);
}

SpeedBound speed_bound_general(const DirectionVector& xi,
                               const MetricSample& ms) {
  SpeedBound b;
  b.rho_xi = std::sqrt(xi.xi_sq) +
             std::abs(dot(xi.xi_dn, ms.beta_up)) / ms.alpha;
  b.eta_xi = ms.alpha * b.rho_xi;
  return b;
}

SpeedBound speed_bound_ideal(const Primitives& prim, const DirectionVector& xi,
                             const MetricSample& ms, const EosParams& eos) {
  if (!eos.is_ideal())
    throw UnsupportedError("speed_bound_ideal: ideal EOS only");
  const double cs = sound_speed(eos, prim.p, prim.rho);
  const double cs2 = cs * cs;
  const double xiv = dot(xi.xi_dn, prim.v_up);
  const double a = 1.0 - prim.v2 * cs2;
  const double rad =
      std::max(0.0, a * xi.xi_sq - (1.0 - cs2) * xiv * xiv);
  SpeedBound b;
  b.rho_xi = (std::abs(xiv) * (1.0 - cs2) +
              cs / prim.lorentz * std::sqrt(rad)) /
                 a +
             std::abs(dot(xi.xi_dn, ms.beta_up)) / ms.alpha;
  b.eta_xi = ms.alpha * b.rho_xi;
  return b;
}

SpeedBound speed_bound_sigma_variant(const Primitives& prim,
                                     const DirectionVector& xi,
                                     const MetricSample& ms) {
  if (!(prim.p > 0.0))
    throw DomainError("speed_bound_sigma_variant: p must be positive");
  const double rh_p = prim.rho * prim.h - prim.p;
  const double w2 = prim.lorentz * prim.lorentz;
  const double vs =
      std::max(0.0, (rh_p * rh_p - prim.rho * prim.rho - prim.p * prim.p)) *
      w2 / (prim.p * prim.p);
  const double xiv = dot(xi.xi_dn, prim.v_up);
  const double rad =
      std::max(0.0, (vs + 1.0) * xi.xi_sq - vs * xiv * xiv);
  SpeedBound b;
  b.rho_xi = (vs * std::abs(xiv) + std::sqrt(rad)) / (vs + 1.0) +
             std::abs(dot(xi.xi_dn, ms.beta_up)) / ms.alpha;
  b.eta_xi = ms.alpha * b.rho_xi;
  return b;
}

std::array<double, 5> eigenvalues(const Primitives& prim,
                                  const DirectionVector& xi,
                                  const MetricSample& ms,
                                  const EosParams& eos) {
  const double cs = sound_speed(eos, prim.p, prim.rho);
  const double cs2 = cs * cs;
  const double xiv = dot(xi.xi_dn, prim.v_up);
  const double shift = dot(xi.xi_dn, ms.beta_up) / ms.alpha;
  const double a = 1.0 - prim.v2 * cs2;
  const double rad =
      std::max(0.0, a * xi.xi_sq - (1.0 - cs2) * xiv * xiv);
  const double mid = xiv - shift;
  const double fast = cs / prim.lorentz * std::sqrt(rad);
  const double lm = (xiv * (1.0 - cs2) - fast) / a - shift;
  const double lp = (xiv * (1.0 - cs2) + fast) / a - shift;
  return {lm, mid, mid, mid, lp};
}

}  // namespace grhd
