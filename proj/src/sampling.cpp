#include "grhd/sampling.hpp"

#include <cmath>

namespace grhd {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

Vec3 unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  double norm = 0.0;
  do {
    v = {n(rng), n(rng), n(rng)};
    norm = std::sqrt(dot(v, v));
  } while (norm < 1e-8);
  return (1.0 / norm) * v;
}

}  // namespace

Mat3 random_spd_upsilon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Mat3 l{};
  for (int i = 0; i < 3; ++i) {
    l[i][i] = log_uniform(rng, 0.3, 3.0);
    for (int j = 0; j < i; ++j) l[i][j] = u(rng) * l[i][i];
  }
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m[i][j] = 0.0;
      for (int k = 0; k < 3; ++k) m[i][j] += l[i][k] * l[j][k];
    }
  return m;
}

MetricSample metric_from_upsilon(const Mat3& upsilon) {
  MetricSample ms{};
  ms.alpha = 1.0;
  ms.beta_up = {0, 0, 0};
  ms.upsilon = upsilon;
  const double du = det(upsilon);
  if (!(du > 0.0)) throw MetricError("metric_from_upsilon: Upsilon not SPD");
  ms.gamma_dn = inverse(upsilon, du);
  ms.gamma_det = 1.0 / du;
  ms.sqrt_gamma = std::sqrt(ms.gamma_det);
  ms.sqrt_neg_g = ms.sqrt_gamma;
  ms.sigma = cholesky_sigma(upsilon);
  for (auto& row : ms.g_up) row.fill(0.0);
  for (auto& row : ms.g_dn) row.fill(0.0);
  ms.g_dn[0][0] = -1.0;
  ms.g_up[0][0] = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ms.g_dn[i + 1][j + 1] = ms.gamma_dn[i][j];
      ms.g_up[i + 1][j + 1] = upsilon[i][j];
    }
  for (auto& m : ms.dg)
    for (auto& row : m) row.fill(0.0);
  ms.dalpha_dx = {0, 0, 0};
  ms.dalpha_dt = 0.0;
  return ms;
}

Primitives random_admissible_primitives(std::mt19937_64& rng,
                                        const MetricSample& ms,
                                        const EosParams& eos,
                                        const PrimitiveRanges& r) {
  const double p = log_uniform(rng, r.p_min, r.p_max);
  const double rho = p / log_uniform(rng, r.ratio_min, r.ratio_max);
  const double lorentz = log_uniform(rng, 1.0 + 1e-12, r.lorentz_max);
  const double v = std::sqrt(1.0 - 1.0 / (lorentz * lorentz));
  // scale a random direction so that v_j v^j matches v^2 in this metric
  const Vec3 dir = unit_vector(rng);
  const double norm2 = quad_form(dir, ms.upsilon, dir);
  const Vec3 v_dn = (v / std::sqrt(norm2)) * dir;
  return make_primitives(rho, v_dn, p, ms, eos);
}

ConservedState random_admissible_conserved(std::mt19937_64& rng,
                                           const Mat3& upsilon) {
  for (;;) {
    ConservedState s;
    s.D = log_uniform(rng, 1e-6, 1e2);
    const Vec3 dir = unit_vector(rng);
    const double m = log_uniform(rng, 1e-8, 1e2);
    s.m_dn = m * dir;
    // Energy above the admissibility threshold by a log-uniform margin so
    // both near-boundary and deep-interior states appear.
    const double thresh =
        std::sqrt(s.D * s.D + quad_form(s.m_dn, upsilon, s.m_dn));
    s.E = thresh * (1.0 + log_uniform(rng, 1e-9, 1e1));
    if (q_gamma(s, upsilon) > 0.0) return s;
  }
}

Vec3 random_direction(std::mt19937_64& rng) {
  return log_uniform(rng, 0.1, 10.0) * unit_vector(rng);
}

double recovery_conditioning_floor(const Primitives& prim,
                                   const EosParams& eos) {
  const double gamma = eos.is_ideal() ? eos.gamma() : 5.0 / 3.0;
  const double w2 = prim.lorentz * prim.lorentz;
  const double ep = prim.rho * prim.h * w2;  // E + p
  // d(Ds)/dp and the residual slope at the root, closed forms for the
  // pressure equation
  const double ds_term = prim.rho * w2 * prim.v2 / ep;
  const double dpsi_dp = ds_term + 1.0 / (gamma - 1.0) - prim.v2;
  const double dpsi_de = 1.0 + prim.v2 + ds_term;
  constexpr double eps_mach = 2.22e-16;
  return eps_mach * ep * dpsi_de / (prim.p * std::max(dpsi_dp, 1e-300));
}

}  // namespace grhd
