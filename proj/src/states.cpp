#include "grhd/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grhd/flux.hpp"

namespace grhd {

namespace {

struct ResidualParts {
  double psi;
  double s;    // sqrt(1 - M^2/(E+p)^2)
  double rho;  // D s
};

// Psi(p) = D h(p, D s) s + M^2/(E+p) - (E+p), the pressure equation residual.
// Using rho(p) = D s, the enthalpy term expands to
//   D h s = D s + D s e(p, D s) + p,
// which for the ideal EOS collapses to D s + Gamma p / (Gamma - 1) with no
// division by the (possibly denormal-small) density; the residual stays
// evaluable over the whole bracket including s -> 0.
ResidualParts eval_psi(const EosParams& eos, double D, double E, double M2,
                       double p) {
  const double ep = E + p;
  const double s2 = std::max(0.0, 1.0 - M2 / (ep * ep));
  ResidualParts r;
  r.s = std::sqrt(s2);
  r.rho = D * r.s;
  double dhs;  // D h s
  if (eos.is_ideal()) {
    dhs = D * r.s + eos.gamma() * p / (eos.gamma() - 1.0);
  } else {
    if (!(r.rho > 0.0))
      throw SolverError("conserved_to_primitives: vanishing density inside "
                        "the bracket of a user EOS");
    dhs = D * r.s * (1.0 + eos.user().e(p, r.rho)) + p;
  }
  r.psi = dhs + M2 / ep - ep;
  return r;
}

// dPsi/dp with the same cancellations applied; the s -> 0 endpoint returns
// +infinity, which the bisection safeguard absorbs.
double eval_dpsi(const EosParams& eos, double D, double E, double M2, double p,
                 const ResidualParts& r) {
  const double ep = E + p;
  const double dsdp = r.s > 0.0 ? M2 / (ep * ep * ep * r.s)
                                : std::numeric_limits<double>::infinity();
  if (eos.is_ideal())
    return D * dsdp + 1.0 / (eos.gamma() - 1.0) - M2 / (ep * ep);
  const double e = eos.user().e(p, r.rho);
  const double de_dp = eos.user().de_dp(p, r.rho);
  const double de_drho = eos.user().de_drho(p, r.rho);
  return D * dsdp * (1.0 + e) + D * r.s * (de_dp + de_drho * D * dsdp) -
         M2 / (ep * ep);
}

}  // namespace

Primitives make_primitives(double rho, const Vec3& v_dn, double p,
                           const MetricSample& ms, const EosParams& eos) {
  Primitives pr;
  pr.rho = rho;
  pr.v_dn = v_dn;
  pr.p = p;
  pr.v_up = mat_vec(ms.upsilon, v_dn);
  pr.v2 = dot(v_dn, pr.v_up);
  if (!(rho > 0.0) || !(p > 0.0))
    throw DomainError("primitives: rho and p must be positive");
  if (!(pr.v2 < 1.0)) throw DomainError("primitives: superluminal velocity");
  pr.lorentz = 1.0 / std::sqrt(1.0 - pr.v2);
  pr.e = specific_internal_energy(eos, p, rho);
  if (!(pr.e > 0.0))
    throw DomainError("primitives: non-positive specific internal energy");
  pr.h = 1.0 + pr.e + p / rho;
  return pr;
}

ConservedState primitives_to_conserved(const Primitives& prim,
                                       const MetricSample& ms,
                                       const EosParams& eos) {
  (void)eos;
  if (!(prim.rho > 0.0) || !(prim.p > 0.0) || !(prim.e > 0.0) ||
      !(prim.v2 < 1.0))
    throw DomainError("primitives_to_conserved: inadmissible primitives");
  (void)ms;
  const double w2 = prim.lorentz * prim.lorentz;
  const double rho_h_w2 = prim.rho * prim.h * w2;
  ConservedState u;
  u.D = prim.rho * prim.lorentz;
  u.m_dn = rho_h_w2 * prim.v_dn;
  u.E = rho_h_w2 - prim.p;
  return u;
}

double q_gamma(const ConservedState& u, const Mat3& upsilon) {
  const double m2 = quad_form(u.m_dn, upsilon, u.m_dn);
  return u.E - std::sqrt(u.D * u.D + m2);
}

double recovery_residual(const ConservedState& u, const Mat3& upsilon,
                         const EosParams& eos, double p) {
  const double M2 = quad_form(u.m_dn, upsilon, u.m_dn);
  return eval_psi(eos, u.D, u.E, M2, p).psi;
}

Primitives conserved_to_primitives(const ConservedState& u,
                                   const MetricSample& ms, const EosParams& eos,
                                   const RecoveryOptions& opt) {
  const double M2 = quad_form(u.m_dn, ms.upsilon, u.m_dn);
  const double D = u.D, E = u.E;
  if (!(D > 0.0) || !(E - std::sqrt(D * D + M2) > 0.0))
    throw DomainError("conserved_to_primitives: state outside admissible set");

  // Bracket [p_lo, p_hi] with Psi(p_lo) < 0 < Psi(p_hi). The analytic limits
  // guarantee both signs exist; the lower bracket keeps E + p > sqrt(M^2).
  double p_lo = std::max(1e-30, std::sqrt(M2) - E + 1e-12 * E);
  ResidualParts r_lo = eval_psi(eos, D, E, M2, p_lo);
  int guard = 0;
  while (r_lo.psi >= 0.0 && guard++ < 200) {
    p_lo *= 0.1;
    if (p_lo < 1e-300)
      throw SolverError("conserved_to_primitives: no lower bracket");
    r_lo = eval_psi(eos, D, E, M2, p_lo);
  }

  const double gamma_guess = eos.is_ideal() ? eos.gamma() : 5.0 / 3.0;
  double p = std::max((gamma_guess - 1.0) * (E - D - std::sqrt(M2)),
                      2.0 * p_lo);
  double p_hi = std::max(2.0 * p, 1.0);
  ResidualParts r_hi = eval_psi(eos, D, E, M2, p_hi);
  guard = 0;
  while (r_hi.psi <= 0.0) {
    if (guard++ > 400)
      throw SolverError("conserved_to_primitives: no upper bracket");
    p_hi *= 4.0;
    r_hi = eval_psi(eos, D, E, M2, p_hi);
  }

  // Newton with bisection safeguard. dPsi/dp > 0 near the root, so Newton
  // converges once inside the basin; any step leaving the bracket bisects.
  // After the residual contract |Psi| <= tol (E + p) is met, a few polish
  // iterations push the residual to its rounding floor; the pressure of
  // large-Lorentz states would otherwise carry an avoidable O(tol (E+p))
  // error.
  p = std::clamp(p, p_lo, p_hi);
  ResidualParts r = eval_psi(eos, D, E, M2, p);
  bool converged = false;
  int polish = 0;
  double best_p = p;
  double best_abs = std::abs(r.psi);
  for (int it = 0; it < opt.max_iter; ++it) {
    const double abs_psi = std::abs(r.psi);
    if (abs_psi < best_abs) {
      best_abs = abs_psi;
      best_p = p;
    }
    if (abs_psi <= opt.tol * (E + p)) {
      converged = true;
      if (abs_psi <= 1e-15 * (E + p) || polish++ >= 6) break;
    }
    if (r.psi > 0.0)
      p_hi = p;
    else
      p_lo = p;
    const double dpsi = eval_dpsi(eos, D, E, M2, p, r);
    double p_next = dpsi > 0.0 ? p - r.psi / dpsi : p_lo;
    if (!(p_next > p_lo) || !(p_next < p_hi)) p_next = 0.5 * (p_lo + p_hi);
    if (p_next == p) break;
    p = p_next;
    r = eval_psi(eos, D, E, M2, p);
  }
  if (!converged)
    throw SolverError("conserved_to_primitives: pressure solve did not reach " +
                      std::to_string(opt.tol) + " in " +
                      std::to_string(opt.max_iter) + " iterations");
  if (best_p != p) {
    p = best_p;
    r = eval_psi(eos, D, E, M2, p);
  }

  const double inv_ep = 1.0 / (E + p);
  const Vec3 v_dn = inv_ep * u.m_dn;
  return make_primitives(D * r.s, v_dn, p, ms, eos);
}

RescaledState u_to_w(const ConservedState& u, const MetricSample& ms) {
  RescaledState w;
  w.w = ms.sqrt_gamma * ms.sigma.apply(u.as_vec());
  return w;
}

ConservedState w_to_u(const RescaledState& w, const MetricSample& ms) {
  return ConservedState::from_vec((1.0 / ms.sqrt_gamma) * ms.sigma.solve(w.w));
}

double q_star(const Vec5& w) {
  return w[4] -
         std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
}

double q_star(const RescaledState& w) { return q_star(w.w); }

bool is_in_G_eps(const Vec5& w, double eps) {
  return w[0] >= eps && q_star(w) >= eps;
}

bool is_in_G_eps(const RescaledState& w, double eps) {
  return is_in_G_eps(w.w, eps);
}

PointState recover_point(const Vec5& w, const MetricSample& ms,
                         const EosParams& eos, const RecoveryOptions& opt) {
  PointState ps;
  ps.u = w_to_u(RescaledState{w}, ms);
  ps.prim = conserved_to_primitives(ps.u, ms, eos, opt);
  return ps;
}

Vec5 source_S(const PointState& ps, const MetricSample& ms) {
  // Left-multiplying the conservative system by Sigma turns the geometric
  // source Q into Sigma Q; the first component stays exactly zero.
  const Vec5 u5 = ps.u.as_vec();
  Vec5 s = ms.sqrt_gamma * ms.dsigma_dt.apply(u5);
  const Vec5 q = source_Q(ps.prim, ms);
  s += ms.sqrt_neg_g * ms.sigma.apply(q);
  for (int j = 0; j < 3; ++j) {
    const Vec5 f = physical_flux(ps.prim, ps.u, ms, j);
    s += ms.sqrt_neg_g * ms.dsigma_dx[j].apply(f);
  }
  return s;
}

Vec5 source_S(const RescaledState& w, const MetricSample& ms,
              const EosParams& eos) {
  return source_S(recover_point(w.w, ms, eos), ms);
}

double lambda_S_solve(const Vec5& w, const Vec5& s) {
  if (!(q_star(w) > 0.0))
    throw DomainError("lambda_S_solve: base state not strictly admissible");
  if (q_star(s) >= 0.0) return 0.0;

  // Solve q(w + mu s) = 0 for mu = 1/lambda_S. q is concave along the ray,
  // q(w) > 0 and q -> -inf, so the root is unique; bisection on a bracket
  // grown geometrically from mu = 1.
  const auto g = [&](double mu) { return q_star(w + mu * s); };
  double mu_lo = 0.0, mu_hi = 1.0;
  int guard = 0;
  while (g(mu_hi) > 0.0) {
    mu_lo = mu_hi;
    mu_hi *= 2.0;
    if (guard++ > 400) throw SolverError("lambda_S_solve: no bracket");
  }
  const double tol = 1e-12 * w[4];
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (mu_lo + mu_hi);
    const double q = g(mid);
    if (std::abs(q) <= tol || (mu_hi - mu_lo) <= 1e-15 * mu_hi) {
      // Land on the admissible side of the bracket.
      return 1.0 / (q >= 0.0 ? mid : mu_lo);
    }
    if (q > 0.0)
      mu_lo = mid;
    else
      mu_hi = mid;
  }
  if (mu_lo > 0.0) return 1.0 / mu_lo;
  throw SolverError("lambda_S_solve: bisection stalled");
}

}  // namespace grhd
