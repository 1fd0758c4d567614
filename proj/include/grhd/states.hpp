#pragma once

#include "grhd/eos.hpp"
#include "grhd/spacetime.hpp"
#include "grhd/vec.hpp"

namespace grhd {

/// Primitive state (rho, v_j, p) with the derived quantities filled in for
/// the metric it was built against. v_dn holds the covariant components.
struct Primitives {
  double rho = 0;
  Vec3 v_dn = {0, 0, 0};
  double p = 0;
  // derived
  Vec3 v_up = {0, 0, 0};  // gamma^{jk} v_k
  double v2 = 0;          // v_j v^j
  double lorentz = 1;     // (1 - v^2)^{-1/2}
  double e = 0;
  double h = 1;
};

/// Conserved 5-vector U = (D, m_1, m_2, m_3, E).
struct ConservedState {
  double D = 0;
  Vec3 m_dn = {0, 0, 0};
  double E = 0;

  Vec5 as_vec() const { return {D, m_dn[0], m_dn[1], m_dn[2], E}; }
  static ConservedState from_vec(const Vec5& u) {
    return {u[0], {u[1], u[2], u[3]}, u[4]};
  }
};

/// Rescaled state W = sqrt(gamma) Sigma U, living in the spacetime-independent
/// admissible set.
struct RescaledState {
  Vec5 w = zero5();
};

struct EpsilonFloor {
  double eps = 1e-12;
};

/// Builds the derived members of a primitive state and validates
/// rho > 0, p > 0, e > 0, v < 1. Throws DomainError otherwise.
Primitives make_primitives(double rho, const Vec3& v_dn, double p,
                           const MetricSample& ms, const EosParams& eos);

/// Forward map: D = rho W, m_j = rho h W^2 v_j, E = rho h W^2 - p.
ConservedState primitives_to_conserved(const Primitives& prim,
                                       const MetricSample& ms,
                                       const EosParams& eos);

/// q_gamma(U) = E - sqrt(D^2 + m Upsilon m^T); U is admissible iff D > 0 and
/// q_gamma(U) > 0.
double q_gamma(const ConservedState& u, const Mat3& upsilon);

inline bool is_admissible(const ConservedState& u, const Mat3& upsilon) {
  return u.D > 0.0 && q_gamma(u, upsilon) > 0.0;
}

struct RecoveryOptions {
  double tol = 1e-12;  // residual target |Psi| <= tol * (E + p)
  int max_iter = 200;
};

/// Conservative-to-primitive recovery: solves the pressure equation
/// Psi(p) = 0 (unique positive root for admissible U) by bracketed Newton
/// with bisection safeguard, then v_j = m_j / (E + p), rho = D sqrt(1 - v^2).
/// Throws DomainError for inadmissible U and SolverError on non-convergence.
Primitives conserved_to_primitives(const ConservedState& u,
                                   const MetricSample& ms, const EosParams& eos,
                                   const RecoveryOptions& opt = {});

/// Pressure-equation residual Psi^[U](p); exposed for oracle tests.
double recovery_residual(const ConservedState& u, const Mat3& upsilon,
                         const EosParams& eos, double p);

RescaledState u_to_w(const ConservedState& u, const MetricSample& ms);
ConservedState w_to_u(const RescaledState& w, const MetricSample& ms);

/// q(W) = W4 - sqrt(W0^2 + W1^2 + W2^2 + W3^2); concave in W.
double q_star(const RescaledState& w);
double q_star(const Vec5& w);

inline bool is_in_G_star(const Vec5& w) { return w[0] > 0.0 && q_star(w) > 0.0; }

/// Closed floored set: W0 >= eps and q(W) >= eps.
bool is_in_G_eps(const RescaledState& w, double eps);
bool is_in_G_eps(const Vec5& w, double eps);
inline bool is_in_G_eps(const Vec5& w, const EpsilonFloor& floor) {
  if (!(floor.eps > 0.0)) throw DomainError("EpsilonFloor: eps must be > 0");
  return is_in_G_eps(w, floor.eps);
}

/// Primitive/conserved pair recovered from a rescaled state at one point;
/// the flux routines take this to avoid re-running the root solve.
struct PointState {
  Primitives prim;
  ConservedState u;
};

PointState recover_point(const Vec5& w, const MetricSample& ms,
                         const EosParams& eos,
                         const RecoveryOptions& opt = {});

/// Geometric source in W-form,
///   S(W) = sqrt(gamma) (dSigma/dt) U + sqrt(-g) (Q + (dSigma/dx^j) F^j),
/// evaluated from an already recovered point state. The first component is
/// exactly zero.
Vec5 source_S(const PointState& ps, const MetricSample& ms);
Vec5 source_S(const RescaledState& w, const MetricSample& ms,
              const EosParams& eos);

/// lambda_S entering the source-aware CFL conditions: 0 when q(s) >= 0,
/// otherwise the unique positive solution of q(w + lambda^{-1} s) = 0
/// (unique by concavity of q along the ray). Requires q(w) > 0. The returned
/// value errs on the large (safe) side of the bisection bracket.
double lambda_S_solve(const Vec5& w, const Vec5& s);

}  // namespace grhd
