#pragma once

namespace grhd {

/// Shu-Osher SSP-RK3: three forward-Euler applications combined with the
/// (1, 1/4, 2/3) convex weights. euler(t, s) must return s + dt L(s);
/// blend(a, x, b, y) returns a*x + b*y. For a stage operator depending only
/// on t this reduces to Simpson's rule, exact through cubic integrands.
template <class State, class Euler, class Blend>
State ssp_rk3_step(const State& u0, double t, double dt, Euler&& euler,
                   Blend&& blend) {
  State u1 = euler(t, u0);
  State u2 = blend(0.75, u0, 0.25, euler(t + dt, u1));
  return blend(1.0 / 3.0, u0, 2.0 / 3.0, euler(t + 0.5 * dt, u2));
}

}  // namespace grhd
