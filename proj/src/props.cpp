#include <cmath>
#include <ostream>

#include "grhd/driver.hpp"
#include "grhd/flux.hpp"
#include "grhd/sampling.hpp"

namespace grhd {

namespace {

struct Suite {
  std::ostream& out;
  int failures = 0;

  void report(const char* name, bool ok, const std::string& detail = {}) {
    out << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!ok && !detail.empty()) out << "  (" << detail << ")";
    out << "\n";
    if (!ok) ++failures;
  }
};

}  // namespace

int run_property_suite(unsigned long seed, std::ostream& out) {
  Suite suite{out};
  std::mt19937_64 rng(seed);
  const EosParams eos = EosParams::ideal(5.0 / 3.0);

  // Set equivalence: admissible conserved states recover to admissible
  // primitives; inadmissible ones are rejected.
  {
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 2000 && ok; ++trial) {
      const Mat3 up = trial % 2 ? random_spd_upsilon(rng) : identity3();
      const MetricSample ms = metric_from_upsilon(up);
      const ConservedState u = random_admissible_conserved(rng, up);
      try {
        const Primitives pr = conserved_to_primitives(u, ms, eos);
        if (!(pr.rho > 0 && pr.p > 0 && pr.e > 0 && pr.v2 < 1)) {
          ok = false;
          detail = "recovered primitives not admissible";
        }
      } catch (const Error& e) {
        ok = false;
        detail = e.what();
      }
    }
    for (int trial = 0; trial < 2000 && ok; ++trial) {
      const Mat3 up = random_spd_upsilon(rng);
      const MetricSample ms = metric_from_upsilon(up);
      ConservedState u = random_admissible_conserved(rng, up);
      u.E = std::sqrt(u.D * u.D + quad_form(u.m_dn, up, u.m_dn)) * 0.999;
      try {
        (void)conserved_to_primitives(u, ms, eos);
        ok = false;
        detail = "inadmissible state was not rejected";
      } catch (const DomainError&) {
      }
    }
    suite.report("set-equivalence (recovery on sampled states)", ok, detail);
  }

  // LxF splitting of the physical flux.
  {
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 2000 && ok; ++trial) {
      const Mat3 up = trial % 2 ? random_spd_upsilon(rng) : identity3();
      const MetricSample ms = metric_from_upsilon(up);
      const Primitives pr = random_admissible_primitives(rng, ms, eos);
      const ConservedState u = primitives_to_conserved(pr, ms, eos);
      const DirectionVector xi =
          DirectionVector::make(random_direction(rng), ms);
      for (int which = 0; which < 2 && ok; ++which) {
        const double rho_xi = which == 0
                                  ? speed_bound_general(xi, ms).rho_xi
                                  : speed_bound_ideal(pr, xi, ms, eos).rho_xi;
        Vec5 xf = zero5();
        for (int l = 0; l < 3; ++l)
          xf += xi.xi_dn[l] * physical_flux(pr, u, ms, l);
        for (double sign : {1.0, -1.0}) {
          const Vec5 split = u.as_vec() + (sign / rho_xi) * xf;
          const ConservedState us = ConservedState::from_vec(split);
          if (!(q_gamma(us, up) >= -1e-11 * u.E) ||
              !(us.D >= -1e-11 * u.D)) {
            ok = false;
            detail = "splitting left the closure";
          }
        }
      }
    }
    suite.report("LxF splitting (general and ideal bounds)", ok, detail);
  }

  // Convexity and scaling invariance of the admissible set.
  {
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 20000 && ok; ++trial) {
      const Mat3 up = random_spd_upsilon(rng);
      const ConservedState a = random_admissible_conserved(rng, up);
      const ConservedState b = random_admissible_conserved(rng, up);
      const double lam = 0.1 + 0.8 * (trial % 9) / 8.0;
      const Vec5 mix = lam * a.as_vec() + (1.0 - lam) * b.as_vec();
      const ConservedState m = ConservedState::from_vec(mix);
      if (!is_admissible(m, up)) {
        ok = false;
        detail = "convex combination left the set";
      }
      for (double s : {1e-6, 1.0, 1e6})
        if (!is_admissible(ConservedState::from_vec(s * a.as_vec()), up)) {
          ok = false;
          detail = "scaling left the set";
        }
    }
    suite.report("convexity and scaling invariance", ok, detail);
  }

  // Concavity of q along segments in the rescaled variables.
  {
    bool ok = true;
    std::string detail;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 20000 && ok; ++trial) {
      const Mat3 up = random_spd_upsilon(rng);
      const MetricSample ms = metric_from_upsilon(up);
      Vec5 wa = u_to_w(random_admissible_conserved(rng, up), ms).w;
      Vec5 wb = u_to_w(random_admissible_conserved(rng, up), ms).w;
      wa = (1.0 / wa[4]) * wa;  // unit-normalized; q is homogeneous
      wb = (1.0 / wb[4]) * wb;
      const Vec5 mid = 0.5 * (wa + wb);
      if (!(q_star(mid) >= 0.5 * q_star(wa) + 0.5 * q_star(wb) - 1e-14)) {
        ok = false;
        detail = "midpoint concavity violated";
      }
    }
    suite.report("concavity of the admissibility margin q", ok, detail);
  }

  out << (suite.failures == 0 ? "all property suites passed\n"
                              : "property suite failures detected\n");
  return suite.failures;
}

}  // namespace grhd
