#include "grhd/eos.hpp"

#include <cmath>

namespace grhd {

namespace {

// Inputs this small are rejected rather than clamped; keeps errors loud.
constexpr double kDomainFloor = 1e-30;

void require_positive(double p, double rho) {
  if (!(p > kDomainFloor) || !(rho > kDomainFloor))
    throw DomainError("eos: pressure and density must be positive");
}

}  // namespace

EosParams EosParams::ideal(double gamma) {
  if (!(gamma > 1.0) || !(gamma <= 2.0))
    throw ConfigError("eos: adiabatic index must lie in (1, 2]");
  EosParams e;
  e.kind_ = EosKind::Ideal;
  e.gamma_ = gamma;
  return e;
}

EosParams EosParams::user_defined(UserEosFunctions fns) {
  if (!fns.e || !fns.de_dp || !fns.de_drho)
    throw ConfigError("eos: user EOS must supply e, de_dp and de_drho");
  EosParams e;
  e.kind_ = EosKind::UserDefined;
  e.user_ = std::move(fns);
  return e;
}

double specific_internal_energy(const EosParams& eos, double p, double rho) {
  require_positive(p, rho);
  if (eos.is_ideal()) return p / ((eos.gamma() - 1.0) * rho);
  return eos.user().e(p, rho);
}

double specific_enthalpy(const EosParams& eos, double p, double rho) {
  require_positive(p, rho);
  return 1.0 + specific_internal_energy(eos, p, rho) + p / rho;
}

EnthalpyPartials enthalpy_partials(const EosParams& eos, double p, double rho) {
  require_positive(p, rho);
  EnthalpyPartials d;
  if (eos.is_ideal()) {
    // satisfies the causality inequality exactly for Gamma in (1, 2]; the
    // floating-point margin shrinks below machine precision at extreme
    // p/rho, so no runtime re-check here
    d.dh_dp = eos.gamma() / ((eos.gamma() - 1.0) * rho);
    d.dh_drho = -eos.gamma() * p / ((eos.gamma() - 1.0) * rho * rho);
    return d;
  }
  d.dh_dp = eos.user().de_dp(p, rho) + 1.0 / rho;
  d.dh_drho = eos.user().de_drho(p, rho) - p / (rho * rho);
  const double h = specific_enthalpy(eos, p, rho);
  if (!(d.dh_drho < 0.0) || !(h * (1.0 / rho - d.dh_dp) < d.dh_drho))
    throw DomainError("eos: causality condition violated at query point");
  return d;
}

double sound_speed(const EosParams& eos, double p, double rho) {
  if (eos.is_ideal()) {
    // cs^2 = Gamma p / (rho h), cancellation-free
    const double h = specific_enthalpy(eos, p, rho);
    const double cs2 = eos.gamma() * p / (rho * h);
    if (!(cs2 > 0.0) || !(cs2 < 1.0))
      throw DomainError("eos: sound speed outside (0,1)");
    return std::sqrt(cs2);
  }
  const EnthalpyPartials d = enthalpy_partials(eos, p, rho);
  const double h = specific_enthalpy(eos, p, rho);
  const double cs2 = d.dh_drho / (h * (1.0 / rho - d.dh_dp));
  if (!(cs2 > 0.0) || !(cs2 < 1.0))
    throw DomainError("eos: sound speed outside (0,1); non-causal EOS");
  return std::sqrt(cs2);
}

ThermoPoint thermo_point(const EosParams& eos, double p, double rho) {
  ThermoPoint t;
  t.p = p;
  t.rho = rho;
  t.e = specific_internal_energy(eos, p, rho);
  t.h = 1.0 + t.e + p / rho;
  t.cs = sound_speed(eos, p, rho);
  return t;
}

EosConditionReport check_eos_conditions(
    const EosParams& eos,
    const std::vector<std::pair<double, double>>& samples) {
  EosConditionReport report;
  report.all_ok = true;
  report.samples.reserve(samples.size());
  for (const auto& [p, rho] : samples) {
    EosConditionSample s;
    s.p = p;
    s.rho = rho;
    const double h = specific_enthalpy(eos, p, rho);
    const double x = p / rho;
    s.enthalpy_lower_bound_ok = h >= std::sqrt(1.0 + x * x) + x;
    s.causality_ok = true;
    try {
      (void)enthalpy_partials(eos, p, rho);
    } catch (const DomainError&) {
      s.causality_ok = false;
    }
    report.all_ok = report.all_ok && s.enthalpy_lower_bound_ok && s.causality_ok;
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace grhd
