#pragma once

#include <functional>
#include <vector>

#include "grhd/errors.hpp"

namespace grhd {

/// Closure e = e(p, rho) for a user-supplied equation of state. The partials
/// are required; enthalpy and its partials are derived from h = 1 + e + p/rho
/// so there is a single source of truth.
struct UserEosFunctions {
  std::function<double(double p, double rho)> e;
  std::function<double(double p, double rho)> de_dp;
  std::function<double(double p, double rho)> de_drho;
};

enum class EosKind { Ideal, UserDefined };

class EosParams {
 public:
  /// Ideal EOS h = 1 + Gamma p / ((Gamma-1) rho), Gamma in (1, 2].
  static EosParams ideal(double gamma);
  static EosParams user_defined(UserEosFunctions fns);

  EosKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  bool is_ideal() const { return kind_ == EosKind::Ideal; }

  const UserEosFunctions& user() const { return user_; }

 private:
  EosParams() = default;
  EosKind kind_ = EosKind::Ideal;
  double gamma_ = 5.0 / 3.0;
  UserEosFunctions user_;
};

/// One admissible thermodynamic state with its derived quantities.
struct ThermoPoint {
  double rho;
  double p;
  double e;
  double h;
  double cs;
};

double specific_internal_energy(const EosParams& eos, double p, double rho);
double specific_enthalpy(const EosParams& eos, double p, double rho);

struct EnthalpyPartials {
  double dh_dp;
  double dh_drho;
};

/// Partials of h; throws DomainError on non-positive input and DomainError if
/// the EOS violates the causality condition h(1/rho - dh/dp) < dh/drho < 0 at
/// the query point.
EnthalpyPartials enthalpy_partials(const EosParams& eos, double p, double rho);

/// Local sound speed, cs in (0, 1). Uses the general formula
/// cs^2 = (dh/drho) / (h (1/rho - dh/dp)).
double sound_speed(const EosParams& eos, double p, double rho);

ThermoPoint thermo_point(const EosParams& eos, double p, double rho);

struct EosConditionSample {
  double p;
  double rho;
  bool enthalpy_lower_bound_ok;  // h >= sqrt(1 + p^2/rho^2) + p/rho
  bool causality_ok;             // h (1/rho - dh/dp) < dh/drho < 0
};

struct EosConditionReport {
  std::vector<EosConditionSample> samples;
  bool all_ok;
};

/// Checks the admissibility inequalities on a user-declared list of (p, rho)
/// samples. Reporting only; never throws on a failed inequality.
EosConditionReport check_eos_conditions(
    const EosParams& eos, const std::vector<std::pair<double, double>>& samples);

}  // namespace grhd
