#pragma once

#include <functional>

#include "grhd/errors.hpp"
#include "grhd/vec.hpp"

namespace grhd {

struct Primitives;  // states.hpp

/// Upper-triangular factor of the 5x5 rescaling matrix
///
///   Sigma = [ 1  0   0   0   0 ]
///           [ 0 s11 s12 s13  0 ]
///           [ 0  0  s22 s23  0 ]
///           [ 0  0   0  s33  0 ]
///           [ 0  0   0   0   1 ]
///
/// with Sigma^T Sigma = diag{1, Upsilon, 1}. Only the six inner entries are
/// stored; apply/solve act on 5-vectors.
struct SigmaFactor {
  double s11 = 1, s12 = 0, s13 = 0, s22 = 1, s23 = 0, s33 = 1;

  Vec5 apply(const Vec5& u) const {
    return {u[0],
            s11 * u[1] + s12 * u[2] + s13 * u[3],
            s22 * u[2] + s23 * u[3],
            s33 * u[3],
            u[4]};
  }

  /// Back-substitution for Sigma x = w.
  Vec5 solve(const Vec5& w) const {
    Vec5 u;
    u[0] = w[0];
    u[4] = w[4];
    u[3] = w[3] / s33;
    u[2] = (w[2] - s23 * u[3]) / s22;
    u[1] = (w[1] - s12 * u[2] - s13 * u[3]) / s11;
    return u;
  }

  std::array<std::array<double, 5>, 5> to_matrix() const;
};

/// Derivative of SigmaFactor along one direction; applies like the matrix
/// derivative (the identity border of Sigma is constant, so rows 0 and 4
/// vanish).
struct SigmaDerivative {
  double s11 = 0, s12 = 0, s13 = 0, s22 = 0, s23 = 0, s33 = 0;

  Vec5 apply(const Vec5& u) const {
    return {0.0,
            s11 * u[1] + s12 * u[2] + s13 * u[3],
            s22 * u[2] + s23 * u[3],
            s33 * u[3],
            0.0};
  }
};

/// d g_{mu nu} / d x^delta, indexed [delta][mu][nu], delta = 0..3 with
/// x^0 = t.
using MetricDerivs = std::array<Mat4, 4>;

/// All metric data the schemes need at one spacetime point.
struct MetricSample {
  double alpha;       // lapse
  Vec3 beta_up;       // shift beta^i
  Mat3 gamma_dn;      // spatial metric gamma_ij
  Mat3 upsilon;       // inverse spatial metric gamma^{ij}
  double gamma_det;   // det(gamma_ij)
  double sqrt_gamma;  // sqrt(gamma_det)
  double sqrt_neg_g;  // alpha * sqrt_gamma
  SigmaFactor sigma;
  Mat4 g_dn;          // full g_{mu nu}
  Mat4 g_up;          // g^{mu nu} from the ADM closed forms
  MetricDerivs dg;    // d g_{mu nu} / d x^delta
  Vec3 dalpha_dx;     // spatial lapse gradient
  double dalpha_dt;
  SigmaDerivative dsigma_dt;
  std::array<SigmaDerivative, 3> dsigma_dx;
};

/// ADM data returned by a provider's pointwise closure.
struct AdmPoint {
  double alpha;
  Vec3 beta_up;
  Mat3 gamma_dn;
};

/// Immutable description of a spacetime; sample() is pure and safe to call
/// concurrently. Derivatives come from analytic closures when supplied and
/// from central finite differences with step 1e-6 (1 + |x|) otherwise.
class MetricProvider {
 public:
  static MetricProvider minkowski();

  /// beta = 0, alpha = alpha(x), gamma_ij = diag(gamma_diag(x)), all
  /// time-independent.
  static MetricProvider diagonal_static(std::function<double(const Vec3&)> alpha,
                                        std::function<Vec3(const Vec3&)> gamma_diag);

  /// General ADM closure, optionally with analytic metric derivatives.
  static MetricProvider analytic(std::function<AdmPoint(double, const Vec3&)> adm,
                                 std::function<MetricDerivs(double, const Vec3&)> dg = nullptr,
                                 bool time_independent = false);

  MetricSample sample(double t, const Vec3& x) const;

  bool flat() const { return flat_; }
  bool time_independent() const { return time_independent_; }

 private:
  MetricProvider() = default;
  std::function<AdmPoint(double, const Vec3&)> adm_;
  std::function<MetricDerivs(double, const Vec3&)> dg_;
  bool flat_ = false;
  bool time_independent_ = false;
};

/// Explicit Cholesky-style factor with Sigma^T Sigma = diag{1, Upsilon, 1};
/// throws MetricError on a non-SPD Upsilon.
SigmaFactor cholesky_sigma(const Mat3& upsilon);

/// Christoffel symbols of the second kind, indexed [lambda][mu][nu].
using Christoffels = std::array<Mat4, 4>;
Christoffels christoffels(const MetricSample& ms);

/// Stress-energy tensor T^{mu nu} of the ideal fluid.
Mat4 stress_energy(const Primitives& prim, const MetricSample& ms);

/// Geometric source vector Q(U) of the conservative-form equations; the first
/// component is exactly zero.
Vec5 source_Q(const Primitives& prim, const MetricSample& ms);

}  // namespace grhd
