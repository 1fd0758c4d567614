#include "grhd/spacetime.hpp"

#include <cmath>
#include <utility>

#include "grhd/states.hpp"

namespace grhd {

namespace {

constexpr double kFdScale = 1e-6;

double fd_step(double coord) { return kFdScale * (1.0 + std::abs(coord)); }

Mat4 assemble_g(const AdmPoint& a) {
  const Vec3 beta_dn = mat_vec(a.gamma_dn, a.beta_up);
  Mat4 g{};
  g[0][0] = -(a.alpha * a.alpha) + dot(beta_dn, a.beta_up);
  for (int i = 0; i < 3; ++i) {
    g[0][i + 1] = beta_dn[i];
    g[i + 1][0] = beta_dn[i];
    for (int j = 0; j < 3; ++j) g[i + 1][j + 1] = a.gamma_dn[i][j];
  }
  return g;
}

void require_spd(const Mat3& gamma) {
  const double m1 = gamma[0][0];
  const double m2 = gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0];
  const double m3 = det(gamma);
  if (!(m1 > 0.0) || !(m2 > 0.0) || !(m3 > 0.0))
    throw MetricError("metric: spatial metric is not positive definite");
}

SigmaFactor sigma_at(const AdmPoint& a) {
  require_spd(a.gamma_dn);
  const double d = det(a.gamma_dn);
  return cholesky_sigma(inverse(a.gamma_dn, d));
}

SigmaDerivative central_dsigma(const SigmaFactor& plus, const SigmaFactor& minus,
                               double h) {
  const double s = 0.5 / h;
  SigmaDerivative d;
  d.s11 = (plus.s11 - minus.s11) * s;
  d.s12 = (plus.s12 - minus.s12) * s;
  d.s13 = (plus.s13 - minus.s13) * s;
  d.s22 = (plus.s22 - minus.s22) * s;
  d.s23 = (plus.s23 - minus.s23) * s;
  d.s33 = (plus.s33 - minus.s33) * s;
  return d;
}

Mat4 central_dg(const Mat4& plus, const Mat4& minus, double h) {
  const double s = 0.5 / h;
  Mat4 d;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) d[m][n] = (plus[m][n] - minus[m][n]) * s;
  return d;
}

}  // namespace

std::array<std::array<double, 5>, 5> SigmaFactor::to_matrix() const {
  std::array<std::array<double, 5>, 5> m{};
  m[0][0] = 1.0;
  m[4][4] = 1.0;
  m[1][1] = s11;
  m[1][2] = s12;
  m[1][3] = s13;
  m[2][2] = s22;
  m[2][3] = s23;
  m[3][3] = s33;
  return m;
}

SigmaFactor cholesky_sigma(const Mat3& up) {
  if (!(up[0][0] > 0.0)) throw MetricError("cholesky_sigma: gamma^11 <= 0");
  SigmaFactor s;
  s.s11 = std::sqrt(up[0][0]);
  s.s12 = up[0][1] / s.s11;
  s.s13 = up[0][2] / s.s11;
  const double r22 = up[1][1] - up[0][1] * up[0][1] / up[0][0];
  if (!(r22 > 0.0))
    throw MetricError("cholesky_sigma: negative radicand; Upsilon not SPD");
  s.s22 = std::sqrt(r22);
  s.s23 = (up[1][2] - up[0][1] * up[0][2] / up[0][0]) / s.s22;
  const double r33 =
      up[2][2] - up[0][2] * up[0][2] / up[0][0] - s.s23 * s.s23;
  if (!(r33 > 0.0))
    throw MetricError("cholesky_sigma: negative radicand; Upsilon not SPD");
  s.s33 = std::sqrt(r33);
  return s;
}

MetricProvider MetricProvider::minkowski() {
  MetricProvider m;
  m.adm_ = [](double, const Vec3&) {
    return AdmPoint{1.0, {0, 0, 0}, identity3()};
  };
  m.flat_ = true;
  m.time_independent_ = true;
  return m;
}

MetricProvider MetricProvider::diagonal_static(
    std::function<double(const Vec3&)> alpha,
    std::function<Vec3(const Vec3&)> gamma_diag) {
  MetricProvider m;
  m.adm_ = [a = std::move(alpha), g = std::move(gamma_diag)](double,
                                                             const Vec3& x) {
    const Vec3 d = g(x);
    AdmPoint p;
    p.alpha = a(x);
    p.beta_up = {0, 0, 0};
    p.gamma_dn = Mat3{Vec3{d[0], 0, 0}, Vec3{0, d[1], 0}, Vec3{0, 0, d[2]}};
    return p;
  };
  m.time_independent_ = true;
  return m;
}

MetricProvider MetricProvider::analytic(
    std::function<AdmPoint(double, const Vec3&)> adm,
    std::function<MetricDerivs(double, const Vec3&)> dg, bool time_independent) {
  MetricProvider m;
  m.adm_ = std::move(adm);
  m.dg_ = std::move(dg);
  m.time_independent_ = time_independent;
  return m;
}

MetricSample MetricProvider::sample(double t, const Vec3& x) const {
  const AdmPoint a = adm_(t, x);
  if (!(a.alpha > 0.0)) throw MetricError("metric: lapse must be positive");
  require_spd(a.gamma_dn);

  MetricSample ms;
  ms.alpha = a.alpha;
  ms.beta_up = a.beta_up;
  ms.gamma_dn = a.gamma_dn;
  ms.gamma_det = det(a.gamma_dn);
  ms.sqrt_gamma = std::sqrt(ms.gamma_det);
  ms.sqrt_neg_g = a.alpha * ms.sqrt_gamma;
  ms.upsilon = inverse(a.gamma_dn, ms.gamma_det);
  ms.sigma = cholesky_sigma(ms.upsilon);
  ms.g_dn = assemble_g(a);

  // g^{mu nu} from the ADM closed forms; avoids a 4x4 inversion.
  const double ia2 = 1.0 / (a.alpha * a.alpha);
  ms.g_up[0][0] = -ia2;
  for (int i = 0; i < 3; ++i) {
    ms.g_up[0][i + 1] = a.beta_up[i] * ia2;
    ms.g_up[i + 1][0] = a.beta_up[i] * ia2;
    for (int j = 0; j < 3; ++j)
      ms.g_up[i + 1][j + 1] =
          ms.upsilon[i][j] - a.beta_up[i] * a.beta_up[j] * ia2;
  }

  if (flat_) {
    for (auto& m : ms.dg)
      for (auto& row : m) row.fill(0.0);
    ms.dalpha_dx = {0, 0, 0};
    ms.dalpha_dt = 0.0;
    ms.dsigma_dt = SigmaDerivative{};
    ms.dsigma_dx = {SigmaDerivative{}, SigmaDerivative{}, SigmaDerivative{}};
    return ms;
  }

  // Metric derivatives: analytic closure when supplied, otherwise central
  // differences of the composed map. Sigma derivatives are always numerical
  // differences of cholesky_sigma.
  std::array<AdmPoint, 3> adm_plus, adm_minus;
  std::array<double, 3> steps;
  for (int d = 0; d < 3; ++d) {
    const double h = fd_step(x[d]);
    steps[d] = h;
    Vec3 xp = x, xm = x;
    xp[d] += h;
    xm[d] -= h;
    adm_plus[d] = adm_(t, xp);
    adm_minus[d] = adm_(t, xm);
  }

  if (dg_) {
    ms.dg = dg_(t, x);
  } else {
    for (int d = 0; d < 3; ++d)
      ms.dg[d + 1] =
          central_dg(assemble_g(adm_plus[d]), assemble_g(adm_minus[d]), steps[d]);
    if (time_independent_) {
      for (auto& row : ms.dg[0]) row.fill(0.0);
    } else {
      const double ht = fd_step(t);
      ms.dg[0] = central_dg(assemble_g(adm_(t + ht, x)),
                            assemble_g(adm_(t - ht, x)), ht);
    }
  }

  // d(alpha)/dx^mu from dg via alpha^2 = beta_k beta^k - g_00:
  //   d(alpha^2) = 2 beta^k dg_{0k} - beta^a beta^b d(gamma_ab) - dg_00.
  for (int d = 0; d < 4; ++d) {
    double da2 = -ms.dg[d][0][0];
    for (int k = 0; k < 3; ++k) da2 += 2.0 * a.beta_up[k] * ms.dg[d][0][k + 1];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        da2 -= a.beta_up[i] * a.beta_up[j] * ms.dg[d][i + 1][j + 1];
    const double dal = da2 / (2.0 * a.alpha);
    if (d == 0)
      ms.dalpha_dt = dal;
    else
      ms.dalpha_dx[d - 1] = dal;
  }

  for (int d = 0; d < 3; ++d)
    ms.dsigma_dx[d] =
        central_dsigma(sigma_at(adm_plus[d]), sigma_at(adm_minus[d]), steps[d]);
  if (time_independent_) {
    ms.dsigma_dt = SigmaDerivative{};
  } else {
    const double ht = fd_step(t);
    ms.dsigma_dt = central_dsigma(sigma_at(adm_(t + ht, x)),
                                  sigma_at(adm_(t - ht, x)), ht);
  }
  return ms;
}

Christoffels christoffels(const MetricSample& ms) {
  Christoffels gam;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        double s = 0.0;
        for (int d = 0; d < 4; ++d)
          s += ms.g_up[l][d] *
               (ms.dg[m][d][n] + ms.dg[n][d][m] - ms.dg[d][m][n]);
        gam[l][m][n] = 0.5 * s;
      }
  return gam;
}

Mat4 stress_energy(const Primitives& prim, const MetricSample& ms) {
  // u^0 = W / alpha, u^i = W (v^i - beta^i / alpha)
  std::array<double, 4> u;
  u[0] = prim.lorentz / ms.alpha;
  for (int i = 0; i < 3; ++i)
    u[i + 1] = prim.lorentz * (prim.v_up[i] - ms.beta_up[i] / ms.alpha);
  const double rho_h = prim.rho * prim.h;
  Mat4 T;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      T[m][n] = rho_h * u[m] * u[n] + prim.p * ms.g_up[m][n];
  return T;
}

Vec5 source_Q(const Primitives& prim, const MetricSample& ms) {
  const Mat4 T = stress_energy(prim, ms);
  const Christoffels gam = christoffels(ms);

  Vec5 q = zero5();
  for (int j = 0; j < 3; ++j) {
    double s = 0.0;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        double gterm = ms.dg[m][n][j + 1];
        for (int d = 0; d < 4; ++d) gterm -= gam[d][n][m] * ms.g_dn[d][j + 1];
        s += T[m][n] * gterm;
      }
    q[1 + j] = s;
  }

  const std::array<double, 4> dln_alpha = {
      ms.dalpha_dt / ms.alpha, ms.dalpha_dx[0] / ms.alpha,
      ms.dalpha_dx[1] / ms.alpha, ms.dalpha_dx[2] / ms.alpha};
  double e = 0.0;
  for (int m = 0; m < 4; ++m) {
    e += T[m][0] * dln_alpha[m];
    for (int n = 0; n < 4; ++n) e -= T[m][n] * gam[0][n][m];
  }
  q[4] = ms.alpha * e;
  return q;
}

}  // namespace grhd
