#include "grhd/fdpcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grhd/parallel.hpp"
#include "grhd/ssp_rk3.hpp"

namespace grhd::fd {

double weno5_face(double v0, double v1, double v2, double v3, double v4,
                  double eps) {
  const double q0 = (2.0 * v0 - 7.0 * v1 + 11.0 * v2) / 6.0;
  const double q1 = (-v1 + 5.0 * v2 + 2.0 * v3) / 6.0;
  const double q2 = (2.0 * v2 + 5.0 * v3 - v4) / 6.0;
  const double b0 = 13.0 / 12.0 * (v0 - 2.0 * v1 + v2) * (v0 - 2.0 * v1 + v2) +
                    0.25 * (v0 - 4.0 * v1 + 3.0 * v2) * (v0 - 4.0 * v1 + 3.0 * v2);
  const double b1 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3) * (v1 - 2.0 * v2 + v3) +
                    0.25 * (v1 - v3) * (v1 - v3);
  const double b2 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4) * (v2 - 2.0 * v3 + v4) +
                    0.25 * (3.0 * v2 - 4.0 * v3 + v4) * (3.0 * v2 - 4.0 * v3 + v4);
  const double a0 = 0.1 / ((eps + b0) * (eps + b0));
  const double a1 = 0.6 / ((eps + b1) * (eps + b1));
  const double a2 = 0.3 / ((eps + b2) * (eps + b2));
  return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

Vec5 weno5_face(const Vec5& v0, const Vec5& v1, const Vec5& v2, const Vec5& v3,
                const Vec5& v4, double eps) {
  Vec5 r;
  for (int c = 0; c < 5; ++c)
    r[c] = weno5_face(v0[c], v1[c], v2[c], v3[c], v4[c], eps);
  return r;
}

std::array<double, 6> lambda0_box(const Vec5& w0, const CorrectionVectors& c,
                                  double eps, double eps0) {
  double neg_sum = 0.0;
  for (int l = 0; l < 6; ++l)
    if (c.c[l][0] < 0.0) neg_sum += -c.c[l][0];
  std::array<double, 6> lam;
  const double ratio =
      neg_sum > 0.0 ? std::min(1.0, (w0[0] - eps) / (eps0 + neg_sum)) : 1.0;
  for (int l = 0; l < 6; ++l) lam[l] = c.c[l][0] < 0.0 ? ratio : 1.0;
  return lam;
}

std::array<double, 6> shrink_box(const Vec5& w0, const CorrectionVectors& c,
                                 const std::array<double, 6>& lambda0,
                                 double eps) {
  // Scale factor for each of the 64 vertices of the Lambda_0 box.
  std::array<double, 64> vscale;
  for (int mask = 0; mask < 64; ++mask) {
    Vec5 dv = zero5();
    for (int l = 0; l < 6; ++l)
      if (mask & (1 << l)) dv += lambda0[l] * c.c[l];
    const Vec5 wv = w0 + dv;
    if (wv[0] >= eps && q_star(wv) >= eps) {
      vscale[mask] = 1.0;
      continue;
    }
    // q(w0 + lambda dv) = eps has a unique root in [0, 1): q is concave in
    // lambda, q(0) >= eps and q(1) < eps.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (q_star(w0 + mid * dv) >= eps)
        lo = mid;
      else
        hi = mid;
      if (hi - lo <= 1e-12) break;
    }
    vscale[mask] = lo;
  }
  std::array<double, 6> lam;
  for (int l = 0; l < 6; ++l) {
    double worst = 1.0;
    for (int mask = 0; mask < 64; ++mask)
      if (mask & (1 << l)) worst = std::min(worst, vscale[mask]);
    lam[l] = lambda0[l] * worst;
  }
  return lam;
}

FdScheme::FdScheme(const CuboidGrid& grid, const MetricProvider& metric,
                   const EosParams& eos, FdOptions opt)
    : grid_(grid), eos_(eos), opt_(opt), flat_(metric.flat()),
      metric_cache_(grid, metric, 3, 0.0) {
  grid_.validate();
  if (!(opt_.a_star_slack >= 1.0))
    throw ConfigError("fdpcp: a_star slack must be >= 1");
  for (int a = 0; a < 3; ++a)
    if (grid_.n[a] >= 2 && grid_.n[a] < 5 && grid_.bc[a] == Boundary::Periodic)
      throw ConfigError(
          "fdpcp: periodic axes need >= 5 points for the WENO5 stencil");
}

std::array<double, 3> FdScheme::raw_speed_max(
    const GridArray<PointState>& ps) const {
  const auto& n = grid_.n;
  std::array<double, 3> amax = {0, 0, 0};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 xi_dn = {0, 0, 0};
    xi_dn[axis] = 1.0;
    std::vector<double> slab(n[2], 0.0);
    par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      double m = 0.0;
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i) {
          const MetricSample& ms = metric_cache_.cell(i, j, k);
          const DirectionVector xi = DirectionVector::make(xi_dn, ms);
          if (opt_.use_ideal_bound && eos_.is_ideal())
            m = std::max(m,
                         speed_bound_ideal(ps.at(i, j, k).prim, xi, ms, eos_)
                             .eta_xi);
          else
            m = std::max(m, speed_bound_general(xi, ms).eta_xi);
        }
      slab[kk] = m;
    });
    amax[axis] = *std::max_element(slab.begin(), slab.end());
  }
  return amax;
}

namespace {

struct FaceArrays {
  // per axis: flat arrays over faces (n[axis]+1 in the axis direction)
  std::array<std::vector<Vec5>, 3> lf, high;
  std::array<std::array<int, 3>, 3> fdim;

  std::size_t findex(int axis, int i, int j, int k) const {
    const auto& d = fdim[axis];
    return (static_cast<std::size_t>(k) * d[1] + j) * d[0] + i;
  }
};

}  // namespace

StepStats FdScheme::stage(Field& pts, double dt, std::array<double, 3>& a_star,
                          bool first_stage,
                          std::vector<BoxSample>* box_samples) const {
  const auto& n = grid_.n;
  const Vec3 dx = grid_.dx();
  pts.fill_ghosts(grid_.bc);

  // Pointwise recovery (ghosts included: the WENO stencils read them).
  GridArray<PointState> ps(grid_, 3);
  par_for(static_cast<std::size_t>(n[2] + 6), [&](std::size_t kk) {
    const int k = static_cast<int>(kk) - 3;
    for (int j = -3; j < n[1] + 3; ++j)
      for (int i = -3; i < n[0] + 3; ++i) {
        try {
          ps.at(i, j, k) = recover_point(pts.at(i, j, k),
                                         metric_cache_.cell(i, j, k), eos_,
                                         opt_.recovery);
        } catch (const Error& e) {
          throw DomainError("fdpcp: recovery failed at point (" +
                            std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + "): " + e.what());
        }
      }
  });

  const std::array<double, 3> a_raw = raw_speed_max(ps);
  if (first_stage) {
    for (int a = 0; a < 3; ++a) a_star[a] = opt_.a_star_slack * a_raw[a];
  } else {
    for (int a = 0; a < 3; ++a)
      if (a_raw[a] > a_star[a] * (1.0 + 1e-12))
        throw InvariantViolation(
            "fdpcp: stage wave speed exceeded the a_star slack");
  }

  // Point fluxes H^l at every point (ghosts included).
  std::array<GridArray<Vec5>, 3> H = {GridArray<Vec5>(grid_, 3),
                                      GridArray<Vec5>(grid_, 3),
                                      GridArray<Vec5>(grid_, 3)};
  par_for(static_cast<std::size_t>(n[2] + 6), [&](std::size_t kk) {
    const int k = static_cast<int>(kk) - 3;
    for (int j = -3; j < n[1] + 3; ++j)
      for (int i = -3; i < n[0] + 3; ++i) {
        const MetricSample& ms = metric_cache_.cell(i, j, k);
        for (int axis = 0; axis < 3; ++axis)
          H[axis].at(i, j, k) = rescaled_flux(ps.at(i, j, k), ms, axis);
      }
  });

  // LxF and WENO5 fluxes on the faces of every axis. The high-order flux
  // reconstructs the global LxF splitting H +- a_star W.
  FaceArrays fa;
  for (int axis = 0; axis < 3; ++axis) {
    fa.fdim[axis] = n;
    fa.fdim[axis][axis] += 1;
    const auto& d = fa.fdim[axis];
    const std::size_t count = static_cast<std::size_t>(d[0]) * d[1] * d[2];
    fa.lf[axis].resize(count);
    fa.high[axis].resize(count);
    const double a = a_star[axis];
    par_for(static_cast<std::size_t>(d[2]), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      std::array<int, 3> p;
      for (int j = 0; j < d[1]; ++j)
        for (int i = 0; i < d[0]; ++i) {
          p = {i, j, k};
          // stencil point s along the axis relative to the face
          const auto pt = [&](int s) {
            std::array<int, 3> q = p;
            q[axis] += s;
            return q;
          };
          const auto wat = [&](int s) -> const Vec5& {
            const auto q = pt(s);
            return pts.at(q[0], q[1], q[2]);
          };
          const auto hat = [&](int s) -> const Vec5& {
            const auto q = pt(s);
            return H[axis].at(q[0], q[1], q[2]);
          };
          const std::size_t f = fa.findex(axis, i, j, k);
          fa.lf[axis][f] = 0.5 * (hat(-1) + hat(0) - a * (wat(0) - wat(-1)));
          const auto plus = [&](int s) { return 0.5 * (hat(s) + a * wat(s)); };
          const auto minus = [&](int s) { return 0.5 * (hat(s) - a * wat(s)); };
          fa.high[axis][f] =
              weno5_face(plus(-3), plus(-2), plus(-1), plus(0), plus(1),
                         opt_.weno_eps) +
              weno5_face(minus(2), minus(1), minus(0), minus(-1), minus(-2),
                         opt_.weno_eps);
        }
    });
  }

  // LxF reference state W(0), the adaptive floor eps, and the correction
  // vectors.
  GridArray<Vec5> w0(grid_, 0);
  GridArray<Vec5> source(grid_, 0);
  std::vector<double> slab_eps(n[2], 1e-12);
  par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    double e = 1e-12;
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        Vec5 acc = pts.at(i, j, k);
        Vec5 s = zero5();
        if (!flat_)
          s = source_S(ps.at(i, j, k), metric_cache_.cell(i, j, k));
        source.at(i, j, k) = s;
        acc += dt * s;
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
          hi[axis] += 1;
          acc += (dt / dx[axis]) *
                 (fa.lf[axis][fa.findex(axis, lo[0], lo[1], lo[2])] -
                  fa.lf[axis][fa.findex(axis, hi[0], hi[1], hi[2])]);
        }
        if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
          throw InvariantViolation(
              "fdpcp: LxF reference state left the admissible set at (" +
              std::to_string(i) + "," + std::to_string(j) + "," +
              std::to_string(k) + ")");
        w0.at(i, j, k) = acc;
        e = std::min({e, acc[0], q_star(acc)});
      }
    slab_eps[kk] = e;
  });
  const double eps = *std::min_element(slab_eps.begin(), slab_eps.end());

  // Per-point blend box.
  GridArray<std::array<double, 6>> lambda(grid_, 1);
  par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        if (!opt_.limiter_enabled) {
          lambda.at(i, j, k) = {1, 1, 1, 1, 1, 1};
          continue;
        }
        CorrectionVectors cv;
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
          hi[axis] += 1;
          const std::size_t fl = fa.findex(axis, lo[0], lo[1], lo[2]);
          const std::size_t fh = fa.findex(axis, hi[0], hi[1], hi[2]);
          cv.c[2 * axis] =
              (dt / dx[axis]) * (fa.high[axis][fl] - fa.lf[axis][fl]);
          cv.c[2 * axis + 1] =
              (-dt / dx[axis]) * (fa.high[axis][fh] - fa.lf[axis][fh]);
        }
        const auto lam0 = lambda0_box(w0.at(i, j, k), cv, eps, opt_.eps0);
        lambda.at(i, j, k) = shrink_box(w0.at(i, j, k), cv, lam0, eps);
      }
  });
  if (box_samples && opt_.limiter_enabled) {
    const std::size_t total =
        static_cast<std::size_t>(n[0]) * n[1] * n[2];
    const std::size_t stride = total <= 256 ? 1 : 16;
    std::size_t count = 0;
    for (int k = 0; k < n[2]; ++k)
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i, ++count) {
          if (count % stride != 0) continue;
          BoxSample bs;
          bs.w0 = w0.at(i, j, k);
          for (int axis = 0; axis < 3; ++axis) {
            std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
            hi[axis] += 1;
            const std::size_t fl = fa.findex(axis, lo[0], lo[1], lo[2]);
            const std::size_t fh = fa.findex(axis, hi[0], hi[1], hi[2]);
            bs.c.c[2 * axis] =
                (dt / dx[axis]) * (fa.high[axis][fl] - fa.lf[axis][fl]);
            bs.c.c[2 * axis + 1] =
                (-dt / dx[axis]) * (fa.high[axis][fh] - fa.lf[axis][fh]);
          }
          bs.lambda = lambda.at(i, j, k);
          bs.eps = eps;
          box_samples->push_back(bs);
        }
  }

  // Ghost ring for the face minima: wrap on periodic axes, no constraint
  // from outside on outflow axes.
  for (int k = -1; k <= n[2]; ++k)
    for (int j = -1; j <= n[1]; ++j)
      for (int i = -1; i <= n[0]; ++i) {
        if (i >= 0 && i < n[0] && j >= 0 && j < n[1] && k >= 0 && k < n[2])
          continue;
        int wi = i, wj = j, wk = k;
        bool outside = false;
        const auto map = [&](int& c, int nn, Boundary b) {
          if (c < 0) {
            if (b == Boundary::Periodic)
              c += nn;
            else
              outside = true;
          } else if (c >= nn) {
            if (b == Boundary::Periodic)
              c -= nn;
            else
              outside = true;
          }
        };
        map(wi, n[0], grid_.bc[0]);
        map(wj, n[1], grid_.bc[1]);
        map(wk, n[2], grid_.bc[2]);
        lambda.at(i, j, k) =
            outside ? std::array<double, 6>{1, 1, 1, 1, 1, 1}
                    : lambda.at(wi, wj, wk);
      }

  // Face blend parameters and the final conservative update.
  StepStats stats;
  stats.a_star = a_star;
  stats.eps = eps;
  std::array<std::vector<double>, 3> theta;
  for (int axis = 0; axis < 3; ++axis) {
    const auto& d = fa.fdim[axis];
    theta[axis].assign(static_cast<std::size_t>(d[0]) * d[1] * d[2], 1.0);
    for (int k = 0; k < d[2]; ++k)
      for (int j = 0; j < d[1]; ++j)
        for (int i = 0; i < d[0]; ++i) {
          std::array<int, 3> right = {i, j, k};
          std::array<int, 3> left = right;
          left[axis] -= 1;
          const double th =
              combine_face_theta(lambda.at(left[0], left[1], left[2])[2 * axis + 1],
                                 lambda.at(right[0], right[1], right[2])[2 * axis]);
          theta[axis][fa.findex(axis, i, j, k)] = th;
          stats.min_theta = std::min(stats.min_theta, th);
          if (th < 1.0) ++stats.limited_faces;
        }
  }

  std::vector<double> slab_w0(n[2], std::numeric_limits<double>::infinity());
  std::vector<double> slab_q(n[2], std::numeric_limits<double>::infinity());
  par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    double w0m = std::numeric_limits<double>::infinity(), qm = w0m;
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        Vec5 acc = pts.at(i, j, k) + dt * source.at(i, j, k);
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
          hi[axis] += 1;
          const std::size_t fl = fa.findex(axis, lo[0], lo[1], lo[2]);
          const std::size_t fh = fa.findex(axis, hi[0], hi[1], hi[2]);
          const Vec5 flux_lo =
              fa.lf[axis][fl] +
              theta[axis][fl] * (fa.high[axis][fl] - fa.lf[axis][fl]);
          const Vec5 flux_hi =
              fa.lf[axis][fh] +
              theta[axis][fh] * (fa.high[axis][fh] - fa.lf[axis][fh]);
          acc += (dt / dx[axis]) * (flux_lo - flux_hi);
        }
        if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
          throw InvariantViolation(
              "fdpcp: inadmissible point state at (" + std::to_string(i) + "," +
              std::to_string(j) + "," + std::to_string(k) +
              "): W0 = " + std::to_string(acc[0]) +
              ", q = " + std::to_string(q_star(acc)));
        pts.at(i, j, k) = acc;
        w0m = std::min(w0m, acc[0]);
        qm = std::min(qm, q_star(acc));
      }
    slab_w0[kk] = w0m;
    slab_q[kk] = qm;
  });
  stats.min_w0 = *std::min_element(slab_w0.begin(), slab_w0.end());
  stats.min_q = *std::min_element(slab_q.begin(), slab_q.end());
  stats.min_w0_minus_eps = stats.min_w0 - eps;
  stats.min_q_minus_eps = stats.min_q - eps;

  if (!flat_) {
    std::vector<double> slab_ls(n[2], 0.0);
    par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      double ls = 0.0;
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i)
          ls = std::max(ls, lambda_S_solve(pts.at(i, j, k),
                                           source.at(i, j, k)));
      slab_ls[kk] = ls;
    });
    stats.lambda_s_max = *std::max_element(slab_ls.begin(), slab_ls.end());
  }
  return stats;
}

double FdScheme::max_dt(const Field& pts, double t) const {
  (void)t;
  const auto& n = grid_.n;
  Field work = pts;
  work.fill_ghosts(grid_.bc);
  GridArray<PointState> ps(grid_, 3);
  par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i)
        ps.at(i, j, k) = recover_point(work.at(i, j, k),
                                       metric_cache_.cell(i, j, k), eos_,
                                       opt_.recovery);
  });
  const std::array<double, 3> a_raw = raw_speed_max(ps);
  const Vec3 dx = grid_.dx();
  double denom = 0.0;
  for (int a = 0; a < 3; ++a) denom += opt_.a_star_slack * a_raw[a] / dx[a];
  double lambda_s = 0.0;
  if (!flat_) {
    for (int k = 0; k < n[2]; ++k)
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i)
          lambda_s = std::max(
              lambda_s,
              lambda_S_solve(work.at(i, j, k),
                             source_S(ps.at(i, j, k),
                                      metric_cache_.cell(i, j, k))));
  }
  if (!(denom + lambda_s > 0.0))
    throw ConfigError("fdpcp: degenerate CFL bound");
  return (1.0 - opt_.cfl_margin) / (denom + lambda_s);
}

StepStats FdScheme::euler_step(Field& pts, double t, double dt,
                               std::vector<BoxSample>* box_samples) const {
  (void)t;
  std::array<double, 3> a_star{};
  return stage(pts, dt, a_star, true, box_samples);
}

StepStats FdScheme::rk3_step(Field& pts, double t, double dt) const {
  StepStats total;
  total.min_w0_minus_eps = std::numeric_limits<double>::infinity();
  total.min_q_minus_eps = std::numeric_limits<double>::infinity();
  std::array<double, 3> a_star{};
  bool first = true;

  const auto euler = [&](double, const Field& u) {
    Field out = u;
    StepStats s = stage(out, dt, a_star, first);
    if (first) {
      total.a_star = s.a_star;
      first = false;
    }
    total.lambda_s_max = std::max(total.lambda_s_max, s.lambda_s_max);
    total.eps = s.eps;
    total.min_theta = std::min(total.min_theta, s.min_theta);
    total.limited_faces += s.limited_faces;
    total.min_w0_minus_eps =
        std::min(total.min_w0_minus_eps, s.min_w0_minus_eps);
    total.min_q_minus_eps = std::min(total.min_q_minus_eps, s.min_q_minus_eps);
    return out;
  };
  const auto blend = [&](double ca, const Field& x, double cb, const Field& y) {
    Field out = x;
    const auto& n = grid_.n;
    par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i)
          out.at(i, j, k) = ca * x.at(i, j, k) + cb * y.at(i, j, k);
    });
    return out;
  };

  pts = ssp_rk3_step(pts, t, dt, euler, blend);
  double w0m = std::numeric_limits<double>::infinity(), qm = w0m;
  for (int k = 0; k < grid_.n[2]; ++k)
    for (int j = 0; j < grid_.n[1]; ++j)
      for (int i = 0; i < grid_.n[0]; ++i) {
        w0m = std::min(w0m, pts.at(i, j, k)[0]);
        qm = std::min(qm, q_star(pts.at(i, j, k)));
      }
  total.min_w0 = w0m;
  total.min_q = qm;
  return total;
}

}  // namespace grhd::fd
