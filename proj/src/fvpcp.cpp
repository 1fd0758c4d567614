#include "grhd/fvpcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grhd/parallel.hpp"
#include "grhd/ssp_rk3.hpp"

namespace grhd::fv {

namespace {

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

struct AxisBasis {
  // axis-polynomial values at the Lobatto / Legendre nodes of one axis
  std::array<Vec5, 8> lob;
  std::array<Vec5, 8> leg;
};

AxisBasis axis_values(const CellPoly& poly, int axis, const QuadratureSet& q) {
  AxisBasis b;
  for (int d = 0; d < q.lobatto.size(); ++d) {
    const double e = q.lobatto.nodes[d];
    const double e2 = e * e - 1.0 / 12.0;
    for (int c = 0; c < 5; ++c)
      b.lob[d][c] = poly.c1[axis][c] * e + poly.c2[axis][c] * e2;
  }
  for (int m = 0; m < q.legendre.size(); ++m) {
    const double e = q.legendre.nodes[m];
    const double e2 = e * e - 1.0 / 12.0;
    for (int c = 0; c < 5; ++c)
      b.leg[m][c] = poly.c1[axis][c] * e + poly.c2[axis][c] * e2;
  }
  return b;
}

template <class Fn>
void for_each_node(const QuadratureSet& q, const std::array<AxisBasis, 3>& ab,
                   Fn&& fn) {
  const int L = q.lobatto.size(), Q = q.legendre.size();
  for (int d = 0; d < L; ++d)
    for (int m = 0; m < Q; ++m)
      for (int v = 0; v < Q; ++v) {
        fn(ab[0].lob[d] + ab[1].leg[m] + ab[2].leg[v]);
        fn(ab[0].leg[m] + ab[1].lob[d] + ab[2].leg[v]);
        fn(ab[0].leg[m] + ab[1].leg[v] + ab[2].lob[d]);
      }
}

void scale_component0(CellPoly& poly, double s) {
  for (int a = 0; a < 3; ++a) {
    poly.c1[a][0] *= s;
    poly.c2[a][0] *= s;
  }
}

void scale_all(CellPoly& poly, double s) {
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 5; ++c) {
      poly.c1[a][c] *= s;
      poly.c2[a][c] *= s;
    }
}

}  // namespace

void reconstruct_axis(const Vec5& wm, const Vec5& w0, const Vec5& wp, int K,
                      double weno_eps, Vec5& c1, Vec5& c2) {
  c1 = zero5();
  c2 = zero5();
  if (K == 0) return;
  if (K == 1) {
    for (int c = 0; c < 5; ++c) c1[c] = minmod(w0[c] - wm[c], wp[c] - w0[c]);
    return;
  }
  // K = 2: central WENO blend of the two one-sided linears and the central
  // parabola; linear weights (1/4, 1/2, 1/4).
  for (int c = 0; c < 5; ++c) {
    const double dl = w0[c] - wm[c];
    const double dr = wp[c] - w0[c];
    const double cc1 = 0.5 * (dl + dr);
    const double cc2 = 0.5 * (dr - dl);
    const double scale =
        (wm[c] * wm[c] + w0[c] * w0[c] + wp[c] * wp[c]) / 3.0;
    const double ew = weno_eps * (1.0 + scale);
    const double bl = dl * dl;
    const double br = dr * dr;
    const double bc = cc1 * cc1 + 13.0 / 3.0 * cc2 * cc2;
    const double al = 0.25 / ((ew + bl) * (ew + bl));
    const double ar = 0.25 / ((ew + br) * (ew + br));
    const double ac = 0.5 / ((ew + bc) * (ew + bc));
    const double inv = 1.0 / (al + ar + ac);
    const double wl = al * inv, wr = ar * inv, wc = ac * inv;
    // P_C reproduces the parabola under the linear weights
    const double pc1 = (cc1 - 0.25 * dl - 0.25 * dr) / 0.5;
    const double pc2 = cc2 / 0.5;
    c1[c] = wc * pc1 + wl * dl + wr * dr;
    c2[c] = wc * pc2;
  }
}

LimiterResult pcp_scaling_limiter(CellPoly& poly, double eps,
                                  const QuadratureSet& quad) {
  LimiterResult res;
  if (!is_in_G_eps(poly.avg, eps)) {
    // vacuum region: collapse to the (admissible-in-closure) average
    res.vacuum = true;
    for (int a = 0; a < 3; ++a) {
      poly.c1[a] = zero5();
      poly.c2[a] = zero5();
    }
    return res;
  }

  std::array<AxisBasis, 3> ab = {axis_values(poly, 0, quad),
                                 axis_values(poly, 1, quad),
                                 axis_values(poly, 2, quad)};
  double w0_min = std::numeric_limits<double>::infinity();
  for_each_node(quad, ab, [&](const Vec5& dv) {
    w0_min = std::min(w0_min, poly.avg[0] + dv[0]);
  });
  if (w0_min < eps) {
    res.theta1 = (poly.avg[0] - eps) / (poly.avg[0] - w0_min);
    scale_component0(poly, res.theta1);
    for (int a = 0; a < 3; ++a) {
      for (int d = 0; d < quad.lobatto.size(); ++d) ab[a].lob[d][0] *= res.theta1;
      for (int m = 0; m < quad.legendre.size(); ++m) ab[a].leg[m][0] *= res.theta1;
    }
  }

  double q_min = std::numeric_limits<double>::infinity();
  for_each_node(quad, ab, [&](const Vec5& dv) {
    q_min = std::min(q_min, q_star(poly.avg + dv));
  });
  if (q_min < eps) {
    const double q_avg = q_star(poly.avg);
    res.theta2 = (q_avg - eps) / (q_avg - q_min);
    scale_all(poly, res.theta2);
  }
  return res;
}

struct FvScheme::Stage {
  PolyField polys;
  std::array<std::vector<Vec5>, 3> wm, wp;
  std::array<std::vector<PointState>, 3> pm, pp;
  std::array<double, 3> a_raw = {0, 0, 0};
  std::vector<Vec5> source;  // per interior cell; empty when flat
  double lambda_s_max = 0;
  long limited = 0;
};

FvScheme::FvScheme(const CuboidGrid& grid, const MetricProvider& metric,
                   const EosParams& eos, FvOptions opt)
    : grid_(grid), eos_(eos), opt_(opt), quad_(build_quadrature(opt.degree)),
      flat_(metric.flat()) {
  grid_.validate();
  if (opt_.degree < 0 || opt_.degree > 2)
    throw ConfigError("fvpcp: reconstruction degree must be 0, 1 or 2");
  if (!(opt_.a_star_slack >= 1.0))
    throw ConfigError("fvpcp: a_star slack must be >= 1");
  for (int a = 0; a < 3; ++a) nf_[a] = grid_.n[a] + 1;

  const int Q = quad_.legendre.size();
  const Vec3 dx = grid_.dx();
  if (flat_) {
    shared_ms_ = {metric.sample(0.0, grid_.lower)};
    return;
  }
  // Static curved metric: sample every face Gauss point and every interior
  // source node once.
  for (int axis = 0; axis < 3; ++axis) {
    const int t1 = axis == 0 ? 1 : 0;
    const int t2 = axis == 2 ? 1 : 2;
    std::array<int, 3> fd = grid_.n;
    fd[axis] += 1;
    face_ms_[axis].resize(static_cast<std::size_t>(fd[0]) * fd[1] * fd[2] * Q * Q);
    std::array<int, 3> idx;
    std::size_t pos = 0;
    for (idx[2] = 0; idx[2] < fd[2]; ++idx[2])
      for (idx[1] = 0; idx[1] < fd[1]; ++idx[1])
        for (idx[0] = 0; idx[0] < fd[0]; ++idx[0])
          for (int m = 0; m < Q; ++m)
            for (int v = 0; v < Q; ++v) {
              Vec3 x;
              x[axis] = grid_.lower[axis] + idx[axis] * dx[axis];
              x[t1] = grid_.lower[t1] +
                      (idx[t1] + 0.5 + quad_.legendre.nodes[m]) * dx[t1];
              x[t2] = grid_.lower[t2] +
                      (idx[t2] + 0.5 + quad_.legendre.nodes[v]) * dx[t2];
              face_ms_[axis][pos++] = metric.sample(0.0, x);
            }
  }
  interior_ms_.resize(grid_.cell_count() * Q * Q * Q);
  std::size_t pos = 0;
  for (int k = 0; k < grid_.n[2]; ++k)
    for (int j = 0; j < grid_.n[1]; ++j)
      for (int i = 0; i < grid_.n[0]; ++i) {
        const Vec3 c = grid_.center(i, j, k);
        for (int d = 0; d < Q; ++d)
          for (int m = 0; m < Q; ++m)
            for (int v = 0; v < Q; ++v) {
              const Vec3 x = {c[0] + quad_.legendre.nodes[d] * dx[0],
                              c[1] + quad_.legendre.nodes[m] * dx[1],
                              c[2] + quad_.legendre.nodes[v] * dx[2]};
              interior_ms_[pos++] = metric.sample(0.0, x);
            }
      }
}

const MetricSample& FvScheme::interior_ms(std::size_t cell, int node) const {
  if (flat_) return shared_ms_[0];
  const int Q = quad_.legendre.size();
  return interior_ms_[cell * Q * Q * Q + node];
}

PolyField FvScheme::reconstruct_and_limit(const Field& avg,
                                          long* limited_count) const {
  const auto& n = grid_.n;
  PolyField pf;
  pf.n = n;
  pf.p.resize(static_cast<std::size_t>(n[0] + 2) * (n[1] + 2) * (n[2] + 2));

  const long nk = n[2] + 2;
  std::vector<long> limited_per_slab(nk, 0);
  par_for(static_cast<std::size_t>(nk), [&](std::size_t kk) {
    const int k = static_cast<int>(kk) - 1;
    for (int j = -1; j <= n[1]; ++j)
      for (int i = -1; i <= n[0]; ++i) {
        CellPoly& poly = pf.at(i, j, k);
        poly.avg = avg.at(i, j, k);
        reconstruct_axis(avg.at(i - 1, j, k), poly.avg, avg.at(i + 1, j, k),
                         opt_.degree, opt_.weno_eps, poly.c1[0], poly.c2[0]);
        reconstruct_axis(avg.at(i, j - 1, k), poly.avg, avg.at(i, j + 1, k),
                         opt_.degree, opt_.weno_eps, poly.c1[1], poly.c2[1]);
        reconstruct_axis(avg.at(i, j, k - 1), poly.avg, avg.at(i, j, k + 1),
                         opt_.degree, opt_.weno_eps, poly.c1[2], poly.c2[2]);
        if (opt_.limiter_enabled) {
          const LimiterResult lr = pcp_scaling_limiter(poly, opt_.eps, quad_);
          if (lr.active()) ++limited_per_slab[kk];
        }
      }
  });
  if (limited_count) {
    *limited_count = 0;
    for (long c : limited_per_slab) *limited_count += c;
  }
  return pf;
}

Vec5 FvScheme::source_average(const CellPoly& poly, int i, int j, int k) const {
  if (flat_) return zero5();
  const int Q = quad_.legendre.size();
  const std::size_t cell =
      (static_cast<std::size_t>(k) * grid_.n[1] + j) * grid_.n[0] + i;
  Vec5 s = zero5();
  int node = 0;
  for (int d = 0; d < Q; ++d)
    for (int m = 0; m < Q; ++m)
      for (int v = 0; v < Q; ++v, ++node) {
        const MetricSample& ms = interior_ms(cell, node);
        const Vec5 w = poly.value(quad_.legendre.nodes[d],
                                  quad_.legendre.nodes[m],
                                  quad_.legendre.nodes[v]);
        const PointState ps = recover_point(w, ms, eos_, opt_.recovery);
        const double wt = quad_.legendre.weights[d] * quad_.legendre.weights[m] *
                          quad_.legendre.weights[v];
        s += wt * source_S(ps, ms);
      }
  return s;
}

void FvScheme::build_stage(const Field& avg, Stage& st) const {
  st.polys = reconstruct_and_limit(avg, &st.limited);

  const int Q = quad_.legendre.size();
  for (int axis = 0; axis < 3; ++axis) {
    const int t1 = axis == 0 ? 1 : 0;
    const int t2 = axis == 2 ? 1 : 2;
    std::array<int, 3> fd = grid_.n;
    fd[axis] += 1;
    const std::size_t nfaces =
        static_cast<std::size_t>(fd[0]) * fd[1] * fd[2];
    st.wm[axis].resize(nfaces * Q * Q);
    st.wp[axis].resize(nfaces * Q * Q);
    st.pm[axis].resize(nfaces * Q * Q);
    st.pp[axis].resize(nfaces * Q * Q);

    std::vector<double> slab_max(fd[2], 0.0);
    par_for(static_cast<std::size_t>(fd[2]), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      Vec3 xi_dn = {0, 0, 0};
      xi_dn[axis] = 1.0;
      double amax = 0.0;
      for (int j = 0; j < fd[1]; ++j)
        for (int i = 0; i < fd[0]; ++i) {
          std::array<int, 3> f = {i, j, k};
          std::array<int, 3> left = f, right = f;
          left[axis] -= 1;
          const std::size_t fidx =
              (static_cast<std::size_t>(k) * fd[1] + j) * fd[0] + i;
          for (int m = 0; m < Q; ++m)
            for (int v = 0; v < Q; ++v) {
              const std::size_t q = (fidx * Q + m) * Q + v;
              double em = quad_.legendre.nodes[m];
              double ev = quad_.legendre.nodes[v];
              std::array<double, 3> el{}, er{};
              el[axis] = 0.5;
              er[axis] = -0.5;
              el[t1] = er[t1] = em;
              el[t2] = er[t2] = ev;
              st.wm[axis][q] = st.polys.at(left[0], left[1], left[2])
                                   .value(el[0], el[1], el[2]);
              st.wp[axis][q] = st.polys.at(right[0], right[1], right[2])
                                   .value(er[0], er[1], er[2]);
              const MetricSample& ms = face_ms(axis, q);
              try {
                st.pm[axis][q] = recover_point(st.wm[axis][q], ms, eos_,
                                               opt_.recovery);
                st.pp[axis][q] = recover_point(st.wp[axis][q], ms, eos_,
                                               opt_.recovery);
              } catch (const Error& e) {
                throw DomainError("fvpcp: face trace recovery failed at axis " +
                                  std::to_string(axis) + " face (" +
                                  std::to_string(i) + "," + std::to_string(j) +
                                  "," + std::to_string(k) + "): " + e.what());
              }
              const DirectionVector xi = DirectionVector::make(xi_dn, ms);
              if (opt_.use_ideal_bound && eos_.is_ideal()) {
                amax = std::max(
                    {amax,
                     speed_bound_ideal(st.pm[axis][q].prim, xi, ms, eos_).eta_xi,
                     speed_bound_ideal(st.pp[axis][q].prim, xi, ms, eos_).eta_xi});
              } else {
                amax = std::max(amax, speed_bound_general(xi, ms).eta_xi);
              }
            }
        }
      slab_max[kk] = amax;
    });
    st.a_raw[axis] = *std::max_element(slab_max.begin(), slab_max.end());
  }

  st.lambda_s_max = 0.0;
  if (!flat_) {
    st.source.resize(grid_.cell_count());
    const auto& n = grid_.n;
    std::vector<double> slab_ls(n[2], 0.0);
    par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      double ls = 0.0;
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i) {
          const std::size_t c =
              (static_cast<std::size_t>(k) * n[1] + j) * n[0] + i;
          st.source[c] = source_average(st.polys.at(i, j, k), i, j, k);
          ls = std::max(ls, lambda_S_solve(st.polys.at(i, j, k).avg,
                                           st.source[c]));
        }
      slab_ls[kk] = ls;
    });
    st.lambda_s_max = *std::max_element(slab_ls.begin(), slab_ls.end());
  }
}

StepStats FvScheme::apply_stage(Field& avg, const Stage& st, double dt,
                                const std::array<double, 3>& a_star,
                                double* min_w0, double* min_q) const {
  const int Q = quad_.legendre.size();
  for (int axis = 0; axis < 3; ++axis)
    if (a_star[axis] < st.a_raw[axis] * (1.0 - 1e-12))
      throw ContractError("fvpcp: a_star below the node-value wave-speed max");

  std::array<std::vector<Vec5>, 3> flux;
  for (int axis = 0; axis < 3; ++axis) {
    std::array<int, 3> fd = grid_.n;
    fd[axis] += 1;
    const std::size_t nfaces = static_cast<std::size_t>(fd[0]) * fd[1] * fd[2];
    flux[axis].assign(nfaces, zero5());
    par_for(nfaces, [&](std::size_t fidx) {
      Vec5 acc = zero5();
      for (int m = 0; m < Q; ++m)
        for (int v = 0; v < Q; ++v) {
          const std::size_t q = (fidx * Q + m) * Q + v;
          const MetricSample& ms = face_ms(axis, q);
          const Vec5 hm = rescaled_flux(st.pm[axis][q], ms, axis);
          const Vec5 hp = rescaled_flux(st.pp[axis][q], ms, axis);
          const double wt =
              quad_.legendre.weights[m] * quad_.legendre.weights[v];
          acc += wt * (0.5 * (hm + hp) -
                       (0.5 * a_star[axis]) * (st.wp[axis][q] - st.wm[axis][q]));
        }
      flux[axis][fidx] = acc;
    });
  }

  const auto& n = grid_.n;
  const Vec3 dx = grid_.dx();
  StepStats stats;
  stats.a_star = a_star;
  stats.lambda_s_max = st.lambda_s_max;
  stats.limited_cells = st.limited;
  std::vector<double> slab_w0(n[2], std::numeric_limits<double>::infinity());
  std::vector<double> slab_q(n[2], std::numeric_limits<double>::infinity());
  par_for(static_cast<std::size_t>(n[2]), [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    double w0m = std::numeric_limits<double>::infinity();
    double qm = w0m;
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        const std::size_t c =
            (static_cast<std::size_t>(k) * n[1] + j) * n[0] + i;
        Vec5 acc = avg.at(i, j, k);
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> fd = grid_.n;
          fd[axis] += 1;
          std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
          hi[axis] += 1;
          const std::size_t fl =
              (static_cast<std::size_t>(lo[2]) * fd[1] + lo[1]) * fd[0] + lo[0];
          const std::size_t fh =
              (static_cast<std::size_t>(hi[2]) * fd[1] + hi[1]) * fd[0] + hi[0];
          acc -= (dt / dx[axis]) * (flux[axis][fh] - flux[axis][fl]);
        }
        if (!flat_) acc += dt * st.source[c];
        if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
          throw InvariantViolation(
              "fvpcp: inadmissible cell average at (" + std::to_string(i) + "," +
              std::to_string(j) + "," + std::to_string(k) +
              "): W0 = " + std::to_string(acc[0]) +
              ", q = " + std::to_string(q_star(acc)));
        avg.at(i, j, k) = acc;
        w0m = std::min(w0m, acc[0]);
        qm = std::min(qm, q_star(acc));
      }
    slab_w0[kk] = w0m;
    slab_q[kk] = qm;
  });
  stats.min_w0 = *std::min_element(slab_w0.begin(), slab_w0.end());
  stats.min_q = *std::min_element(slab_q.begin(), slab_q.end());
  if (min_w0) *min_w0 = stats.min_w0;
  if (min_q) *min_q = stats.min_q;
  return stats;
}

double FvScheme::max_dt(const Field& avg, double t) const {
  (void)t;
  Field work = avg;
  work.fill_ghosts(grid_.bc);
  Stage st;
  build_stage(work, st);
  const Vec3 dx = grid_.dx();
  double denom = 0.0;
  for (int a = 0; a < 3; ++a) denom += opt_.a_star_slack * st.a_raw[a] / dx[a];
  if (!(denom > 0.0)) throw ConfigError("fvpcp: degenerate CFL bound");
  if (opt_.degree == 0)
    return (1.0 - opt_.cfl_margin) / (denom + st.lambda_s_max);
  const double w1 = quad_.lobatto.weights[0];
  return (1.0 - opt_.cfl_margin) * w1 / (denom + w1 * st.lambda_s_max);
}

StepStats FvScheme::euler_step(Field& avg, double t, double dt) const {
  (void)t;
  avg.fill_ghosts(grid_.bc);
  Stage st;
  build_stage(avg, st);
  std::array<double, 3> a_star;
  for (int a = 0; a < 3; ++a) a_star[a] = opt_.a_star_slack * st.a_raw[a];
  return apply_stage(avg, st, dt, a_star);
}

StepStats FvScheme::rk3_step(Field& avg, double t, double dt) const {
  (void)t;
  StepStats total;
  std::array<double, 3> a_star{};
  const Field u0 = avg;
  bool first = true;

  const auto euler = [&](double, const Field& u) {
    Field out = u;
    out.fill_ghosts(grid_.bc);
    Stage st;
    build_stage(out, st);
    if (first) {
      for (int a = 0; a < 3; ++a) a_star[a] = opt_.a_star_slack * st.a_raw[a];
      total.a_star = a_star;
      total.lambda_s_max = st.lambda_s_max;
      first = false;
    } else {
      for (int a = 0; a < 3; ++a)
        if (st.a_raw[a] > a_star[a] * (1.0 + 1e-12))
          throw InvariantViolation(
              "fvpcp: stage wave speed exceeded the a_star slack");
    }
    total.limited_cells += st.limited;
    StepStats s = apply_stage(out, st, dt, a_star);
    total.min_w0 = s.min_w0;
    total.min_q = s.min_q;
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

  avg = ssp_rk3_step(u0, t, dt, euler, blend);
  double w0m = std::numeric_limits<double>::infinity(), qm = w0m;
  for (int k = 0; k < grid_.n[2]; ++k)
    for (int j = 0; j < grid_.n[1]; ++j)
      for (int i = 0; i < grid_.n[0]; ++i) {
        w0m = std::min(w0m, avg.at(i, j, k)[0]);
        qm = std::min(qm, q_star(avg.at(i, j, k)));
      }
  total.min_w0 = w0m;
  total.min_q = qm;
  return total;
}

}  // namespace grhd::fv
