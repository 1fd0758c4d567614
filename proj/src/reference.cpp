#include "grhd/reference.hpp"

#include <algorithm>
#include <cmath>

namespace grhd::ref {

CellField lxf1_step(const Lxf1Scheme& scheme, const CellField& field,
                    double dt) {
  const UnstructuredMesh& mesh = scheme.mesh();
  const EosParams& eos = scheme.eos();
  CellField out;
  out.w.resize(field.w.size());
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    Vec5 acc = field.w[c];
    const double scale = dt / mesh.cells[c].volume;
    for (const auto& [f, orient] : mesh.faces_of[c]) {
      const MeshFace& face = mesh.faces[f];
      const MetricSample& ms = scheme.face_metric(f);
      const DirectionVector xi = DirectionVector::make(face.normal, ms);
      const Vec5& wk = field.w[face.k];
      const Vec5& wj = face.j >= 0 ? field.w[face.j] : field.w[face.k];
      const PointState pk = recover_point(wk, ms, eos);
      const PointState pj = face.j >= 0 ? recover_point(wj, ms, eos) : pk;
      const double a =
          scheme.face_viscosity(&pk, face.j >= 0 ? &pj : nullptr, xi, ms);
      const Vec5 flux = lxf_face_flux(pk, pj, wk, wj, xi, ms, a, eos);
      acc -= (scale * orient * face.area) * flux;
    }
    if (!scheme.metric_is_flat()) {
      const PointState pc =
          recover_point(field.w[c], scheme.cell_metric(static_cast<int>(c)), eos);
      acc += dt * source_S(pc, scheme.cell_metric(static_cast<int>(c)));
    }
    if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
      throw InvariantViolation("ref::lxf1_step produced an inadmissible cell");
    out.w[c] = acc;
  }
  return out;
}

void fv_euler_step(const CuboidGrid& grid, const MetricProvider& metric,
                   const EosParams& eos, const fv::FvOptions& opt, Field& avg,
                   double dt) {
  const QuadratureSet quad = build_quadrature(opt.degree);
  const int Q = quad.legendre.size();
  const auto& n = grid.n;
  const Vec3 dx = grid.dx();
  avg.fill_ghosts(grid.bc);

  // reconstruction + limiter, interior plus one ring
  fv::PolyField pf;
  pf.n = n;
  pf.p.resize(static_cast<std::size_t>(n[0] + 2) * (n[1] + 2) * (n[2] + 2));
  for (int k = -1; k <= n[2]; ++k)
    for (int j = -1; j <= n[1]; ++j)
      for (int i = -1; i <= n[0]; ++i) {
        fv::CellPoly& poly = pf.at(i, j, k);
        poly.avg = avg.at(i, j, k);
        fv::reconstruct_axis(avg.at(i - 1, j, k), poly.avg, avg.at(i + 1, j, k),
                             opt.degree, opt.weno_eps, poly.c1[0], poly.c2[0]);
        fv::reconstruct_axis(avg.at(i, j - 1, k), poly.avg, avg.at(i, j + 1, k),
                             opt.degree, opt.weno_eps, poly.c1[1], poly.c2[1]);
        fv::reconstruct_axis(avg.at(i, j, k - 1), poly.avg, avg.at(i, j, k + 1),
                             opt.degree, opt.weno_eps, poly.c1[2], poly.c2[2]);
        if (opt.limiter_enabled)
          fv::pcp_scaling_limiter(poly, opt.eps, quad);
      }

  // a_star over the face trace values, then the flux-difference update,
  // face by face inside the cell loop.
  std::array<double, 3> a_star = {0, 0, 0};
  const auto face_metric = [&](int axis, std::array<int, 3> f, int m,
                               int v) {
    const int t1 = axis == 0 ? 1 : 0;
    const int t2 = axis == 2 ? 1 : 2;
    Vec3 x;
    x[axis] = grid.lower[axis] + f[axis] * dx[axis];
    x[t1] = grid.lower[t1] + (f[t1] + 0.5 + quad.legendre.nodes[m]) * dx[t1];
    x[t2] = grid.lower[t2] + (f[t2] + 0.5 + quad.legendre.nodes[v]) * dx[t2];
    return metric.sample(0.0, x);
  };
  const auto trace = [&](int axis, const std::array<int, 3>& f, int side,
                         int m, int v) {
    // side -1: left cell at +1/2; side +1: right cell at -1/2
    const int t1 = axis == 0 ? 1 : 0;
    const int t2 = axis == 2 ? 1 : 2;
    std::array<int, 3> cell = f;
    if (side < 0) cell[axis] -= 1;
    std::array<double, 3> e{};
    e[axis] = side < 0 ? 0.5 : -0.5;
    e[t1] = quad.legendre.nodes[m];
    e[t2] = quad.legendre.nodes[v];
    return pf.at(cell[0], cell[1], cell[2]).value(e[0], e[1], e[2]);
  };

  for (int axis = 0; axis < 3; ++axis) {
    Vec3 xi_dn = {0, 0, 0};
    xi_dn[axis] = 1.0;
    std::array<int, 3> fd = n;
    fd[axis] += 1;
    std::array<int, 3> f;
    double amax = 0.0;
    for (f[2] = 0; f[2] < fd[2]; ++f[2])
      for (f[1] = 0; f[1] < fd[1]; ++f[1])
        for (f[0] = 0; f[0] < fd[0]; ++f[0])
          for (int m = 0; m < Q; ++m)
            for (int v = 0; v < Q; ++v) {
              const MetricSample ms = face_metric(axis, f, m, v);
              const DirectionVector xi = DirectionVector::make(xi_dn, ms);
              if (opt.use_ideal_bound && eos.is_ideal()) {
                const PointState pm =
                    recover_point(trace(axis, f, -1, m, v), ms, eos, opt.recovery);
                const PointState pp =
                    recover_point(trace(axis, f, +1, m, v), ms, eos, opt.recovery);
                amax = std::max({amax,
                                 speed_bound_ideal(pm.prim, xi, ms, eos).eta_xi,
                                 speed_bound_ideal(pp.prim, xi, ms, eos).eta_xi});
              } else {
                amax = std::max(amax, speed_bound_general(xi, ms).eta_xi);
              }
            }
    a_star[axis] = opt.a_star_slack * amax;
  }

  Field out = avg;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        Vec5 acc = avg.at(i, j, k);
        for (int axis = 0; axis < 3; ++axis) {
          std::array<Vec5, 2> face_flux;
          for (int side = 0; side < 2; ++side) {
            std::array<int, 3> f = {i, j, k};
            f[axis] += side;
            Vec5 fl = zero5();
            for (int m = 0; m < Q; ++m)
              for (int v = 0; v < Q; ++v) {
                const MetricSample ms = face_metric(axis, f, m, v);
                const Vec5 wm = trace(axis, f, -1, m, v);
                const Vec5 wp = trace(axis, f, +1, m, v);
                const PointState pm = recover_point(wm, ms, eos, opt.recovery);
                const PointState pp = recover_point(wp, ms, eos, opt.recovery);
                const Vec5 hm = rescaled_flux(pm, ms, axis);
                const Vec5 hp = rescaled_flux(pp, ms, axis);
                const double wt =
                    quad.legendre.weights[m] * quad.legendre.weights[v];
                fl += wt * (0.5 * (hm + hp) -
                            (0.5 * a_star[axis]) * (wp - wm));
              }
            face_flux[side] = fl;
          }
          acc -= (dt / dx[axis]) * (face_flux[1] - face_flux[0]);
        }
        if (!metric.flat()) {
          Vec5 s = zero5();
          const Vec3 c = grid.center(i, j, k);
          int node = 0;
          for (int d = 0; d < Q; ++d)
            for (int m = 0; m < Q; ++m)
              for (int v = 0; v < Q; ++v, ++node) {
                const Vec3 x = {c[0] + quad.legendre.nodes[d] * dx[0],
                                c[1] + quad.legendre.nodes[m] * dx[1],
                                c[2] + quad.legendre.nodes[v] * dx[2]};
                const MetricSample ms = metric.sample(0.0, x);
                const Vec5 w =
                    pf.at(i, j, k).value(quad.legendre.nodes[d],
                                         quad.legendre.nodes[m],
                                         quad.legendre.nodes[v]);
                const PointState psn = recover_point(w, ms, eos, opt.recovery);
                s += (quad.legendre.weights[d] * quad.legendre.weights[m] *
                      quad.legendre.weights[v]) *
                     source_S(psn, ms);
              }
          acc += dt * s;
        }
        if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
          throw InvariantViolation("ref::fv_euler_step inadmissible cell");
        out.at(i, j, k) = acc;
      }
  avg = out;
}

void fd_euler_step(const CuboidGrid& grid, const MetricProvider& metric,
                   const EosParams& eos, const fd::FdOptions& opt, Field& pts,
                   double dt) {
  const auto& n = grid.n;
  const Vec3 dx = grid.dx();
  pts.fill_ghosts(grid.bc);

  const auto metric_at = [&](int i, int j, int k) {
    return metric.sample(0.0, ghost_position(grid, i, j, k));
  };

  // a_star over interior points
  std::array<double, 3> a_star = {0, 0, 0};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 xi_dn = {0, 0, 0};
    xi_dn[axis] = 1.0;
    double amax = 0.0;
    for (int k = 0; k < n[2]; ++k)
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i) {
          const MetricSample ms = metric_at(i, j, k);
          const DirectionVector xi = DirectionVector::make(xi_dn, ms);
          if (opt.use_ideal_bound && eos.is_ideal()) {
            const PointState p =
                recover_point(pts.at(i, j, k), ms, eos, opt.recovery);
            amax = std::max(amax, speed_bound_ideal(p.prim, xi, ms, eos).eta_xi);
          } else {
            amax = std::max(amax, speed_bound_general(xi, ms).eta_xi);
          }
        }
    a_star[axis] = opt.a_star_slack * amax;
  }

  const auto point_flux = [&](int i, int j, int k, int axis) {
    const MetricSample ms = metric_at(i, j, k);
    return rescaled_flux(recover_point(pts.at(i, j, k), ms, eos, opt.recovery),
                         ms, axis);
  };

  const auto lf_flux = [&](std::array<int, 3> f, int axis) {
    std::array<int, 3> l = f;
    l[axis] -= 1;
    const Vec5 hl = point_flux(l[0], l[1], l[2], axis);
    const Vec5 hr = point_flux(f[0], f[1], f[2], axis);
    return 0.5 * (hl + hr -
                  a_star[axis] * (pts.at(f[0], f[1], f[2]) -
                                  pts.at(l[0], l[1], l[2])));
  };
  const auto high_flux = [&](std::array<int, 3> f, int axis) {
    const auto at = [&](int s) {
      std::array<int, 3> q = f;
      q[axis] += s;
      return q;
    };
    const auto plus = [&](int s) {
      const auto q = at(s);
      return 0.5 * (point_flux(q[0], q[1], q[2], axis) +
                    a_star[axis] * pts.at(q[0], q[1], q[2]));
    };
    const auto minus = [&](int s) {
      const auto q = at(s);
      return 0.5 * (point_flux(q[0], q[1], q[2], axis) -
                    a_star[axis] * pts.at(q[0], q[1], q[2]));
    };
    return fd::weno5_face(plus(-3), plus(-2), plus(-1), plus(0), plus(1),
                          opt.weno_eps) +
           fd::weno5_face(minus(2), minus(1), minus(0), minus(-1), minus(-2),
                          opt.weno_eps);
  };

  // W(0), eps
  GridArray<Vec5> w0(grid, 0), source(grid, 0);
  double eps = 1e-12;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        Vec5 acc = pts.at(i, j, k);
        Vec5 s = zero5();
        if (!metric.flat()) {
          const MetricSample ms = metric_at(i, j, k);
          s = source_S(recover_point(pts.at(i, j, k), ms, eos, opt.recovery),
                       ms);
        }
        source.at(i, j, k) = s;
        acc += dt * s;
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
          hi[axis] += 1;
          acc += (dt / dx[axis]) * (lf_flux(lo, axis) - lf_flux(hi, axis));
        }
        if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
          throw InvariantViolation("ref::fd_euler_step: LxF state inadmissible");
        w0.at(i, j, k) = acc;
        eps = std::min({eps, acc[0], q_star(acc)});
      }

  // Lambda boxes
  GridArray<std::array<double, 6>> lambda(grid, 1);
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        if (!opt.limiter_enabled) {
          lambda.at(i, j, k) = {1, 1, 1, 1, 1, 1};
          continue;
        }
        fd::CorrectionVectors cv;
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
          hi[axis] += 1;
          cv.c[2 * axis] =
              (dt / dx[axis]) * (high_flux(lo, axis) - lf_flux(lo, axis));
          cv.c[2 * axis + 1] =
              (-dt / dx[axis]) * (high_flux(hi, axis) - lf_flux(hi, axis));
        }
        const auto lam0 = fd::lambda0_box(w0.at(i, j, k), cv, eps, opt.eps0);
        lambda.at(i, j, k) = fd::shrink_box(w0.at(i, j, k), cv, lam0, eps);
      }
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
        map(wi, n[0], grid.bc[0]);
        map(wj, n[1], grid.bc[1]);
        map(wk, n[2], grid.bc[2]);
        lambda.at(i, j, k) = outside ? std::array<double, 6>{1, 1, 1, 1, 1, 1}
                                     : lambda.at(wi, wj, wk);
      }

  Field out = pts;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        Vec5 acc = pts.at(i, j, k) + dt * source.at(i, j, k);
        for (int axis = 0; axis < 3; ++axis) {
          std::array<int, 3> lo = {i, j, k}, hi = {i, j, k};
          hi[axis] += 1;
          std::array<int, 3> lol = lo, hil = hi;
          lol[axis] -= 1;
          hil[axis] -= 1;
          const double th_lo = fd::combine_face_theta(
              lambda.at(lol[0], lol[1], lol[2])[2 * axis + 1],
              lambda.at(lo[0], lo[1], lo[2])[2 * axis]);
          const double th_hi = fd::combine_face_theta(
              lambda.at(hil[0], hil[1], hil[2])[2 * axis + 1],
              lambda.at(hi[0], hi[1], hi[2])[2 * axis]);
          const Vec5 lf_lo = lf_flux(lo, axis), lf_hi = lf_flux(hi, axis);
          const Vec5 flux_lo = lf_lo + th_lo * (high_flux(lo, axis) - lf_lo);
          const Vec5 flux_hi = lf_hi + th_hi * (high_flux(hi, axis) - lf_hi);
          acc += (dt / dx[axis]) * (flux_lo - flux_hi);
        }
        if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
          throw InvariantViolation("ref::fd_euler_step inadmissible point");
        out.at(i, j, k) = acc;
      }
  pts = out;
}

}  // namespace grhd::ref
