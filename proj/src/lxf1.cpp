#include "grhd/lxf1.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grhd/parallel.hpp"

namespace grhd {

Vec5 lxf_face_flux(const PointState& psk, const PointState& psj, const Vec5& wk,
                   const Vec5& wj, const DirectionVector& xi,
                   const MetricSample& ms, double a, const EosParams& eos) {
  double required;
  if (eos.is_ideal()) {
    required = std::max(speed_bound_ideal(psk.prim, xi, ms, eos).eta_xi,
                        speed_bound_ideal(psj.prim, xi, ms, eos).eta_xi);
  } else {
    required = speed_bound_general(xi, ms).eta_xi;
  }
  if (a < required * (1.0 - 1e-12))
    throw ContractError("lxf_face_flux: viscosity coefficient below the "
                        "wave-speed bound");

  Vec5 hk = zero5(), hj = zero5();
  for (int l = 0; l < 3; ++l) {
    if (xi.xi_dn[l] == 0.0) continue;
    hk += xi.xi_dn[l] * rescaled_flux(psk, ms, l);
    hj += xi.xi_dn[l] * rescaled_flux(psj, ms, l);
  }
  return 0.5 * (hk + hj) - (0.5 * a) * (wj - wk);
}

Vec5 lxf_face_flux(const Vec5& wk, const Vec5& wj, const Vec3& xi_dn,
                   const MetricSample& ms, double a, const EosParams& eos) {
  const DirectionVector xi = DirectionVector::make(xi_dn, ms);
  const PointState psk = recover_point(wk, ms, eos);
  const PointState psj = recover_point(wj, ms, eos);
  return lxf_face_flux(psk, psj, wk, wj, xi, ms, a, eos);
}

Lxf1Scheme::Lxf1Scheme(UnstructuredMesh mesh, const MetricProvider& metric,
                       const EosParams& eos, Lxf1Options opt)
    : mesh_(std::move(mesh)), eos_(eos), opt_(opt), flat_(metric.flat()) {
  if (mesh_.cells.empty()) throw ConfigError("lxf1: empty mesh");
  if (mesh_.faces_of.size() != mesh_.cells.size()) mesh_.build_adjacency();
  if (flat_) {
    cell_ms_ = {metric.sample(0.0, {0, 0, 0})};
    face_ms_ = cell_ms_;
  } else {
    cell_ms_.resize(mesh_.cells.size());
    for (std::size_t c = 0; c < mesh_.cells.size(); ++c)
      cell_ms_[c] = metric.sample(0.0, mesh_.cells[c].centroid);
    face_ms_.resize(mesh_.faces.size());
    for (std::size_t f = 0; f < mesh_.faces.size(); ++f)
      face_ms_[f] = metric.sample(0.0, mesh_.faces[f].centroid);
  }
}

double Lxf1Scheme::face_viscosity(const PointState* psk, const PointState* psj,
                                  const DirectionVector& xi,
                                  const MetricSample& ms) const {
  if (opt_.use_ideal_bound && eos_.is_ideal()) {
    double a = speed_bound_ideal(psk->prim, xi, ms, eos_).eta_xi;
    if (psj) a = std::max(a, speed_bound_ideal(psj->prim, xi, ms, eos_).eta_xi);
    return a;
  }
  return speed_bound_general(xi, ms).eta_xi;
}

std::vector<PointState> Lxf1Scheme::recover_cells_at_centroids(
    const CellField& field) const {
  std::vector<PointState> ps(mesh_.cells.size());
  par_for(mesh_.cells.size(), [&](std::size_t c) {
    try {
      ps[c] = recover_point(field.w[c], cell_metric(static_cast<int>(c)), eos_,
                            opt_.recovery);
    } catch (const Error& e) {
      throw DomainError("lxf1: cell " + std::to_string(c) + ": " + e.what());
    }
  });
  return ps;
}

double Lxf1Scheme::max_dt(const CellField& field) const {
  if (field.w.size() != mesh_.cells.size())
    throw ConfigError("lxf1: field size does not match mesh");

  // Per-face recovery is needed only for the ideal bound or a curved metric;
  // with a flat metric the centroid recovery doubles for the faces.
  const std::vector<PointState> ps = recover_cells_at_centroids(field);

  std::vector<double> face_a(mesh_.faces.size());
  par_for(mesh_.faces.size(), [&](std::size_t f) {
    const MeshFace& face = mesh_.faces[f];
    const MetricSample& ms = face_metric(static_cast<int>(f));
    const DirectionVector xi = DirectionVector::make(face.normal, ms);
    if (opt_.use_ideal_bound && eos_.is_ideal() && !flat_) {
      const PointState pk = recover_point(field.w[face.k], ms, eos_, opt_.recovery);
      if (face.j >= 0) {
        const PointState pj = recover_point(field.w[face.j], ms, eos_, opt_.recovery);
        face_a[f] = face_viscosity(&pk, &pj, xi, ms);
      } else {
        face_a[f] = face_viscosity(&pk, nullptr, xi, ms);
      }
    } else {
      const PointState* pk = &ps[face.k];
      const PointState* pj = face.j >= 0 ? &ps[face.j] : nullptr;
      face_a[f] = face_viscosity(pk, pj, xi, ms);
    }
  });

  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long long c = 0; c < static_cast<long long>(mesh_.cells.size()); ++c) {
    double sum = 0.0;
    for (const auto& [f, orient] : mesh_.faces_of[c])
      sum += face_a[f] * mesh_.faces[f].area;
    double bound = sum / (2.0 * mesh_.cells[c].volume);
    if (!flat_) {
      const Vec5 s = source_S(ps[c], cell_metric(static_cast<int>(c)));
      bound += lambda_S_solve(field.w[c], s);
    }
    worst = std::max(worst, bound);
  }
  if (!(worst > 0.0)) throw ConfigError("lxf1: degenerate CFL bound");
  return (1.0 - opt_.cfl_margin) / worst;
}

CellField Lxf1Scheme::step_euler(const CellField& field, double dt) const {
  if (field.w.size() != mesh_.cells.size())
    throw ConfigError("lxf1: field size does not match mesh");

  const std::vector<PointState> centroid_ps = recover_cells_at_centroids(field);

  // Face pass: every flux is computed once; the cell pass below only gathers.
  std::vector<Vec5> face_flux(mesh_.faces.size());
  par_for(mesh_.faces.size(), [&](std::size_t f) {
    const MeshFace& face = mesh_.faces[f];
    const MetricSample& ms = face_metric(static_cast<int>(f));
    const DirectionVector xi = DirectionVector::make(face.normal, ms);
    const Vec5& wk = field.w[face.k];
    const Vec5& wj = face.j >= 0 ? field.w[face.j] : field.w[face.k];
    PointState pk, pj;
    if (flat_) {
      pk = centroid_ps[face.k];
      pj = face.j >= 0 ? centroid_ps[face.j] : pk;
    } else {
      pk = recover_point(wk, ms, eos_, opt_.recovery);
      pj = face.j >= 0 ? recover_point(wj, ms, eos_, opt_.recovery) : pk;
    }
    const double a = face_viscosity(&pk, face.j >= 0 ? &pj : nullptr, xi, ms);
    face_flux[f] = lxf_face_flux(pk, pj, wk, wj, xi, ms, a, eos_);
  });

  CellField out;
  out.w.resize(field.w.size());
  par_for(mesh_.cells.size(), [&](std::size_t c) {
    Vec5 acc = field.w[c];
    const double scale = dt / mesh_.cells[c].volume;
    for (const auto& [f, orient] : mesh_.faces_of[c])
      acc -= (scale * orient * mesh_.faces[f].area) * face_flux[f];
    if (!flat_) {
      const Vec5 s = source_S(centroid_ps[c], cell_metric(static_cast<int>(c)));
      acc += dt * s;
    }
    if (!(acc[0] > 0.0) || !(q_star(acc) > 0.0))
      throw InvariantViolation(
          "lxf1: inadmissible state produced at cell " + std::to_string(c) +
          " (W0 = " + std::to_string(acc[0]) +
          ", q = " + std::to_string(q_star(acc)) + ")");
    out.w[c] = acc;
  });
  return out;
}

}  // namespace grhd
