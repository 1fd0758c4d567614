#pragma once

#include "grhd/flux.hpp"
#include "grhd/mesh.hpp"
#include "grhd/states.hpp"

namespace grhd {

/// Per-cell rescaled states, indexed like mesh.cells.
struct CellField {
  std::vector<Vec5> w;
};

/// LxF face flux 0.5 xi_l (H^l(wk) + H^l(wj)) - (a/2)(wj - wk) from already
/// recovered side states. Throws ContractError when the viscosity coefficient
/// is below the required wave-speed maximum.
Vec5 lxf_face_flux(const PointState& psk, const PointState& psj, const Vec5& wk,
                   const Vec5& wj, const DirectionVector& xi,
                   const MetricSample& ms, double a, const EosParams& eos);

/// Convenience overload running the recoveries.
Vec5 lxf_face_flux(const Vec5& wk, const Vec5& wj, const Vec3& xi_dn,
                   const MetricSample& ms, double a, const EosParams& eos);

struct Lxf1Options {
  bool use_ideal_bound = false;
  double cfl_margin = 1e-6;
  RecoveryOptions recovery;
};

/// First-order PCP LxF scheme on an unstructured mesh. Face fluxes use the
/// metric at face centroids, cell sources the metric at cell centroids.
/// Deterministic given the input field; face and cell loops are
/// OpenMP-parallel with a face-array/gather split so no accumulator is
/// written concurrently.
class Lxf1Scheme {
 public:
  Lxf1Scheme(UnstructuredMesh mesh, const MetricProvider& metric,
             const EosParams& eos, Lxf1Options opt = {});

  /// Largest dt allowed by the PCP CFL condition, with a (1 - margin) factor.
  double max_dt(const CellField& field) const;

  /// Forward-Euler update; aborts with InvariantViolation if any output cell
  /// leaves the admissible set.
  CellField step_euler(const CellField& field, double dt) const;

  const UnstructuredMesh& mesh() const { return mesh_; }
  const MetricSample& cell_metric(int c) const { return cell_ms_[ms_index(c, cell_ms_)]; }
  const MetricSample& face_metric(int f) const { return face_ms_[ms_index(f, face_ms_)]; }
  const EosParams& eos() const { return eos_; }
  bool metric_is_flat() const { return flat_; }

  /// Viscosity coefficient for one face per the scheme's bound choice.
  double face_viscosity(const PointState* psk, const PointState* psj,
                        const DirectionVector& xi, const MetricSample& ms) const;

 private:
  static std::size_t ms_index(int i, const std::vector<MetricSample>& v) {
    return v.size() == 1 ? 0 : static_cast<std::size_t>(i);
  }

  std::vector<PointState> recover_cells_at_centroids(const CellField& field) const;

  UnstructuredMesh mesh_;
  EosParams eos_;
  Lxf1Options opt_;
  bool flat_;
  std::vector<MetricSample> cell_ms_;  // size 1 when the metric is flat
  std::vector<MetricSample> face_ms_;
};

}  // namespace grhd
