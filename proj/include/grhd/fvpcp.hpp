#pragma once

#include <array>
#include <vector>

#include "grhd/flux.hpp"
#include "grhd/grid.hpp"
#include "grhd/quadrature.hpp"
#include "grhd/states.hpp"

namespace grhd::fv {

/// Degree-K solution polynomial in dimension-by-dimension form,
///   W(x) = Wbar + sum_a [ c1[a] eps_a + c2[a] (eps_a^2 - 1/12) ],
/// with eps_a = (x_a - center_a)/dx_a in [-1/2, 1/2]. Both basis functions
/// have zero cell average, so the stored average is exact by construction.
struct CellPoly {
  Vec5 avg = zero5();
  std::array<Vec5, 3> c1 = {zero5(), zero5(), zero5()};
  std::array<Vec5, 3> c2 = {zero5(), zero5(), zero5()};

  Vec5 value(double e0, double e1, double e2) const {
    Vec5 v = avg;
    const double b0 = e0 * e0 - 1.0 / 12.0;
    const double b1 = e1 * e1 - 1.0 / 12.0;
    const double b2 = e2 * e2 - 1.0 / 12.0;
    for (int c = 0; c < 5; ++c)
      v[c] += c1[0][c] * e0 + c2[0][c] * b0 + c1[1][c] * e1 + c2[1][c] * b1 +
              c1[2][c] * e2 + c2[2][c] * b2;
    return v;
  }
};

/// Polynomials for the interior cells plus one ring (needed for the outer
/// traces of domain-boundary faces).
struct PolyField {
  std::array<int, 3> n;
  std::vector<CellPoly> p;

  CellPoly& at(int i, int j, int k) { return p[index(i, j, k)]; }
  const CellPoly& at(int i, int j, int k) const { return p[index(i, j, k)]; }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k + 1) * (n[1] + 2) +
            static_cast<std::size_t>(j + 1)) *
               (n[0] + 2) +
           static_cast<std::size_t>(i + 1);
  }
};

/// Per-axis reconstruction from the 3-cell average stencil. K=0: constant.
/// K=1: minmod-limited linear. K=2: CWENO quadratic that reduces to the full
/// 3-cell parabola on smooth data and to one-sided linears at discontinuities.
void reconstruct_axis(const Vec5& wm, const Vec5& w0, const Vec5& wp, int K,
                      double weno_eps, Vec5& c1, Vec5& c2);

struct LimiterResult {
  bool vacuum = false;
  double theta1 = 1.0;
  double theta2 = 1.0;
  bool active() const { return vacuum || theta1 < 1.0 || theta2 < 1.0; }
};

/// Two-stage PCP scaling limiter enforcing W0 >= eps and q >= eps on the
/// tensor node set S_ijk. If the cell average itself is outside the floored
/// set the cell is treated as vacuum and the polynomial collapses to its
/// average. The cell average is unchanged in all branches.
LimiterResult pcp_scaling_limiter(CellPoly& poly, double eps,
                                  const QuadratureSet& quad);

struct FvOptions {
  int degree = 2;
  double eps = 1e-12;
  double a_star_slack = 1.1;
  bool limiter_enabled = true;
  bool use_ideal_bound = false;
  double cfl_margin = 1e-6;
  double weno_eps = 1e-6;
  RecoveryOptions recovery;
};

struct StepStats {
  std::array<double, 3> a_star = {0, 0, 0};
  double lambda_s_max = 0;
  long limited_cells = 0;
  double min_w0 = 0;
  double min_q = 0;
};

/// High-order PCP finite-volume scheme on a uniform cuboid grid: per-cell
/// reconstruction and scaling limiter, Gauss-point LxF face fluxes,
/// cell-average update with the quadrature source average, SSP-RK3 in time.
class FvScheme {
 public:
  FvScheme(const CuboidGrid& grid, const MetricProvider& metric,
           const EosParams& eos, FvOptions opt = {});

  /// Field with the ghost width this scheme needs (2 cells).
  Field make_field() const { return Field(grid_, 2); }

  /// Largest dt allowed by the PCP CFL condition for the current field (the
  /// stage-0 limited reconstruction), including the source term lambda_S.
  double max_dt(const Field& avg, double t) const;

  StepStats euler_step(Field& avg, double t, double dt) const;
  StepStats rk3_step(Field& avg, double t, double dt) const;

  /// Reconstruction of interior cells plus one ring, limited per options.
  PolyField reconstruct_and_limit(const Field& avg, long* limited_count) const;

  /// Quadrature average of the geometric source over one cell (zero for a
  /// flat metric).
  Vec5 source_average(const CellPoly& poly, int i, int j, int k) const;

  const CuboidGrid& grid() const { return grid_; }
  const QuadratureSet& quadrature() const { return quad_; }
  const FvOptions& options() const { return opt_; }
  const EosParams& eos() const { return eos_; }
  bool metric_is_flat() const { return flat_; }

 private:
  struct Stage;
  void build_stage(const Field& avg, Stage& st) const;
  StepStats apply_stage(Field& avg, const Stage& st, double dt,
                        const std::array<double, 3>& a_star,
                        double* min_w0 = nullptr, double* min_q = nullptr) const;

  const MetricSample& face_ms(int axis, std::size_t flat_index) const {
    return flat_ ? shared_ms_[0] : face_ms_[axis][flat_index];
  }
  const MetricSample& interior_ms(std::size_t cell, int node) const;

  CuboidGrid grid_;
  EosParams eos_;
  FvOptions opt_;
  QuadratureSet quad_;
  bool flat_;
  std::array<int, 3> nf_;  // face counts per axis
  std::vector<MetricSample> shared_ms_;
  std::array<std::vector<MetricSample>, 3> face_ms_;  // per axis, face x Q^2
  std::vector<MetricSample> interior_ms_;             // cells x Q^3 (curved)
};

}  // namespace grhd::fv
