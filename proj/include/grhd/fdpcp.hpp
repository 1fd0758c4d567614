#pragma once

#include <array>
#include <vector>

#include "grhd/flux.hpp"
#include "grhd/grid.hpp"
#include "grhd/states.hpp"

namespace grhd::fd {

/// Jiang-Shu fifth-order WENO face value from five point values in increasing
/// index order; the face lies between v2 and v3.
double weno5_face(double v0, double v1, double v2, double v3, double v4,
                  double eps);
Vec5 weno5_face(const Vec5& v0, const Vec5& v1, const Vec5& v2, const Vec5& v3,
                const Vec5& v4, double eps);

/// The six signed flux-difference vectors C_1..C_6 of one grid point.
/// Ordering: (x-lo, x-hi, y-lo, y-hi, z-lo, z-hi).
struct CorrectionVectors {
  std::array<Vec5, 6> c;
};

/// Step 3.1(a): hyperrectangle Theta_0^* = prod [0, Lambda_0^(l)] on which
/// the first component stays >= eps. eps0 guards the division.
std::array<double, 6> lambda0_box(const Vec5& w0, const CorrectionVectors& c,
                                  double eps, double eps0);

/// Step 3.1(b): shrink toward Theta by scaling every vertex whose q drops
/// below eps back to the unique ray point with q = eps (bisection; q is
/// concave along the ray). Returns the per-direction minima.
std::array<double, 6> shrink_box(const Vec5& w0, const CorrectionVectors& c,
                                 const std::array<double, 6>& lambda0,
                                 double eps);

/// Step 3.2: face blend parameter from the hi-side box of the left point
/// and the lo-side box of the right point.
inline double combine_face_theta(double lambda_hi_of_left,
                                 double lambda_lo_of_right) {
  return lambda_hi_of_left < lambda_lo_of_right ? lambda_hi_of_left
                                                : lambda_lo_of_right;
}

struct FdOptions {
  double eps0 = 1e-12;
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
  double eps = 0;        // adaptive floor of the (last) stage
  double min_theta = 1;  // over faces and stages
  long limited_faces = 0;
  double min_w0 = 0;
  double min_q = 0;
  // worst updated-state margins against the stage floor, over all stages
  double min_w0_minus_eps = 0;
  double min_q_minus_eps = 0;
};

/// One recorded blend box (diagnostics for the vertex-membership checks).
struct BoxSample {
  Vec5 w0;
  CorrectionVectors c;
  std::array<double, 6> lambda;
  double eps;
};

/// High-order conservative finite-difference scheme with the parametrized
/// PCP flux limiter: WENO5 base fluxes from a global LxF splitting, a
/// first-order LxF fallback, and a per-point hyperrectangle search for the
/// largest admissible blend parameters.
class FdScheme {
 public:
  FdScheme(const CuboidGrid& grid, const MetricProvider& metric,
           const EosParams& eos, FdOptions opt = {});

  /// Grid points sit at cell centers; ghost width 3 for the WENO stencils.
  Field make_field() const { return Field(grid_, 3); }

  double max_dt(const Field& pts, double t) const;

  /// One forward-Euler stage. When box_samples is non-null the blend boxes
  /// are recorded for external verification (every point on small grids,
  /// every 16th point otherwise).
  StepStats euler_step(Field& pts, double t, double dt,
                       std::vector<BoxSample>* box_samples = nullptr) const;
  StepStats rk3_step(Field& pts, double t, double dt) const;

  const CuboidGrid& grid() const { return grid_; }
  const FdOptions& options() const { return opt_; }
  const EosParams& eos() const { return eos_; }
  bool metric_is_flat() const { return flat_; }
  const MetricSample& point_metric(int i, int j, int k) const {
    return metric_cache_.cell(i, j, k);
  }

 private:
  StepStats stage(Field& pts, double dt, std::array<double, 3>& a_star,
                  bool first_stage,
                  std::vector<BoxSample>* box_samples = nullptr) const;
  std::array<double, 3> raw_speed_max(const GridArray<PointState>& ps) const;

  CuboidGrid grid_;
  EosParams eos_;
  FdOptions opt_;
  bool flat_;
  GridMetricCache metric_cache_;
};

}  // namespace grhd::fd
