#pragma once

#include <optional>
#include <random>
#include <string>

#include "grhd/eos.hpp"
#include "grhd/fdpcp.hpp"
#include "grhd/fvpcp.hpp"
#include "grhd/grid.hpp"
#include "grhd/mesh.hpp"
#include "grhd/spacetime.hpp"

namespace grhd {

enum class SchemeKind { Lxf1, Fvpcp, Fdpcp };
enum class SnapshotFormat { None, Csv, Binary, Both };

struct SineProfile {
  double base = 1.0;
  double amp = 0.0;
  Vec3 wave = {0, 0, 0};  // alpha(x) = base + amp sin(2 pi wave . x)
  double operator()(const Vec3& x) const;
};

struct MetricConfig {
  enum class Kind { Minkowski, DiagonalStatic } kind = Kind::Minkowski;
  SineProfile alpha;
  std::array<SineProfile, 3> gamma_diag;
  MetricProvider build() const;
};

struct InitialConfig {
  enum class Kind { Constant, SmoothWave, Riemann1d, RandomAdmissible } kind =
      Kind::Constant;
  // constant / riemann states
  double rho_l = 1, p_l = 1;
  Vec3 v_l = {0, 0, 0};
  double rho_r = 1, p_r = 1;
  Vec3 v_r = {0, 0, 0};
  int axis = 0;
  double x0 = 0.5;
  // smooth wave
  double rho0 = 1, amplitude = 0.2, velocity = 0.2, pressure = 1;
  // random
  unsigned long seed = 1234;
  double range_min = 1e-8, range_max = 1e2;

  /// Pointwise primitive state of the initial condition.
  void primitives_at(const Vec3& x, std::mt19937_64& rng,
                     const MetricSample& ms, const EosParams& eos,
                     double& rho, Vec3& v_dn, double& p) const;
};

struct MeshConfig {
  enum class Kind { Hex, Prism, Json } kind = Kind::Hex;
  std::array<int, 3> cells = {16, 16, 16};
  Vec3 lower = {0, 0, 0};
  Vec3 upper = {1, 1, 1};
  std::array<bool, 3> periodic = {true, true, true};
  std::string path;
  UnstructuredMesh build() const;
};

struct OutputConfig {
  std::string directory = "out";
  std::string prefix = "run";
  int cadence = 0;  // snapshots every N steps; 0 = final only
  SnapshotFormat format = SnapshotFormat::Csv;
};

struct RunConfig {
  SchemeKind scheme = SchemeKind::Fvpcp;
  double eos_gamma = 5.0 / 3.0;
  MetricConfig metric;
  CuboidGrid grid;
  MeshConfig mesh;
  InitialConfig initial;
  double t_end = 0.4;
  double cfl = 0.5;
  long max_steps = -1;  // -1: until t_end
  int fv_degree = 2;
  double pcp_eps = 1e-12;
  double a_star_slack = 1.1;
  bool limiter_enabled = true;
  bool use_ideal_bound = false;
  OutputConfig output;

  EosParams eos() const { return EosParams::ideal(eos_gamma); }
  fv::FvOptions fv_options() const;
  fd::FdOptions fd_options() const;
};

/// Parses and validates a run configuration; throws ConfigError with the
/// offending field path in the message.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

}  // namespace grhd
