#include "grhd/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "grhd/fdpcp.hpp"
#include "grhd/fvpcp.hpp"
#include "grhd/lxf1.hpp"
#include "grhd/snapshot.hpp"

namespace grhd {

namespace {

struct Diagnostics {
  std::ofstream csv;

  explicit Diagnostics(const std::string& path) : csv(path) {
    if (!csv) throw ConfigError("diagnostics: cannot open " + path);
    csv << "step,t,dt,min_w0,min_q,min_rho,min_p,max_lorentz,limited,"
           "min_theta\n";
  }

  void row(long step, double t, double dt, double min_w0, double min_q,
           double min_rho, double min_p, double max_lorentz, long limited,
           double min_theta) {
    char line[512];
    std::snprintf(line, sizeof line,
                  "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%ld,%.17g\n",
                  step, t, dt, min_w0, min_q, min_rho, min_p, max_lorentz,
                  limited, min_theta);
    csv << line;
  }
};

struct PrimExtrema {
  double min_rho = std::numeric_limits<double>::infinity();
  double min_p = std::numeric_limits<double>::infinity();
  double max_lorentz = 0;

  void absorb(const Primitives& pr) {
    min_rho = std::min(min_rho, pr.rho);
    min_p = std::min(min_p, pr.p);
    max_lorentz = std::max(max_lorentz, pr.lorentz);
  }
};

std::string snap_path(const OutputConfig& out, long step, const char* ext) {
  return out.directory + "/" + out.prefix + "_" + std::to_string(step) + ext;
}

void init_field_on_grid(const RunConfig& cfg, const CuboidGrid& grid,
                        const MetricProvider& metric, Field& field) {
  const EosParams eos = cfg.eos();
  std::mt19937_64 rng(cfg.initial.seed);
  for (int k = 0; k < grid.n[2]; ++k)
    for (int j = 0; j < grid.n[1]; ++j)
      for (int i = 0; i < grid.n[0]; ++i) {
        const Vec3 x = grid.center(i, j, k);
        const MetricSample ms = metric.sample(0.0, x);
        double rho, p;
        Vec3 v;
        cfg.initial.primitives_at(x, rng, ms, eos, rho, v, p);
        const Primitives prim = make_primitives(rho, v, p, ms, eos);
        field.at(i, j, k) = u_to_w(primitives_to_conserved(prim, ms, eos), ms).w;
      }
}

template <class MsOf>
std::vector<SnapshotRow> snapshot_rows(const std::vector<Vec5>& w,
                                       const std::vector<Vec3>& pos,
                                       const EosParams& eos, MsOf&& ms_of,
                                       PrimExtrema* extrema) {
  std::vector<SnapshotRow> rows(w.size());
  for (std::size_t c = 0; c < w.size(); ++c) {
    const MetricSample& ms = ms_of(c);
    SnapshotRow r;
    r.index = c;
    r.position = pos[c];
    r.w = w[c];
    const PointState ps = recover_point(w[c], ms, eos);
    r.rho = ps.prim.rho;
    r.p = ps.prim.p;
    r.v_dn = ps.prim.v_dn;
    r.q_margin = q_star(w[c]);
    if (extrema) extrema->absorb(ps.prim);
    rows[c] = r;
  }
  return rows;
}

RunResult run_lxf1(const RunConfig& cfg) {
  RunResult res;
  const MetricProvider metric = cfg.metric.build();
  const EosParams eos = cfg.eos();
  UnstructuredMesh mesh = cfg.mesh.build();
  Lxf1Options opt;
  opt.use_ideal_bound = cfg.use_ideal_bound;
  Lxf1Scheme scheme(std::move(mesh), metric, eos, opt);
  const UnstructuredMesh& m = scheme.mesh();

  CellField field;
  field.w.resize(m.cells.size());
  std::mt19937_64 rng(cfg.initial.seed);
  std::vector<Vec3> centroids(m.cells.size());
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    centroids[c] = m.cells[c].centroid;
    const MetricSample ms = scheme.cell_metric(static_cast<int>(c));
    double rho, p;
    Vec3 v;
    cfg.initial.primitives_at(centroids[c], rng, ms, eos, rho, v, p);
    const Primitives prim = make_primitives(rho, v, p, ms, eos);
    field.w[c] = u_to_w(primitives_to_conserved(prim, ms, eos), ms).w;
  }

  Diagnostics diag(cfg.output.directory + "/" + cfg.output.prefix +
                   "_diagnostics.csv");
  const auto ms_of = [&](std::size_t c) -> const MetricSample& {
    return scheme.cell_metric(static_cast<int>(c));
  };
  const auto dump = [&](long step, PrimExtrema* ex) {
    if (cfg.output.format == SnapshotFormat::None && ex == nullptr) return;
    const auto rows = snapshot_rows(field.w, centroids, eos, ms_of, ex);
    if (cfg.output.format == SnapshotFormat::Csv ||
        cfg.output.format == SnapshotFormat::Both)
      write_snapshot_csv(snap_path(cfg.output, step, ".csv"), rows);
  };

  double t = 0;
  long step = 0;
  dump(0, nullptr);
  while (t < cfg.t_end && (cfg.max_steps < 0 || step < cfg.max_steps)) {
    const double dt =
        std::min(cfg.cfl * scheme.max_dt(field), cfg.t_end - t);
    field = scheme.step_euler(field, dt);
    t += dt;
    ++step;
    double min_w0 = std::numeric_limits<double>::infinity(), min_q = min_w0;
    for (const Vec5& w : field.w) {
      min_w0 = std::min(min_w0, w[0]);
      min_q = std::min(min_q, q_star(w));
    }
    PrimExtrema ex;
    const bool emit =
        cfg.output.cadence > 0 && step % cfg.output.cadence == 0;
    const auto rows = snapshot_rows(field.w, centroids, eos, ms_of, &ex);
    if (emit && (cfg.output.format == SnapshotFormat::Csv ||
                 cfg.output.format == SnapshotFormat::Both))
      write_snapshot_csv(snap_path(cfg.output, step, ".csv"), rows);
    diag.row(step, t, dt, min_w0, min_q, ex.min_rho, ex.min_p, ex.max_lorentz,
             0, 1.0);
  }
  dump(step, nullptr);
  res.steps = step;
  res.t = t;
  return res;
}

long stats_limited(const fv::StepStats& s) { return s.limited_cells; }
long stats_limited(const fd::StepStats& s) { return s.limited_faces; }
double stats_theta(const fv::StepStats&) { return 1.0; }
double stats_theta(const fd::StepStats& s) { return s.min_theta; }

template <class Scheme, class StepFn>
RunResult run_grid_scheme(const RunConfig& cfg, Scheme& scheme, Field& field,
                          const CuboidGrid& grid, const MetricProvider& metric,
                          StepFn&& do_step) {
  RunResult res;
  const EosParams eos = cfg.eos();
  Diagnostics diag(cfg.output.directory + "/" + cfg.output.prefix +
                   "_diagnostics.csv");

  std::vector<Vec3> pos(grid.cell_count());
  {
    std::size_t c = 0;
    for (int k = 0; k < grid.n[2]; ++k)
      for (int j = 0; j < grid.n[1]; ++j)
        for (int i = 0; i < grid.n[0]; ++i) pos[c++] = grid.center(i, j, k);
  }
  const auto gather = [&](std::vector<Vec5>& w) {
    w.resize(grid.cell_count());
    std::size_t c = 0;
    for (int k = 0; k < grid.n[2]; ++k)
      for (int j = 0; j < grid.n[1]; ++j)
        for (int i = 0; i < grid.n[0]; ++i) w[c++] = field.at(i, j, k);
  };
  const auto dump = [&](long step, double t, PrimExtrema* ex) {
    std::vector<Vec5> w;
    gather(w);
    const auto ms_of = [&](std::size_t c) {
      return metric.flat() ? metric.sample(0.0, {0, 0, 0})
                           : metric.sample(t, pos[c]);
    };
    const auto rows = snapshot_rows(w, pos, eos, ms_of, ex);
    if (cfg.output.format == SnapshotFormat::Csv ||
        cfg.output.format == SnapshotFormat::Both)
      write_snapshot_csv(snap_path(cfg.output, step, ".csv"), rows);
    if (cfg.output.format == SnapshotFormat::Binary ||
        cfg.output.format == SnapshotFormat::Both)
      write_snapshot_binary(snap_path(cfg.output, step, ".bin"), grid, t,
                            field);
  };

  double t = 0;
  long step = 0;
  if (cfg.output.format != SnapshotFormat::None) dump(0, 0.0, nullptr);
  while (t < cfg.t_end && (cfg.max_steps < 0 || step < cfg.max_steps)) {
    const double dt = std::min(cfg.cfl * scheme.max_dt(field, t),
                               cfg.t_end - t);
    const auto stats = do_step(field, t, dt);
    t += dt;
    ++step;
    PrimExtrema ex;
    {
      std::vector<Vec5> w;
      gather(w);
      const auto ms_of = [&](std::size_t c) {
        return metric.flat() ? metric.sample(0.0, {0, 0, 0})
                             : metric.sample(t, pos[c]);
      };
      (void)snapshot_rows(w, pos, eos, ms_of, &ex);
    }
    if (cfg.output.cadence > 0 && step % cfg.output.cadence == 0 &&
        cfg.output.format != SnapshotFormat::None)
      dump(step, t, nullptr);
    diag.row(step, t, dt, stats.min_w0, stats.min_q, ex.min_rho, ex.min_p,
             ex.max_lorentz, stats_limited(stats), stats_theta(stats));
  }
  if (cfg.output.format != SnapshotFormat::None) dump(step, t, nullptr);
  res.steps = step;
  res.t = t;
  return res;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  try {
    std::filesystem::create_directories(cfg.output.directory);
    if (cfg.scheme == SchemeKind::Lxf1) return run_lxf1(cfg);
    const MetricProvider metric = cfg.metric.build();
    const EosParams eos = cfg.eos();
    if (cfg.scheme == SchemeKind::Fvpcp) {
      fv::FvScheme scheme(cfg.grid, metric, eos, cfg.fv_options());
      Field field = scheme.make_field();
      init_field_on_grid(cfg, cfg.grid, metric, field);
      return run_grid_scheme(cfg, scheme, field, cfg.grid, metric,
                             [&](Field& f, double t, double dt) {
                               return scheme.rk3_step(f, t, dt);
                             });
    }
    fd::FdScheme scheme(cfg.grid, metric, eos, cfg.fd_options());
    Field field = scheme.make_field();
    init_field_on_grid(cfg, cfg.grid, metric, field);
    return run_grid_scheme(cfg, scheme, field, cfg.grid, metric,
                           [&](Field& f, double t, double dt) {
                             return scheme.rk3_step(f, t, dt);
                           });
  } catch (const Error& e) {
    RunResult res;
    res.status = 1;
    res.error = e.what();
    return res;
  }
}

std::vector<ConvergenceRow> convergence_harness(const RunConfig& base,
                                                int levels,
                                                const std::string& csv_path) {
  if (levels < 2)
    throw ConfigError("converge: need at least 2 refinement levels");
  if (base.initial.kind != InitialConfig::Kind::SmoothWave)
    throw ConfigError("converge: the harness needs the smooth-wave initial "
                      "condition (exact solution available)");

  std::vector<ConvergenceRow> rows;
  const int axis = base.initial.axis;
  for (int lev = 0; lev < levels; ++lev) {
    RunConfig cfg = base;
    cfg.output.format = SnapshotFormat::None;
    cfg.output.cadence = 0;
    cfg.output.directory =
        base.output.directory.empty() ? "." : base.output.directory;
    cfg.grid.n[axis] = base.grid.n[axis] << lev;
    cfg.mesh.cells = {cfg.grid.n[0], cfg.grid.n[1], cfg.grid.n[2]};

    const MetricProvider metric = cfg.metric.build();
    const EosParams eos = cfg.eos();

    // run and measure against the advected profile
    double l1 = 0.0;
    if (cfg.scheme == SchemeKind::Lxf1) {
      UnstructuredMesh mesh = cfg.mesh.build();
      Lxf1Options opt;
      opt.use_ideal_bound = cfg.use_ideal_bound;
      Lxf1Scheme scheme(std::move(mesh), metric, eos, opt);
      const UnstructuredMesh& m = scheme.mesh();
      CellField field;
      field.w.resize(m.cells.size());
      std::mt19937_64 rng(1);
      for (std::size_t c = 0; c < m.cells.size(); ++c) {
        const MetricSample ms = scheme.cell_metric(static_cast<int>(c));
        double rho, p;
        Vec3 v;
        cfg.initial.primitives_at(m.cells[c].centroid, rng, ms, eos, rho, v, p);
        field.w[c] =
            u_to_w(primitives_to_conserved(make_primitives(rho, v, p, ms, eos),
                                           ms, eos),
                   ms)
                .w;
      }
      double t = 0;
      while (t < cfg.t_end) {
        const double dt =
            std::min(cfg.cfl * scheme.max_dt(field), cfg.t_end - t);
        field = scheme.step_euler(field, dt);
        t += dt;
      }
      double vol_sum = 0.0;
      for (std::size_t c = 0; c < m.cells.size(); ++c) {
        const MetricSample ms = scheme.cell_metric(static_cast<int>(c));
        const PointState ps = recover_point(field.w[c], ms, eos);
        const double x = m.cells[c].centroid[axis];
        const double exact =
            cfg.initial.rho0 +
            cfg.initial.amplitude *
                std::sin(2.0 * M_PI * (x - cfg.initial.velocity * cfg.t_end));
        l1 += std::abs(ps.prim.rho - exact) * m.cells[c].volume;
        vol_sum += m.cells[c].volume;
      }
      l1 /= vol_sum;
    } else {
      Field field;
      double t = 0;
      if (cfg.scheme == SchemeKind::Fvpcp) {
        fv::FvScheme scheme(cfg.grid, metric, eos, cfg.fv_options());
        field = scheme.make_field();
        init_field_on_grid(cfg, cfg.grid, metric, field);
        while (t < cfg.t_end) {
          const double dt =
              std::min(cfg.cfl * scheme.max_dt(field, t), cfg.t_end - t);
          scheme.rk3_step(field, t, dt);
          t += dt;
        }
      } else {
        fd::FdScheme scheme(cfg.grid, metric, eos, cfg.fd_options());
        field = scheme.make_field();
        init_field_on_grid(cfg, cfg.grid, metric, field);
        while (t < cfg.t_end) {
          const double dt =
              std::min(cfg.cfl * scheme.max_dt(field, t), cfg.t_end - t);
          scheme.rk3_step(field, t, dt);
          t += dt;
        }
      }
      const MetricSample ms = metric.sample(0.0, {0, 0, 0});
      std::size_t count = 0;
      for (int k = 0; k < cfg.grid.n[2]; ++k)
        for (int j = 0; j < cfg.grid.n[1]; ++j)
          for (int i = 0; i < cfg.grid.n[0]; ++i) {
            const PointState ps = recover_point(field.at(i, j, k), ms, eos);
            const double x = cfg.grid.center(i, j, k)[axis];
            const double exact =
                cfg.initial.rho0 +
                cfg.initial.amplitude *
                    std::sin(2.0 * M_PI *
                             (x - cfg.initial.velocity * cfg.t_end));
            l1 += std::abs(ps.prim.rho - exact);
            ++count;
          }
      l1 /= static_cast<double>(count);
    }

    ConvergenceRow row;
    row.cells = cfg.grid.n[axis];
    row.l1_error = l1;
    row.order = rows.empty()
                    ? 0.0
                    : std::log2(rows.back().l1_error / std::max(l1, 1e-300));
    rows.push_back(row);
  }

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw ConfigError("converge: cannot open " + csv_path);
    out << "cells,l1_error,order\n";
    char line[128];
    for (const auto& r : rows) {
      std::snprintf(line, sizeof line, "%d,%.17g,%.6f\n", r.cells, r.l1_error,
                    r.order);
      out << line;
    }
  }
  return rows;
}

}  // namespace grhd
