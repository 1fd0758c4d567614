// Timing comparison between the OpenMP scheme kernels and the serial
// reference implementations on a 3D smooth problem.

#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "grhd/reference.hpp"

namespace {

using Clock = std::chrono::steady_clock;

grhd::Field smooth_field(const grhd::CuboidGrid& grid,
                         const grhd::MetricProvider& metric,
                         const grhd::EosParams& eos, int ghost) {
  grhd::Field f(grid, ghost);
  const grhd::MetricSample ms = metric.sample(0.0, {0, 0, 0});
  for (int k = 0; k < grid.n[2]; ++k)
    for (int j = 0; j < grid.n[1]; ++j)
      for (int i = 0; i < grid.n[0]; ++i) {
        const grhd::Vec3 x = grid.center(i, j, k);
        const double rho =
            1.0 + 0.2 * std::sin(2.0 * M_PI * (x[0] + x[1] + x[2]));
        const grhd::Primitives pr =
            grhd::make_primitives(rho, {0.2, 0.1, 0.0}, 1.0, ms, eos);
        f.at(i, j, k) =
            grhd::u_to_w(grhd::primitives_to_conserved(pr, ms, eos), ms).w;
      }
  return f;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial-reference vs OpenMP kernel timings"};
  int n = 32;
  int steps = 2;
  app.add_option("--size", n, "cells per axis");
  app.add_option("--steps", steps, "timed steps per kernel");
  CLI11_PARSE(app, argc, argv);

  const grhd::MetricProvider metric = grhd::MetricProvider::minkowski();
  const grhd::EosParams eos = grhd::EosParams::ideal(5.0 / 3.0);
  grhd::CuboidGrid grid;
  grid.n = {n, n, n};

  // The reference paths recompute point values chase-free cell by cell, so
  // the ratio mixes thread scaling with the flux/recovery caching of the
  // production kernels.
  std::printf("%-22s %12s %12s %8s\n", "kernel", "reference[s]", "openmp [s]",
              "ratio");

  {
    grhd::fv::FvOptions opt;
    opt.degree = 1;
    grhd::fv::FvScheme scheme(grid, metric, eos, opt);
    grhd::Field f0 = smooth_field(grid, metric, eos, 2);
    const double dt = 0.25 * scheme.max_dt(f0, 0.0);

    grhd::Field fs = f0;
    auto t0 = Clock::now();
    for (int s = 0; s < steps; ++s)
      grhd::ref::fv_euler_step(grid, metric, eos, opt, fs, dt);
    const double serial = seconds_since(t0);

    grhd::Field fp = f0;
    t0 = Clock::now();
    for (int s = 0; s < steps; ++s) scheme.euler_step(fp, 0.0, dt);
    const double parallel = seconds_since(t0);
    std::printf("%-22s %12.3f %12.3f %8.2f\n", "fvpcp euler (K=1)",
                serial / steps, parallel / steps, serial / parallel);
  }

  {
    grhd::fd::FdOptions opt;
    grhd::fd::FdScheme scheme(grid, metric, eos, opt);
    grhd::Field f0 = smooth_field(grid, metric, eos, 3);
    const double dt = 0.25 * scheme.max_dt(f0, 0.0);

    grhd::Field fs = f0;
    auto t0 = Clock::now();
    for (int s = 0; s < steps; ++s)
      grhd::ref::fd_euler_step(grid, metric, eos, opt, fs, dt);
    const double serial = seconds_since(t0);

    grhd::Field fp = f0;
    t0 = Clock::now();
    for (int s = 0; s < steps; ++s) scheme.euler_step(fp, 0.0, dt);
    const double parallel = seconds_since(t0);
    std::printf("%-22s %12.3f %12.3f %8.2f\n", "fdpcp euler (WENO5)",
                serial / steps, parallel / steps, serial / parallel);
  }

  {
    grhd::UnstructuredMesh mesh = grhd::UnstructuredMesh::hex_grid(
        {n, n, n}, {0, 0, 0}, {1, 1, 1}, {true, true, true});
    grhd::Lxf1Scheme scheme(std::move(mesh), metric, eos, {});
    const grhd::Field tmp = smooth_field(grid, metric, eos, 0);
    grhd::CellField f0;
    f0.w.reserve(grid.cell_count());
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) f0.w.push_back(tmp.at(i, j, k));
    const double dt = 0.25 * scheme.max_dt(f0);

    auto t0 = Clock::now();
    grhd::CellField fs = f0;
    for (int s = 0; s < steps; ++s) fs = grhd::ref::lxf1_step(scheme, fs, dt);
    const double serial = seconds_since(t0);

    t0 = Clock::now();
    grhd::CellField fp = f0;
    for (int s = 0; s < steps; ++s) fp = scheme.step_euler(fp, dt);
    const double parallel = seconds_since(t0);
    std::printf("%-22s %12.3f %12.3f %8.2f\n", "lxf1 euler", serial / steps,
                parallel / steps, serial / parallel);
  }
  return 0;
}
