#pragma once

#include "grhd/fdpcp.hpp"
#include "grhd/fvpcp.hpp"
#include "grhd/lxf1.hpp"

namespace grhd::ref {

/// Plain serial re-derivations of the scheme updates, orchestrated cell by
/// cell with no face-array caching or threading. They call the same point
/// kernels as the production paths, so the tests compare results bit for
/// bit; the benchmark tool compares run times.

CellField lxf1_step(const Lxf1Scheme& scheme, const CellField& field, double dt);

void fv_euler_step(const CuboidGrid& grid, const MetricProvider& metric,
                   const EosParams& eos, const fv::FvOptions& opt, Field& avg,
                   double dt);

void fd_euler_step(const CuboidGrid& grid, const MetricProvider& metric,
                   const EosParams& eos, const fd::FdOptions& opt, Field& pts,
                   double dt);

}  // namespace grhd::ref
