#pragma once

#include <string>
#include <vector>

#include "grhd/grid.hpp"
#include "grhd/lxf1.hpp"
#include "grhd/states.hpp"

namespace grhd {

/// One row of field output: rescaled state plus the recovered primitives and
/// the admissibility margin.
struct SnapshotRow {
  std::size_t index;
  Vec3 position;
  Vec5 w;
  double rho, p;
  Vec3 v_dn;
  double q_margin;
};

void write_snapshot_csv(const std::string& path,
                        const std::vector<SnapshotRow>& rows);

/// Binary layout: 3 x uint64 dims, 3 x float64 spacings, float64 time, then
/// the 5 components in component-major row-major float64 order.
void write_snapshot_binary(const std::string& path, const CuboidGrid& grid,
                           double time, const Field& field);

struct BinarySnapshot {
  std::array<std::uint64_t, 3> dims;
  Vec3 spacings;
  double time;
  std::vector<double> payload;  // component-major
};

BinarySnapshot read_snapshot_binary(const std::string& path);

}  // namespace grhd
