#include "grhd/grid.hpp"

#include <algorithm>

namespace grhd {

void Field::fill_ghosts(const std::array<Boundary, 3>& bc) {
  const int g = ghost_;
  // axis 0
  for (int k = 0; k < n_[2]; ++k)
    for (int j = 0; j < n_[1]; ++j)
      for (int q = 1; q <= g; ++q) {
        at(-q, j, k) = bc[0] == Boundary::Periodic
                           ? at((n_[0] - q % n_[0] + n_[0]) % n_[0], j, k)
                           : at(0, j, k);
        at(n_[0] - 1 + q, j, k) = bc[0] == Boundary::Periodic
                                      ? at((q - 1) % n_[0], j, k)
                                      : at(n_[0] - 1, j, k);
      }
  // axis 1 (include filled x-ghosts so corners are consistent)
  for (int k = 0; k < n_[2]; ++k)
    for (int i = -g; i < n_[0] + g; ++i)
      for (int q = 1; q <= g; ++q) {
        at(i, -q, k) = bc[1] == Boundary::Periodic
                           ? at(i, (n_[1] - q % n_[1] + n_[1]) % n_[1], k)
                           : at(i, 0, k);
        at(i, n_[1] - 1 + q, k) = bc[1] == Boundary::Periodic
                                      ? at(i, (q - 1) % n_[1], k)
                                      : at(i, n_[1] - 1, k);
      }
  // axis 2
  for (int j = -g; j < n_[1] + g; ++j)
    for (int i = -g; i < n_[0] + g; ++i)
      for (int q = 1; q <= g; ++q) {
        at(i, j, -q) = bc[2] == Boundary::Periodic
                           ? at(i, j, (n_[2] - q % n_[2] + n_[2]) % n_[2])
                           : at(i, j, 0);
        at(i, j, n_[2] - 1 + q) = bc[2] == Boundary::Periodic
                                      ? at(i, j, (q - 1) % n_[2])
                                      : at(i, j, n_[2] - 1);
      }
}

Vec3 ghost_position(const CuboidGrid& grid, int i, int j, int k) {
  const Vec3 d = grid.dx();
  Vec3 x;
  const std::array<int, 3> idx = {i, j, k};
  for (int a = 0; a < 3; ++a) {
    double c = grid.lower[a] + (idx[a] + 0.5) * d[a];
    if (grid.bc[a] == Boundary::Periodic) {
      const double span = grid.upper[a] - grid.lower[a];
      while (c < grid.lower[a]) c += span;
      while (c >= grid.upper[a]) c -= span;
    } else {
      c = std::clamp(c, grid.lower[a] + 0.5 * d[a],
                     grid.upper[a] - 0.5 * d[a]);
    }
    x[a] = c;
  }
  return x;
}

GridMetricCache::GridMetricCache(const CuboidGrid& grid,
                                 const MetricProvider& metric, int ghost,
                                 double t)
    : metric_(&metric),
      t_(t),
      flat_(metric.flat()),
      ghost_(ghost),
      s0_(grid.n[0] + 2 * ghost),
      s1_(grid.n[1] + 2 * ghost),
      s2_(grid.n[2] + 2 * ghost) {
  if (flat_) {
    samples_ = {metric.sample(t, {0, 0, 0})};
    return;
  }
  samples_.resize(static_cast<std::size_t>(s0_) * s1_ * s2_);
  for (int k = -ghost; k < grid.n[2] + ghost; ++k)
    for (int j = -ghost; j < grid.n[1] + ghost; ++j)
      for (int i = -ghost; i < grid.n[0] + ghost; ++i)
        samples_[field_index(i, j, k)] =
            metric.sample(t, ghost_position(grid, i, j, k));
}

MetricSample GridMetricCache::sample_at(const Vec3& x) const {
  if (flat_) return samples_[0];
  return metric_->sample(t_, x);
}

}  // namespace grhd
