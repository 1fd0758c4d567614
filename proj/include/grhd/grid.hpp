#pragma once

#include <array>
#include <vector>

#include "grhd/errors.hpp"
#include "grhd/spacetime.hpp"
#include "grhd/vec.hpp"

namespace grhd {

enum class Boundary { Periodic, Outflow };

/// Uniform cuboid mesh. Cell centers sit at lower + (i + 1/2) dx; the
/// finite-difference scheme places its grid points at the same locations.
/// 1D/2D problems are 3D grids with one-cell thickness and periodic
/// transverse axes.
struct CuboidGrid {
  std::array<int, 3> n = {1, 1, 1};
  Vec3 lower = {0, 0, 0};
  Vec3 upper = {1, 1, 1};
  std::array<Boundary, 3> bc = {Boundary::Periodic, Boundary::Periodic,
                                Boundary::Periodic};

  Vec3 dx() const {
    return {(upper[0] - lower[0]) / n[0], (upper[1] - lower[1]) / n[1],
            (upper[2] - lower[2]) / n[2]};
  }

  Vec3 center(int i, int j, int k) const {
    const Vec3 d = dx();
    return {lower[0] + (i + 0.5) * d[0], lower[1] + (j + 0.5) * d[1],
            lower[2] + (k + 0.5) * d[2]};
  }

  std::size_t cell_count() const {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2];
  }

  void validate() const {
    for (int a = 0; a < 3; ++a) {
      if (n[a] < 1) throw ConfigError("grid: cell counts must be >= 1");
      if (!(upper[a] > lower[a]))
        throw ConfigError("grid: upper must exceed lower");
    }
  }
};

/// Ghosted per-point storage of arbitrary payload, indexed like Field.
template <class T>
class GridArray {
 public:
  GridArray() = default;
  GridArray(const CuboidGrid& grid, int ghost)
      : n_(grid.n),
        ghost_(ghost),
        s0_(grid.n[0] + 2 * ghost),
        s1_(grid.n[1] + 2 * ghost),
        s2_(grid.n[2] + 2 * ghost),
        data_(static_cast<std::size_t>(s0_) * s1_ * s2_) {}

  T& at(int i, int j, int k) { return data_[index(i, j, k)]; }
  const T& at(int i, int j, int k) const { return data_[index(i, j, k)]; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k + ghost_) * s1_ +
            static_cast<std::size_t>(j + ghost_)) *
               s0_ +
           static_cast<std::size_t>(i + ghost_);
  }
  std::size_t size() const { return data_.size(); }

 private:
  std::array<int, 3> n_ = {0, 0, 0};
  int ghost_ = 0;
  int s0_ = 0, s1_ = 0, s2_ = 0;
  std::vector<T> data_;
};

/// 5-component field on a cuboid grid with ghost layers. Indexing accepts
/// i in [-ghost, n+ghost).
class Field {
 public:
  Field() = default;
  Field(const CuboidGrid& grid, int ghost)
      : n_(grid.n),
        ghost_(ghost),
        s0_(grid.n[0] + 2 * ghost),
        s1_(grid.n[1] + 2 * ghost),
        s2_(grid.n[2] + 2 * ghost),
        data_(static_cast<std::size_t>(s0_) * s1_ * s2_, zero5()) {}

  Vec5& at(int i, int j, int k) { return data_[index(i, j, k)]; }
  const Vec5& at(int i, int j, int k) const { return data_[index(i, j, k)]; }

  int ghost() const { return ghost_; }
  const std::array<int, 3>& n() const { return n_; }
  std::size_t interior_count() const {
    return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2];
  }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k + ghost_) * s1_ +
            static_cast<std::size_t>(j + ghost_)) *
               s0_ +
           static_cast<std::size_t>(i + ghost_);
  }

  /// Fills ghost layers: periodic wrap or zeroth-order (outflow) copy per
  /// axis, applied axis by axis so edge/corner ghosts are consistent.
  void fill_ghosts(const std::array<Boundary, 3>& bc);

 private:
  std::array<int, 3> n_ = {0, 0, 0};
  int ghost_ = 0;
  int s0_ = 0, s1_ = 0, s2_ = 0;
  std::vector<Vec5> data_;
};

/// Metric samples for a grid: one shared sample when the provider is flat,
/// otherwise one sample per requested location. Ghost locations wrap on
/// periodic axes and clamp to the boundary on outflow axes.
class GridMetricCache {
 public:
  GridMetricCache() = default;
  GridMetricCache(const CuboidGrid& grid, const MetricProvider& metric,
                  int ghost, double t);

  const MetricSample& cell(int i, int j, int k) const {
    return flat_ ? samples_[0] : samples_[field_index(i, j, k)];
  }
  bool flat() const { return flat_; }

  /// A sample at an arbitrary point (face Gauss points, interior nodes);
  /// shares the flat fast path.
  MetricSample sample_at(const Vec3& x) const;

 private:
  std::size_t field_index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k + ghost_) * s1_ +
            static_cast<std::size_t>(j + ghost_)) *
               s0_ +
           static_cast<std::size_t>(i + ghost_);
  }

  const MetricProvider* metric_ = nullptr;
  double t_ = 0;
  bool flat_ = true;
  int ghost_ = 0;
  int s0_ = 0, s1_ = 0, s2_ = 0;
  std::vector<MetricSample> samples_;
};

/// Ghost coordinate mapped into the domain: wraps on periodic axes, clamps
/// on outflow axes.
Vec3 ghost_position(const CuboidGrid& grid, int i, int j, int k);

}  // namespace grhd
