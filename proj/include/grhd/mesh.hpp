#pragma once

#include <array>
#include <string>
#include <vector>

#include "grhd/errors.hpp"
#include "grhd/vec.hpp"

namespace grhd {

struct MeshCell {
  double volume;
  Vec3 centroid;
};

/// A face shared by cells k and j; the unit normal points from k to j. A
/// boundary face carries j = -1 and is treated with zeroth-order outflow.
struct MeshFace {
  int k;
  int j;
  double area;
  Vec3 normal;
  Vec3 centroid;
};

/// General polyhedral mesh described by cell volumes/centroids and oriented
/// faces. Loaded meshes are validated against the per-cell discrete
/// divergence identity sum |E_kj| xi_kj = 0.
struct UnstructuredMesh {
  std::vector<MeshCell> cells;
  std::vector<MeshFace> faces;
  /// faces_of[k] lists (face id, orientation) pairs, orientation +1 when k
  /// owns the face.
  std::vector<std::vector<std::pair<int, double>>> faces_of;

  void build_adjacency();
  /// Throws ConfigError naming the offending entity.
  void validate(double tol = 1e-12) const;

  /// Axis-aligned uniform hexahedral mesh. Axes with a single cell get no
  /// faces (the 1D/2D reduction); other axes are periodic when the flag is
  /// set and outflow otherwise.
  static UnstructuredMesh hex_grid(const std::array<int, 3>& n,
                                   const Vec3& lower, const Vec3& upper,
                                   const std::array<bool, 3>& periodic);

  /// Irregular polyhedral test mesh: each hexahedron of an nx x ny x nz box
  /// is split into two triangular prisms along the xy diagonal. Fully
  /// periodic; nz >= 2.
  static UnstructuredMesh prism_grid(int nx, int ny, int nz, const Vec3& lower,
                                     const Vec3& upper);

  /// JSON face-list format:
  ///   {"cells":[{"volume":..,"centroid":[..]}],
  ///    "faces":[{"k":..,"j":..,"area":..,"normal":[..],"centroid":[..]}]}
  /// The face centroid is optional and defaults to the midpoint of the
  /// adjacent cell centroids.
  static UnstructuredMesh load_json(const std::string& path);
  static UnstructuredMesh parse_json(const std::string& text);
  std::string to_json() const;
};

}  // namespace grhd
