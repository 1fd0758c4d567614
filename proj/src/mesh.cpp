#include "grhd/mesh.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace grhd {

void UnstructuredMesh::build_adjacency() {
  faces_of.assign(cells.size(), {});
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    faces_of[faces[f].k].push_back({f, +1.0});
    if (faces[f].j >= 0) faces_of[faces[f].j].push_back({f, -1.0});
  }
}

void UnstructuredMesh::validate(double tol) const {
  if (cells.empty()) throw ConfigError("mesh: no cells");
  if (faces_of.size() != cells.size())
    throw ConfigError("mesh: adjacency not built");
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (!(cells[c].volume > 0.0))
      throw ConfigError("mesh: cell " + std::to_string(c) +
                        " has non-positive volume");
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const MeshFace& face = faces[f];
    if (!(face.area > 0.0))
      throw ConfigError("mesh: face " + std::to_string(f) +
                        " has non-positive area");
    if (face.k < 0 || face.k >= static_cast<int>(cells.size()) ||
        face.j >= static_cast<int>(cells.size()))
      throw ConfigError("mesh: face " + std::to_string(f) +
                        " references an unknown cell");
    const double n2 = dot(face.normal, face.normal);
    if (std::abs(n2 - 1.0) > 1e-10)
      throw ConfigError("mesh: face " + std::to_string(f) +
                        " normal is not unit length");
  }
  double area_scale = 0.0;
  for (const MeshFace& f : faces) area_scale = std::max(area_scale, f.area);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Vec3 s = {0, 0, 0};
    for (const auto& [f, orient] : faces_of[c])
      s = s + (orient * faces[f].area) * faces[f].normal;
    const double err = std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[2])});
    if (err > tol * std::max(1.0, area_scale))
      throw ConfigError("mesh: cell " + std::to_string(c) +
                        " violates the divergence identity (|sum A xi| = " +
                        std::to_string(err) + ")");
  }
}

UnstructuredMesh UnstructuredMesh::hex_grid(const std::array<int, 3>& n,
                                            const Vec3& lower, const Vec3& upper,
                                            const std::array<bool, 3>& periodic) {
  for (int a = 0; a < 3; ++a)
    if (n[a] < 1) throw ConfigError("hex_grid: cell counts must be >= 1");
  Vec3 dx;
  for (int a = 0; a < 3; ++a) dx[a] = (upper[a] - lower[a]) / n[a];
  const double vol = dx[0] * dx[1] * dx[2];

  UnstructuredMesh m;
  const auto cid = [&](int i, int j, int k) {
    return (k * n[1] + j) * n[0] + i;
  };
  m.cells.resize(static_cast<std::size_t>(n[0]) * n[1] * n[2]);
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        MeshCell& c = m.cells[cid(i, j, k)];
        c.volume = vol;
        c.centroid = {lower[0] + (i + 0.5) * dx[0], lower[1] + (j + 0.5) * dx[1],
                      lower[2] + (k + 0.5) * dx[2]};
      }

  const double areas[3] = {dx[1] * dx[2], dx[0] * dx[2], dx[0] * dx[1]};
  for (int axis = 0; axis < 3; ++axis) {
    if (n[axis] == 1) continue;  // 1D/2D reduction: no transverse faces
    Vec3 normal = {0, 0, 0};
    normal[axis] = 1.0;
    std::array<int, 3> idx;
    for (idx[2] = 0; idx[2] < n[2]; ++idx[2])
      for (idx[1] = 0; idx[1] < n[1]; ++idx[1])
        for (idx[0] = 0; idx[0] < n[0]; ++idx[0]) {
          // owner = this cell, neighbor = next cell along the axis
          std::array<int, 3> nb = idx;
          nb[axis] += 1;
          const bool wrap = nb[axis] == n[axis];
          if (wrap && !periodic[axis]) continue;
          if (wrap) nb[axis] = 0;
          MeshFace f;
          f.k = cid(idx[0], idx[1], idx[2]);
          f.j = cid(nb[0], nb[1], nb[2]);
          f.area = areas[axis];
          f.normal = normal;
          f.centroid = m.cells[f.k].centroid;
          f.centroid[axis] += 0.5 * dx[axis];
          m.faces.push_back(f);
        }
    if (!periodic[axis]) {
      // boundary faces at both ends (outflow)
      std::array<int, 3> idx2;
      for (idx2[2] = 0; idx2[2] < n[2]; ++idx2[2])
        for (idx2[1] = 0; idx2[1] < n[1]; ++idx2[1])
          for (idx2[0] = 0; idx2[0] < n[0]; ++idx2[0]) {
            if (idx2[axis] == 0) {
              MeshFace f;
              f.k = cid(idx2[0], idx2[1], idx2[2]);
              f.j = -1;
              f.area = areas[axis];
              f.normal = {0, 0, 0};
              f.normal[axis] = -1.0;
              f.centroid = m.cells[f.k].centroid;
              f.centroid[axis] -= 0.5 * dx[axis];
              m.faces.push_back(f);
            }
            if (idx2[axis] == n[axis] - 1) {
              MeshFace f;
              f.k = cid(idx2[0], idx2[1], idx2[2]);
              f.j = -1;
              f.area = areas[axis];
              f.normal = {0, 0, 0};
              f.normal[axis] = 1.0;
              f.centroid = m.cells[f.k].centroid;
              f.centroid[axis] += 0.5 * dx[axis];
              m.faces.push_back(f);
            }
          }
    }
  }
  m.build_adjacency();
  m.validate();
  return m;
}

UnstructuredMesh UnstructuredMesh::prism_grid(int nx, int ny, int nz,
                                              const Vec3& lower,
                                              const Vec3& upper) {
  if (nx < 2 || ny < 2 || nz < 2)
    throw ConfigError("prism_grid: need at least 2 cells per axis");
  const Vec3 dx = {(upper[0] - lower[0]) / nx, (upper[1] - lower[1]) / ny,
                   (upper[2] - lower[2]) / nz};
  UnstructuredMesh m;
  // Two prisms per (i,j,k) box, split along the diagonal from (x0,y0) to
  // (x1,y1). Prism 0 is the lower-right triangle, prism 1 the upper-left.
  const auto pid = [&](int i, int j, int k, int p) {
    return 2 * ((k * ny + j) * nx + i) + p;
  };
  m.cells.resize(static_cast<std::size_t>(2) * nx * ny * nz);
  const double tri_area = 0.5 * dx[0] * dx[1];
  const double vol = tri_area * dx[2];
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double x0 = lower[0] + i * dx[0], y0 = lower[1] + j * dx[1];
        const double zc = lower[2] + (k + 0.5) * dx[2];
        MeshCell& c0 = m.cells[pid(i, j, k, 0)];
        c0.volume = vol;
        c0.centroid = {x0 + 2.0 / 3.0 * dx[0], y0 + 1.0 / 3.0 * dx[1], zc};
        MeshCell& c1 = m.cells[pid(i, j, k, 1)];
        c1.volume = vol;
        c1.centroid = {x0 + 1.0 / 3.0 * dx[0], y0 + 2.0 / 3.0 * dx[1], zc};
      }

  const double diag_len = std::hypot(dx[0], dx[1]);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double x0 = lower[0] + i * dx[0], y0 = lower[1] + j * dx[1];
        const double zc = lower[2] + (k + 0.5) * dx[2];
        // diagonal face between prism 0 and prism 1 of the same box; normal
        // points from 0 (lower-right) toward 1 (upper-left).
        {
          MeshFace f;
          f.k = pid(i, j, k, 0);
          f.j = pid(i, j, k, 1);
          f.area = diag_len * dx[2];
          f.normal = {-dx[1] / diag_len, dx[0] / diag_len, 0.0};
          f.centroid = {x0 + 0.5 * dx[0], y0 + 0.5 * dx[1], zc};
          m.faces.push_back(f);
        }
        // x face: prism 0 of (i,j) to prism 1 of (i+1,j); rectangle at x1.
        {
          MeshFace f;
          f.k = pid(i, j, k, 0);
          f.j = pid((i + 1) % nx, j, k, 1);
          f.area = dx[1] * dx[2];
          f.normal = {1, 0, 0};
          f.centroid = {x0 + dx[0], y0 + 0.5 * dx[1], zc};
          m.faces.push_back(f);
        }
        // y face: prism 1 of (i,j) to prism 0 of (i,j+1); rectangle at y1.
        {
          MeshFace f;
          f.k = pid(i, j, k, 1);
          f.j = pid(i, (j + 1) % ny, k, 0);
          f.area = dx[0] * dx[2];
          f.normal = {0, 1, 0};
          f.centroid = {x0 + 0.5 * dx[0], y0 + dx[1], zc};
          m.faces.push_back(f);
        }
        // z faces: each prism to its own shape in the layer above.
        for (int p = 0; p < 2; ++p) {
          MeshFace f;
          f.k = pid(i, j, k, p);
          f.j = pid(i, j, (k + 1) % nz, p);
          f.area = tri_area;
          f.normal = {0, 0, 1};
          f.centroid = m.cells[f.k].centroid;
          f.centroid[2] = lower[2] + (k + 1.0) * dx[2];
          m.faces.push_back(f);
        }
      }
  m.build_adjacency();
  m.validate();
  return m;
}

UnstructuredMesh UnstructuredMesh::parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mesh: JSON parse failure: ") + e.what());
  }
  UnstructuredMesh m;
  try {
    for (const auto& jc : j.at("cells")) {
      MeshCell c;
      c.volume = jc.at("volume").get<double>();
      const auto& cc = jc.at("centroid");
      c.centroid = {cc.at(0).get<double>(), cc.at(1).get<double>(),
                    cc.at(2).get<double>()};
      m.cells.push_back(c);
    }
    for (const auto& jf : j.at("faces")) {
      MeshFace f;
      f.k = jf.at("k").get<int>();
      f.j = jf.value("j", -1);
      f.area = jf.at("area").get<double>();
      const auto& nn = jf.at("normal");
      f.normal = {nn.at(0).get<double>(), nn.at(1).get<double>(),
                  nn.at(2).get<double>()};
      if (jf.contains("centroid")) {
        const auto& fc = jf.at("centroid");
        f.centroid = {fc.at(0).get<double>(), fc.at(1).get<double>(),
                      fc.at(2).get<double>()};
      } else {
        if (f.k < 0 || f.k >= static_cast<int>(m.cells.size()))
          throw ConfigError("mesh: face references an unknown cell");
        const Vec3 a = m.cells[f.k].centroid;
        const Vec3 b = f.j >= 0 && f.j < static_cast<int>(m.cells.size())
                           ? m.cells[f.j].centroid
                           : a;
        f.centroid = 0.5 * (a + b);
      }
      m.faces.push_back(f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mesh: bad JSON structure: ") + e.what());
  }
  m.build_adjacency();
  m.validate();
  return m;
}

UnstructuredMesh UnstructuredMesh::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("mesh: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string UnstructuredMesh::to_json() const {
  nlohmann::json j;
  j["cells"] = nlohmann::json::array();
  for (const MeshCell& c : cells)
    j["cells"].push_back({{"volume", c.volume},
                          {"centroid", {c.centroid[0], c.centroid[1], c.centroid[2]}}});
  j["faces"] = nlohmann::json::array();
  for (const MeshFace& f : faces)
    j["faces"].push_back({{"k", f.k},
                          {"j", f.j},
                          {"area", f.area},
                          {"normal", {f.normal[0], f.normal[1], f.normal[2]}},
                          {"centroid", {f.centroid[0], f.centroid[1], f.centroid[2]}}});
  return j.dump(1);
}

}  // namespace grhd
