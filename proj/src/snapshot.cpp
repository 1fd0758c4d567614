#include "grhd/snapshot.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace grhd {

void write_snapshot_csv(const std::string& path,
                        const std::vector<SnapshotRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("snapshot: cannot open " + path);
  out << "index,x,y,z,W0,W1,W2,W3,W4,rho,v1,v2,v3,p,q\n";
  char line[512];
  for (const SnapshotRow& r : rows) {
    std::snprintf(line, sizeof line,
                  "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.index, r.position[0], r.position[1], r.position[2], r.w[0],
                  r.w[1], r.w[2], r.w[3], r.w[4], r.rho, r.v_dn[0], r.v_dn[1],
                  r.v_dn[2], r.p, r.q_margin);
    out << line;
  }
}

void write_snapshot_binary(const std::string& path, const CuboidGrid& grid,
                           double time, const Field& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("snapshot: cannot open " + path);
  const std::array<std::uint64_t, 3> dims = {
      static_cast<std::uint64_t>(grid.n[0]),
      static_cast<std::uint64_t>(grid.n[1]),
      static_cast<std::uint64_t>(grid.n[2])};
  const Vec3 dx = grid.dx();
  out.write(reinterpret_cast<const char*>(dims.data()), sizeof dims);
  out.write(reinterpret_cast<const char*>(dx.data()), sizeof dx);
  out.write(reinterpret_cast<const char*>(&time), sizeof time);
  std::vector<double> plane(field.interior_count());
  for (int c = 0; c < 5; ++c) {
    std::size_t pos = 0;
    for (int k = 0; k < grid.n[2]; ++k)
      for (int j = 0; j < grid.n[1]; ++j)
        for (int i = 0; i < grid.n[0]; ++i) plane[pos++] = field.at(i, j, k)[c];
    out.write(reinterpret_cast<const char*>(plane.data()),
              static_cast<std::streamsize>(plane.size() * sizeof(double)));
  }
}

BinarySnapshot read_snapshot_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("snapshot: cannot open " + path);
  BinarySnapshot s;
  in.read(reinterpret_cast<char*>(s.dims.data()), sizeof s.dims);
  in.read(reinterpret_cast<char*>(s.spacings.data()), sizeof s.spacings);
  in.read(reinterpret_cast<char*>(&s.time), sizeof s.time);
  const std::size_t count =
      5 * static_cast<std::size_t>(s.dims[0]) * s.dims[1] * s.dims[2];
  s.payload.resize(count);
  in.read(reinterpret_cast<char*>(s.payload.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw ConfigError("snapshot: truncated file " + path);
  return s;
}

}  // namespace grhd
