#include "tz/mesh.hpp"

#include "tz/detail/format.hpp"
#include "tz/errors.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace tz {

namespace {

void check_config(const MeshConfig &config) {
  if (!(config.umin < config.umax) || !(config.vmin < config.vmax))
    throw std::invalid_argument("mesh range must satisfy min < max");
  if (config.resolution < 2)
    throw std::invalid_argument("mesh resolution must be at least 2");
  if (!(config.z_clip > 0.0))
    throw std::invalid_argument("mesh z clip must be positive");
  if (config.exclusion_radius < 0.0)
    throw std::invalid_argument("mesh exclusion radius must be nonnegative");
}

void append_g17(std::string &out, double value) {
  out += detail::format_g17(value);
}

} // namespace

Mesh generate_mesh(const MeshConfig &config) {
  check_config(config);
  const int res = config.resolution;
  const double du = (config.umax - config.umin) / (res - 1);
  const double dv = (config.vmax - config.vmin) / (res - 1);

  Mesh mesh;
  std::vector<int> index(static_cast<std::size_t>(res) * res, -1);
  for (int j = 0; j < res; ++j) {
    double y = config.vmin + j * dv;
    for (int i = 0; i < res; ++i) {
      double x = config.umin + i * du;
      double r2 = x * x + y * y;
      if (!(std::sqrt(r2) > config.exclusion_radius))
        continue;
      double z = 1.0 / r2;
      if (z > config.z_clip)
        continue;
      index[static_cast<std::size_t>(j) * res + i] =
          static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back({x, y, z});
    }
  }
  if (mesh.vertices.empty())
    throw EmptyMeshError("every grid point was excluded");

  auto at = [&](int i, int j) {
    return index[static_cast<std::size_t>(j) * res + i];
  };
  for (int j = 0; j + 1 < res; ++j) {
    for (int i = 0; i + 1 < res; ++i) {
      int v00 = at(i, j), v10 = at(i + 1, j);
      int v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
      if (v00 >= 0 && v10 >= 0 && v01 >= 0)
        mesh.triangles.push_back({v00, v10, v01});
      if (v10 >= 0 && v11 >= 0 && v01 >= 0)
        mesh.triangles.push_back({v10, v11, v01});
    }
  }
  return mesh;
}

std::string mesh_to_string(const Mesh &mesh, MeshFormat format) {
  std::string out;
  if (format == MeshFormat::CSV) {
    out += "x,y,z\n";
    for (const auto &v : mesh.vertices) {
      append_g17(out, v[0]);
      out += ',';
      append_g17(out, v[1]);
      out += ',';
      append_g17(out, v[2]);
      out += '\n';
    }
    return out;
  }
  for (const auto &v : mesh.vertices) {
    out += "v ";
    append_g17(out, v[0]);
    out += ' ';
    append_g17(out, v[1]);
    out += ' ';
    append_g17(out, v[2]);
    out += '\n';
  }
  for (const auto &t : mesh.triangles) {
    out += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) +
           ' ' + std::to_string(t[2] + 1) + '\n';
  }
  return out;
}

void write_mesh(const Mesh &mesh, MeshFormat format,
                const std::filesystem::path &destination) {
  if (mesh.vertices.empty())
    throw std::invalid_argument("refusing to write an empty mesh");
  std::ofstream file(destination, std::ios::binary);
  if (!file)
    throw Error("cannot open '" + destination.string() + "' for writing");
  std::string bytes = mesh_to_string(mesh, format);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file)
    throw Error("failed writing '" + destination.string() + "'");
}

} // namespace tz
