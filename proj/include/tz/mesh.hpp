#ifndef TZ_MESH_HPP
#define TZ_MESH_HPP

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace tz {

enum class MeshFormat { OBJ, CSV };

/// Grid configuration for meshing the classical bowl z = 1/(x^2 + y^2).
struct MeshConfig {
  double umin = -5.0, umax = 5.0;
  double vmin = -5.0, vmax = 5.0;
  int resolution = 120;           // grid points per axis
  double z_clip = 10.0;           // drop vertices higher than this
  double exclusion_radius = 0.15; // drop vertices inside this disk
};

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> triangles; // 0-based vertex indices
};

/// Samples z = 1/(x^2 + y^2) on the configured grid, keeping vertices with
/// r > exclusion_radius and z <= z_clip, and triangulating grid cells whose
/// corners all survive. Every emitted vertex satisfies z (x^2 + y^2) = 1 to
/// within rounding. Fully deterministic.
///
/// Throws EmptyMeshError when every grid point is excluded and
/// std::invalid_argument for a malformed config.
Mesh generate_mesh(const MeshConfig &config);

/// Serialized mesh bytes: OBJ ("v x y z" then 1-based "f i j k") or CSV
/// ("x,y,z" header then one vertex per row), '\n' line endings, 17
/// significant digits.
std::string mesh_to_string(const Mesh &mesh, MeshFormat format);

/// Writes the serialized mesh; the mesh must be non-empty.
void write_mesh(const Mesh &mesh, MeshFormat format,
                const std::filesystem::path &destination);

} // namespace tz

#endif // TZ_MESH_HPP
