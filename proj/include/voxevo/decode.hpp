#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "voxevo/genome.hpp"

namespace voxevo {

struct Dims {
  int nx = 20;
  int ny = 8;
  int nz = 8;
  int volume() const { return nx * ny * nz; }
  bool operator==(const Dims&) const = default;
};

// Voxel coordinate; ordering is lexicographic on (x, y, z), which is the
// canonical iteration order everywhere voxels are enumerated.
struct Coord {
  int x = 0;
  int y = 0;
  int z = 0;
  auto operator<=>(const Coord&) const = default;
};

enum class Cell : std::uint8_t { kEmpty, kPassive, kContractile };

// Material code fed to controller networks: passive -1, contractile +1.
double material_code(Cell cell);

struct VoxelGrid {
  Dims dims;
  std::vector<Cell> cells;  // x-major: index (x * ny + y) * nz + z

  VoxelGrid() = default;
  explicit VoxelGrid(Dims d) : dims(d), cells(static_cast<std::size_t>(d.volume()), Cell::kEmpty) {}

  std::size_t index(int x, int y, int z) const {
    return (static_cast<std::size_t>(x) * dims.ny + y) * dims.nz + z;
  }
  Cell at(int x, int y, int z) const { return cells[index(x, y, z)]; }
  Cell at(Coord c) const { return at(c.x, c.y, c.z); }
  void set(int x, int y, int z, Cell cell) { cells[index(x, y, z)] = cell; }
  void set(Coord c, Cell cell) { set(c.x, c.y, c.z, cell); }
  bool present(Coord c) const { return at(c) != Cell::kEmpty; }

  std::vector<Coord> present_cells() const;
  std::vector<Coord> contractile_cells() const;  // lexicographic order
  int present_count() const;

  // The x=0 voxel layer that the simulator pins in place.
  std::vector<Coord> anchored_face() const;
  // Occupied layer with the largest x. Throws EmptyMorphology if the grid has
  // no occupied cell.
  std::vector<Coord> free_end_cells() const;

  bool operator==(const VoxelGrid&) const = default;
};

// Per-voxel actuation phase offsets, radians in [-2*pi, 2*pi]. The domain is
// exactly the contractile cell set of the grid it was decoded against.
struct ControllerMap {
  std::map<Coord, double> phases;
  bool operator==(const ControllerMap&) const = default;
};

inline constexpr double kPhaseClamp = 2.0 * 3.14159265358979323846;

// Affine map of voxel indices into [-1, 1]^3; an axis with a single cell maps
// to 0.
std::array<double, 3> normalize_coords(Coord c, Dims dims);

// Queries a 3-in/2-out network over every cell. Output nu decides presence
// (|nu| >= 0.5), output m the material (|m| < 0.5 passive, else contractile).
// Throws ArityMismatch for other arities.
VoxelGrid decode_morphology(const Genome& g, Dims dims);

// Forces the entire canvas boundary shell to present passive cells.
// Idempotent.
VoxelGrid apply_enclosure(const VoxelGrid& grid);

// Keeps only cells 6-connected to the anchor face (x = 0). Throws
// EmptyMorphology if nothing remains.
VoxelGrid connectivity_filter(const VoxelGrid& grid);

// Queries a 4-in/1-out network with (x, y, z, material code) per contractile
// cell; raw phases are clamped to [-2*pi, 2*pi]. Throws ArityMismatch for
// other arities. An all-passive grid yields an empty map.
ControllerMap decode_controller(const Genome& g, const VoxelGrid& grid);

}  // namespace voxevo
