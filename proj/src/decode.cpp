#include "voxevo/decode.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "voxevo/errors.hpp"

namespace voxevo {

double material_code(Cell cell) {
  switch (cell) {
    case Cell::kPassive: return -1.0;
    case Cell::kContractile: return 1.0;
    case Cell::kEmpty: break;
  }
  throw std::invalid_argument("material_code: empty cell has no material");
}

std::vector<Coord> VoxelGrid::present_cells() const {
  std::vector<Coord> out;
  for (int x = 0; x < dims.nx; ++x) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int z = 0; z < dims.nz; ++z) {
        if (at(x, y, z) != Cell::kEmpty) out.push_back({x, y, z});
      }
    }
  }
  return out;
}

std::vector<Coord> VoxelGrid::contractile_cells() const {
  std::vector<Coord> out;
  for (int x = 0; x < dims.nx; ++x) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int z = 0; z < dims.nz; ++z) {
        if (at(x, y, z) == Cell::kContractile) out.push_back({x, y, z});
      }
    }
  }
  return out;
}

int VoxelGrid::present_count() const {
  return static_cast<int>(
      std::count_if(cells.begin(), cells.end(), [](Cell c) { return c != Cell::kEmpty; }));
}

std::vector<Coord> VoxelGrid::anchored_face() const {
  std::vector<Coord> out;
  for (int y = 0; y < dims.ny; ++y) {
    for (int z = 0; z < dims.nz; ++z) {
      if (at(0, y, z) != Cell::kEmpty) out.push_back({0, y, z});
    }
  }
  return out;
}

std::vector<Coord> VoxelGrid::free_end_cells() const {
  for (int x = dims.nx - 1; x >= 0; --x) {
    std::vector<Coord> out;
    for (int y = 0; y < dims.ny; ++y) {
      for (int z = 0; z < dims.nz; ++z) {
        if (at(x, y, z) != Cell::kEmpty) out.push_back({x, y, z});
      }
    }
    if (!out.empty()) return out;
  }
  throw EmptyMorphology("free_end_cells: no occupied cells");
}

std::array<double, 3> normalize_coords(Coord c, Dims dims) {
  auto axis = [](int i, int n) {
    return n <= 1 ? 0.0 : 2.0 * static_cast<double>(i) / static_cast<double>(n - 1) - 1.0;
  };
  return {axis(c.x, dims.nx), axis(c.y, dims.ny), axis(c.z, dims.nz)};
}

VoxelGrid decode_morphology(const Genome& g, Dims dims) {
  if (g.num_inputs != 3 || g.num_outputs != 2) {
    throw ArityMismatch("decode_morphology: morphology networks are 3-in/2-out, got " +
                        std::to_string(g.num_inputs) + "-in/" + std::to_string(g.num_outputs) +
                        "-out");
  }
  VoxelGrid grid(dims);
  for (int x = 0; x < dims.nx; ++x) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int z = 0; z < dims.nz; ++z) {
        auto [nx, ny, nz] = normalize_coords({x, y, z}, dims);
        std::vector<double> out = feed_forward(g, {nx, ny, nz});
        if (std::fabs(out[0]) >= 0.5) {
          grid.set(x, y, z, std::fabs(out[1]) < 0.5 ? Cell::kPassive : Cell::kContractile);
        }
      }
    }
  }
  return grid;
}

VoxelGrid apply_enclosure(const VoxelGrid& grid) {
  VoxelGrid out = grid;
  Dims d = grid.dims;
  for (int x = 0; x < d.nx; ++x) {
    for (int y = 0; y < d.ny; ++y) {
      for (int z = 0; z < d.nz; ++z) {
        bool boundary = x == 0 || x == d.nx - 1 || y == 0 || y == d.ny - 1 || z == 0 || z == d.nz - 1;
        if (boundary) out.set(x, y, z, Cell::kPassive);
      }
    }
  }
  return out;
}

VoxelGrid connectivity_filter(const VoxelGrid& grid) {
  Dims d = grid.dims;
  std::vector<bool> reached(static_cast<std::size_t>(d.volume()), false);
  std::deque<Coord> frontier;
  for (int y = 0; y < d.ny; ++y) {
    for (int z = 0; z < d.nz; ++z) {
      if (grid.at(0, y, z) != Cell::kEmpty) {
        reached[grid.index(0, y, z)] = true;
        frontier.push_back({0, y, z});
      }
    }
  }
  constexpr int kSteps[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  while (!frontier.empty()) {
    Coord c = frontier.front();
    frontier.pop_front();
    for (const auto& s : kSteps) {
      Coord n{c.x + s[0], c.y + s[1], c.z + s[2]};
      if (n.x < 0 || n.x >= d.nx || n.y < 0 || n.y >= d.ny || n.z < 0 || n.z >= d.nz) continue;
      std::size_t idx = grid.index(n.x, n.y, n.z);
      if (!reached[idx] && grid.cells[idx] != Cell::kEmpty) {
        reached[idx] = true;
        frontier.push_back(n);
      }
    }
  }
  VoxelGrid out(d);
  int kept = 0;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    if (reached[i]) {
      out.cells[i] = grid.cells[i];
      ++kept;
    }
  }
  if (kept == 0) {
    throw EmptyMorphology("connectivity_filter: no cells connected to the anchor face");
  }
  return out;
}

ControllerMap decode_controller(const Genome& g, const VoxelGrid& grid) {
  if (g.num_inputs != 4 || g.num_outputs != 1) {
    throw ArityMismatch("decode_controller: controller networks are 4-in/1-out, got " +
                        std::to_string(g.num_inputs) + "-in/" + std::to_string(g.num_outputs) +
                        "-out");
  }
  ControllerMap ctrl;
  for (Coord c : grid.contractile_cells()) {
    auto [nx, ny, nz] = normalize_coords(c, grid.dims);
    std::vector<double> out = feed_forward(g, {nx, ny, nz, material_code(grid.at(c))});
    ctrl.phases[c] = std::min(std::max(out[0], -kPhaseClamp), kPhaseClamp);
  }
  return ctrl;
}

}  // namespace voxevo
