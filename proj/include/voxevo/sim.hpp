#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "voxevo/decode.hpp"

namespace voxevo {

struct MaterialParams {
  double youngs_modulus = 5e6;   // Pa
  double poisson_ratio = 0.35;   // carried for reporting; lateral coupling comes from diagonals
  double static_friction = 1.0;  // carried but unused (no ground contact)
  double dynamic_friction = 0.5; // carried but unused
  double density = 1000.0;       // kg/m^3
  double voxel_size = 0.01;      // m
};

struct ActuationParams {
  double volumetric_amplitude = 0.5;
  double frequency = 4.0;  // Hz

  // Per-edge amplitude giving the requested volume swing when applied on all
  // three axes: (1 + a)^3 = 1 + volumetric_amplitude.
  double linear_amplitude() const { return std::cbrt(1.0 + volumetric_amplitude) - 1.0; }
};

enum class DisplacementMode { kFinal, kMax };

struct SimConfig {
  double dt = 1e-4;      // s
  double duration = 1.0; // s
  double damping = 2.0;  // 1/s, velocity scaled by (1 - damping*dt) each step
  Eigen::Vector3d gravity{0.0, 0.0, 0.0};
  int record_every = 100;
  DisplacementMode displacement_mode = DisplacementMode::kFinal;
};

// One deduplicated spring. Corner pairs contributed by several voxels are
// merged with their stiffnesses summed. owner_begin/owner_count index
// Lattice::spring_owners, listing the contractile voxels that drive the
// spring's rest length.
struct Spring {
  int a = 0;
  int b = 0;
  double stiffness = 0.0;
  double rest0 = 0.0;
  int owner_begin = 0;
  int owner_count = 0;
};

// Corner-node lattice of an occupied voxel grid. Each voxel contributes all
// 28 corner pairs (12 edges, 12 face diagonals, 4 body diagonals); corners are
// shared between neighbouring voxels. Nodes on the x=0 plane are anchored.
struct Lattice {
  double voxel_size = 0.0;
  std::vector<Eigen::Vector3d> rest_positions;
  std::vector<double> mass;            // per node, sum of adjacent voxel shares
  std::vector<std::uint8_t> anchored;  // per node
  std::vector<Spring> springs;
  std::vector<int> spring_owners;        // indices into contractile_cells
  std::vector<Coord> contractile_cells;  // lexicographic
  std::vector<std::array<int, 8>> free_end_corners;  // corner nodes per free-end cell

  int node_count() const { return static_cast<int>(rest_positions.size()); }
};

// Resolved actuation: rest(t) = rest0 * (1 + amplitude * mean(sin(omega*t +
// phase))) over the spring's contractile owners. Inactive (or amplitude 0)
// leaves every rest length at rest0.
struct ActuationDrive {
  bool active = false;
  double amplitude = 0.0;
  double omega = 0.0;
  std::vector<double> phases;  // aligned with Lattice::contractile_cells
};

struct LatticeState {
  std::vector<Eigen::Vector3d> positions;
  std::vector<Eigen::Vector3d> velocities;
  long step_count = 0;

  std::vector<Eigen::Vector3d> forces;  // scratch
  std::vector<double> sins;             // scratch, per contractile cell
};

struct TraceSample {
  double t = 0.0;
  Eigen::Vector3d centroid{0.0, 0.0, 0.0};
};
using Trace = std::vector<TraceSample>;

// Throws EmptyMorphology when the grid has no occupied cells.
Lattice build_lattice(const VoxelGrid& grid, const MaterialParams& mat);

// Throws DomainMismatch unless the controller's domain is exactly the grid's
// contractile set.
ActuationDrive make_drive(const Lattice& lattice, const ControllerMap& ctrl,
                          const ActuationParams& act);

LatticeState initial_state(const Lattice& lattice);

// One semi-implicit Euler step: v += dt * (F/m + g); v *= (1 - damping*dt);
// x += dt * v. Anchored nodes never move. Throws NumericalBlowup when any
// coordinate leaves +/- 1000 voxel lengths.
void step(LatticeState& state, const Lattice& lattice, const ActuationDrive& drive,
          const SimConfig& cfg);

// Runs round(duration/dt) steps, sampling the free-end centroid at step 0 and
// every record_every-th step: floor(duration / (dt * record_every)) + 1
// samples in total.
Trace simulate(const Lattice& lattice, const ActuationDrive& drive, const SimConfig& cfg);

// Convenience pipeline: build lattice, resolve the controller, simulate.
Trace simulate(const VoxelGrid& grid, const ControllerMap& ctrl, const MaterialParams& mat,
               const ActuationParams& act, const SimConfig& cfg);

// Start-to-end displacement of the free-end centroid in the y/z plane.
double displacement_yz(const Trace& trace);
// Largest displacement over the whole trace instead of the final sample.
double displacement_yz_max(const Trace& trace);
double displacement(const Trace& trace, DisplacementMode mode);

double kinetic_energy(const LatticeState& state, const Lattice& lattice);
// Elastic energy against the passive rest lengths (actuation off).
double elastic_energy(const LatticeState& state, const Lattice& lattice);

}  // namespace voxevo
