#pragma once

#include <cstdint>
#include <vector>

#include "voxevo/decode.hpp"
#include "voxevo/sim.hpp"

namespace voxevo {

struct PhaseScenario {
  int id = 0;
  ControllerMap phases;
};

// `count` scenarios of uniform random phases in [-2*pi, 2*pi], one per
// contractile voxel, drawn in lexicographic voxel order from a generator
// seeded with `seed`. Fully determined by (seed, count, contractile set).
std::vector<PhaseScenario> generate_scenarios(const VoxelGrid& grid, int count,
                                              std::uint64_t seed);

struct RobustnessReport {
  int scenario_count = 0;
  int blowup_count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::vector<double> deltas;  // indexed by scenario id
};

// Median uses the midpoint rule on even counts; quartiles use linear
// interpolation between order statistics (the same interpolation reproduces
// the median at p = 0.5).
double quantile_sorted(const std::vector<double>& sorted, double p);

// One simulation per scenario; scenarios that blow up numerically score zero
// and are counted in blowup_count.
RobustnessReport evaluate_robustness(const VoxelGrid& grid, const MaterialParams& mat,
                                     const ActuationParams& act, const SimConfig& cfg, int count,
                                     std::uint64_t seed, int jobs = 1);

}  // namespace voxevo
