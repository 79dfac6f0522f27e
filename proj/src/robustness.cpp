#include "voxevo/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voxevo/errors.hpp"
#include "voxevo/parallel.hpp"
#include "voxevo/rng.hpp"

namespace voxevo {

std::vector<PhaseScenario> generate_scenarios(const VoxelGrid& grid, int count,
                                              std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("generate_scenarios: count must be >= 0");
  std::vector<Coord> cells = grid.contractile_cells();
  Rng rng(seed);
  std::vector<PhaseScenario> scenarios;
  scenarios.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    PhaseScenario scenario;
    scenario.id = s;
    for (Coord c : cells) {
      scenario.phases.phases[c] = rng.uniform(-kPhaseClamp, kPhaseClamp);
    }
    scenarios.push_back(std::move(scenario));
  }
  return scenarios;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
  if (sorted.size() == 1) return sorted.front();
  double h = p * static_cast<double>(sorted.size() - 1);
  double lo = std::floor(h);
  std::size_t i = static_cast<std::size_t>(lo);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + (h - lo) * (sorted[i + 1] - sorted[i]);
}

RobustnessReport evaluate_robustness(const VoxelGrid& grid, const MaterialParams& mat,
                                     const ActuationParams& act, const SimConfig& cfg, int count,
                                     std::uint64_t seed, int jobs) {
  if (count < 1) throw std::invalid_argument("evaluate_robustness: count must be >= 1");
  std::vector<PhaseScenario> scenarios = generate_scenarios(grid, count, seed);
  Lattice lattice = build_lattice(grid, mat);

  RobustnessReport report;
  report.scenario_count = count;
  report.deltas.assign(static_cast<std::size_t>(count), 0.0);
  std::vector<std::uint8_t> blew(static_cast<std::size_t>(count), 0);

  parallel_for(jobs, static_cast<std::size_t>(count), [&](std::size_t s) {
    try {
      ActuationDrive drive = make_drive(lattice, scenarios[s].phases, act);
      Trace trace = simulate(lattice, drive, cfg);
      report.deltas[s] = displacement(trace, cfg.displacement_mode);
    } catch (const NumericalBlowup&) {
      report.deltas[s] = 0.0;
      blew[s] = 1;
    }
  });

  for (std::uint8_t b : blew) report.blowup_count += b;

  std::vector<double> sorted = report.deltas;
  std::sort(sorted.begin(), sorted.end());
  report.min = sorted.front();
  report.max = sorted.back();
  report.q1 = quantile_sorted(sorted, 0.25);
  report.median = quantile_sorted(sorted, 0.5);
  report.q3 = quantile_sorted(sorted, 0.75);
  return report;
}

}  // namespace voxevo
