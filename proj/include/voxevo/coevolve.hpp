#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "voxevo/aggregate.hpp"
#include "voxevo/decode.hpp"
#include "voxevo/evolution.hpp"
#include "voxevo/sim.hpp"

namespace voxevo {

enum class Role { kSam, kController };

// Morphology networks map (x, y, z) to (presence, material); controller
// networks map (x, y, z, material) to a phase.
inline constexpr int kSamInputs = 3;
inline constexpr int kSamOutputs = 2;
inline constexpr int kControllerInputs = 4;
inline constexpr int kControllerOutputs = 1;

struct CoevoConfig {
  int pop_size = 25;
  int generations = 200;
  int n_collaborators = 3;
  Aggregation aggregation = Aggregation::kWm;
  Dims canvas{20, 8, 8};
  bool enclosure = true;
  std::uint64_t seed = 0;
  int jobs = 1;
  EvolutionConfig sam_evo;
  EvolutionConfig ctrl_evo;
  MaterialParams material;
  ActuationParams actuation;
  SimConfig sim;
};

// Throws ConfigError on out-of-range values (team size larger than the
// population, weighted-mean team sizes without a weight row, ...).
void validate_config(const CoevoConfig& cfg);

struct FitnessRecord {
  int genome_id = 0;
  std::vector<double> deltas;  // one per collaborator, collaborator order
  double aptitude = 0.0;
};

struct GenLogRow {
  int generation = 0;
  std::string evolving;  // "sam" or "controller"
  double best_aptitude = 0.0;
  double mean_aptitude = 0.0;
  int species_count_sam = 0;
  int species_count_ctrl = 0;
};

struct Champion {
  bool valid = false;
  Genome sam;
  Genome ctrl;
  double aptitude = 0.0;
  int generation = -1;
};

// Full engine state; checkpoints serialize exactly this.
struct RunState {
  CoevoConfig cfg;
  Population sams;
  Population ctrls;
  // Top-n snapshots taken right after each population's evaluation; the other
  // population collaborates with these while this one is mid-reproduction.
  std::vector<Genome> top_sams;
  std::vector<Genome> top_ctrls;
  Champion champion;
  std::vector<GenLogRow> log;
  std::vector<double> champion_history;  // champion aptitude after each generation
  Rng rng;
  int generation = 0;  // next generation to run
  std::uint64_t sim_count = 0;
};

// The n fittest genomes, ties broken by lower genome id. Every genome needs a
// fitness from its last evaluation.
std::vector<Genome> select_collaborators(const std::vector<Genome>& genomes, int n);

// Scores every evolving genome against every collaborator: decode the
// morphology (enclosure on by request, connectivity filter always), decode
// the controller against it, simulate, take the y/z displacement. Degenerate
// pairings (empty morphology, no contractile voxels, numerical blowup) score
// zero. Writes each genome's aptitude back into its fitness and counts one
// simulation per pairing into *sim_count.
std::vector<FitnessRecord> evaluate_population(std::vector<Genome>& evolving,
                                               const std::vector<Genome>& collaborators, Role role,
                                               const CoevoConfig& cfg, std::uint64_t* sim_count);

RunState init_run(const CoevoConfig& cfg);

// One generation: evaluate the evolving population (even generations the
// morphologies, odd the controllers; generation 0 bootstraps against n random
// controllers), refresh that population's top-n snapshot, update the champion
// (tracked over morphology aptitudes), log, speciate, reproduce.
void run_generation(RunState& state);

// Runs generations until cfg.generations, invoking on_generation (if set)
// after each one; the callback drives checkpointing.
void coevolve(RunState& state, const std::function<void(const RunState&)>& on_generation = {});

}  // namespace voxevo
