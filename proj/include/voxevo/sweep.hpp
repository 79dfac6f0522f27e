#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "voxevo/coevolve.hpp"
#include "voxevo/serialize.hpp"

namespace voxevo {

// A grid of co-evolution runs: every aggregation x team size combination,
// `trials` independent repetitions each.
struct SweepSpec {
  std::vector<int> n_values;             // subset of the supported team sizes
  std::vector<Aggregation> aggregations;
  int trials = 1;
  std::uint64_t base_seed = 0;
  CoevoConfig base;
};

Json sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const Json& j);
void validate_sweep_spec(const SweepSpec& spec);

// Deterministic, collision-free seed for one trial. Configurations are ranked
// by aggregation (AM, WM, GM, HM) and team size (2, 3, 5, 7, 10); each
// configuration owns a block of 1000003 consecutive seeds, far wider than any
// realistic trial count.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, Aggregation agg, int n, int trial);

// Directory label for a configuration, e.g. "WM_n3".
std::string config_label(Aggregation agg, int n);

struct RunOptions {
  std::filesystem::path out_dir;
  bool resume = false;
  bool deterministic = false;  // suppress timestamp comments in CSV outputs
};

// Runs one co-evolution to completion inside out_dir, writing config.json
// once, then checkpoint.json and gen_log.csv after every generation, and
// champion_sam.json/champion_ctrl.json at the end. With resume set, an
// existing checkpoint is picked up and continued (its embedded config wins);
// resuming a finished run writes nothing. Throws CorruptCheckpoint when the
// checkpoint cannot be parsed.
RunState run_evolution_dir(const CoevoConfig& cfg, const RunOptions& options);

struct SweepOptions {
  std::filesystem::path out_dir;
  int jobs = 1;
  bool resume = false;
  bool deterministic = false;
};

struct SweepResult {
  std::vector<std::string> failures;  // one line per failed trial
};

// Runs every configuration x trial under out_dir/<label>/trial_<t>/ and
// writes out/summary.csv: per configuration and generation, the mean best
// aptitude over the trials that completed plus a normal-approximation 95%
// confidence half-width. Failed trials are excluded from the statistics and
// listed in out/failures.log.
SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options);

}  // namespace voxevo
