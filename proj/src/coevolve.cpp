#include "voxevo/coevolve.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "voxevo/errors.hpp"
#include "voxevo/parallel.hpp"

namespace voxevo {

void validate_config(const CoevoConfig& cfg) {
  if (cfg.pop_size < 1) throw ConfigError("config: pop_size must be >= 1");
  if (cfg.generations < 0) throw ConfigError("config: generations must be >= 0");
  if (cfg.n_collaborators < 1 || cfg.n_collaborators > cfg.pop_size) {
    throw ConfigError("config: n_collaborators must be in [1, pop_size]");
  }
  if (cfg.aggregation == Aggregation::kWm && !wm_supports(cfg.n_collaborators)) {
    throw ConfigError("config: weighted mean has no weight row for team size " +
                      std::to_string(cfg.n_collaborators));
  }
  if (cfg.canvas.nx < 1 || cfg.canvas.ny < 1 || cfg.canvas.nz < 1) {
    throw ConfigError("config: canvas dimensions must be >= 1");
  }
  if (cfg.jobs < 1) throw ConfigError("config: jobs must be >= 1");
  if (cfg.sim.dt <= 0.0) throw ConfigError("config: sim.dt must be positive");
  if (cfg.sim.duration < 0.0) throw ConfigError("config: sim.duration must be non-negative");
  if (cfg.sim.record_every < 1) throw ConfigError("config: sim.record_every must be >= 1");
  if (cfg.material.voxel_size <= 0.0) throw ConfigError("config: voxel_size must be positive");
  if (cfg.material.density <= 0.0) throw ConfigError("config: density must be positive");
  if (cfg.material.youngs_modulus <= 0.0) {
    throw ConfigError("config: youngs_modulus must be positive");
  }
}

std::vector<Genome> select_collaborators(const std::vector<Genome>& genomes, int n) {
  std::vector<std::size_t> order(genomes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (const Genome& g : genomes) {
    if (!g.fitness) throw std::logic_error("select_collaborators: genome without fitness");
  }
  std::sort(order.begin(), order.end(), [&genomes](std::size_t lhs, std::size_t rhs) {
    if (*genomes[lhs].fitness != *genomes[rhs].fitness) {
      return *genomes[lhs].fitness > *genomes[rhs].fitness;
    }
    return genomes[lhs].id < genomes[rhs].id;
  });
  std::vector<Genome> out;
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(n), genomes.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(genomes[order[i]]);
  return out;
}

namespace {

struct Body {
  bool ok = false;
  VoxelGrid grid;
  Lattice lattice;
};

// Genome -> simulatable body. Enclosure first (when enabled), then the
// connectivity filter; anything unreachable from the anchor face is gone.
Body decode_body(const Genome& g, const CoevoConfig& cfg) {
  Body body;
  try {
    VoxelGrid grid = decode_morphology(g, cfg.canvas);
    if (cfg.enclosure) grid = apply_enclosure(grid);
    grid = connectivity_filter(grid);
    body.grid = std::move(grid);
    body.lattice = build_lattice(body.grid, cfg.material);
    body.ok = true;
  } catch (const EmptyMorphology&) {
    body.ok = false;
  }
  return body;
}

double score_pairing(const Body& body, const Genome& controller, const CoevoConfig& cfg) {
  if (!body.ok) return 0.0;
  // Nothing contracts, nothing moves: skip the integration.
  if (body.lattice.contractile_cells.empty()) return 0.0;
  try {
    ControllerMap ctrl = decode_controller(controller, body.grid);
    ActuationDrive drive = make_drive(body.lattice, ctrl, cfg.actuation);
    Trace trace = simulate(body.lattice, drive, cfg.sim);
    return displacement(trace, cfg.sim.displacement_mode);
  } catch (const NumericalBlowup&) {
    return 0.0;
  }
}

}  // namespace

std::vector<FitnessRecord> evaluate_population(std::vector<Genome>& evolving,
                                               const std::vector<Genome>& collaborators, Role role,
                                               const CoevoConfig& cfg, std::uint64_t* sim_count) {
  std::size_t pop = evolving.size();
  std::size_t n = collaborators.size();

  // Bodies are shared across pairings: decode each morphology once.
  std::vector<Body> bodies(role == Role::kSam ? pop : n);
  if (role == Role::kSam) {
    for (std::size_t i = 0; i < pop; ++i) bodies[i] = decode_body(evolving[i], cfg);
  } else {
    for (std::size_t j = 0; j < n; ++j) bodies[j] = decode_body(collaborators[j], cfg);
  }

  std::vector<std::vector<double>> deltas(pop, std::vector<double>(n, 0.0));
  parallel_for(cfg.jobs, pop * n, [&](std::size_t pair) {
    std::size_t i = pair / n;
    std::size_t j = pair % n;
    const Body& body = bodies[role == Role::kSam ? i : j];
    const Genome& controller = role == Role::kSam ? collaborators[j] : evolving[i];
    deltas[i][j] = score_pairing(body, controller, cfg);
  });
  if (sim_count) *sim_count += static_cast<std::uint64_t>(pop * n);

  std::vector<FitnessRecord> records;
  records.reserve(pop);
  for (std::size_t i = 0; i < pop; ++i) {
    FitnessRecord rec;
    rec.genome_id = evolving[i].id;
    rec.deltas = std::move(deltas[i]);
    rec.aptitude = aggregate(cfg.aggregation, rec.deltas);
    evolving[i].fitness = rec.aptitude;
    records.push_back(std::move(rec));
  }
  return records;
}

RunState init_run(const CoevoConfig& cfg) {
  validate_config(cfg);
  RunState state;
  state.cfg = cfg;
  state.cfg.sam_evo.population_size = cfg.pop_size;
  state.cfg.ctrl_evo.population_size = cfg.pop_size;
  state.rng = Rng(cfg.seed);

  auto init_population = [&state](Population& pop, int inputs, int outputs, int count) {
    pop.registry = InnovationRegistry(inputs * outputs, inputs + outputs);
    for (int i = 0; i < count; ++i) {
      Genome g = initial_genome(inputs, outputs, state.rng);
      g.id = pop.next_genome_id++;
      pop.genomes.push_back(std::move(g));
    }
  };
  init_population(state.sams, kSamInputs, kSamOutputs, cfg.pop_size);
  init_population(state.ctrls, kControllerInputs, kControllerOutputs, cfg.pop_size);
  speciate(state.sams, state.cfg.sam_evo);
  speciate(state.ctrls, state.cfg.ctrl_evo);
  return state;
}

void run_generation(RunState& state) {
  const CoevoConfig& cfg = state.cfg;
  int g = state.generation;
  if (g >= cfg.generations) return;

  Role role = g % 2 == 0 ? Role::kSam : Role::kController;
  Population& evolving = role == Role::kSam ? state.sams : state.ctrls;
  const EvolutionConfig& evo = role == Role::kSam ? cfg.sam_evo : cfg.ctrl_evo;

  std::vector<Genome> collaborators;
  if (g == 0) {
    // Bootstrap: no controller has a score yet, so draw n random ones.
    std::vector<std::size_t> pool(state.ctrls.genomes.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    for (int k = 0; k < cfg.n_collaborators; ++k) {
      std::size_t pick = k + state.rng.index(pool.size() - k);
      std::swap(pool[k], pool[pick]);
      collaborators.push_back(state.ctrls.genomes[pool[k]]);
    }
  } else {
    collaborators = role == Role::kSam ? state.top_ctrls : state.top_sams;
  }

  std::vector<FitnessRecord> records =
      evaluate_population(evolving.genomes, collaborators, role, cfg, &state.sim_count);

  // Snapshot this population's best right after scoring; the other population
  // collaborates with the snapshot while this one is mid-reproduction.
  std::vector<Genome>& snapshot = role == Role::kSam ? state.top_sams : state.top_ctrls;
  snapshot = select_collaborators(evolving.genomes, cfg.n_collaborators);

  std::size_t best_idx = 0;
  double best = records[0].aptitude;
  double mean = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    mean += records[i].aptitude;
    if (records[i].aptitude > best) {
      best = records[i].aptitude;
      best_idx = i;
    }
  }
  mean /= static_cast<double>(records.size());

  if (role == Role::kSam && (!state.champion.valid || best > state.champion.aptitude)) {
    const FitnessRecord& rec = records[best_idx];
    std::size_t best_collab = 0;
    for (std::size_t j = 1; j < rec.deltas.size(); ++j) {
      if (rec.deltas[j] > rec.deltas[best_collab]) best_collab = j;
    }
    state.champion.valid = true;
    state.champion.sam = evolving.genomes[best_idx];
    state.champion.ctrl = collaborators[best_collab];
    state.champion.aptitude = best;
    state.champion.generation = g;
  }
  state.champion_history.push_back(state.champion.valid ? state.champion.aptitude : 0.0);

  speciate(evolving, evo);
  state.log.push_back({g, std::string(role == Role::kSam ? "sam" : "controller"), best, mean,
                       static_cast<int>(state.sams.species.size()),
                       static_cast<int>(state.ctrls.species.size())});
  reproduce(evolving, evo, state.rng);
  state.generation = g + 1;
}

void coevolve(RunState& state, const std::function<void(const RunState&)>& on_generation) {
  while (state.generation < state.cfg.generations) {
    run_generation(state);
    if (on_generation) on_generation(state);
  }
}

}  // namespace voxevo
