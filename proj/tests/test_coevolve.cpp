#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "voxevo/coevolve.hpp"
#include "voxevo/errors.hpp"

using namespace voxevo;

namespace {

// Small, fast, and geometrically asymmetric enough that displacements are
// generally nonzero.
CoevoConfig small_config() {
  CoevoConfig cfg;
  cfg.pop_size = 6;
  cfg.generations = 4;
  cfg.n_collaborators = 2;
  cfg.aggregation = Aggregation::kAm;
  cfg.canvas = Dims{8, 4, 4};
  cfg.seed = 42;
  cfg.sim.duration = 0.1;
  return cfg;
}

Genome scored_genome(int id, double fitness) {
  Genome g;
  g.id = id;
  g.fitness = fitness;
  return g;
}

}  // namespace

TEST_CASE("config validation rejects out-of-range values") {
  CoevoConfig cfg = small_config();
  CHECK_NOTHROW(validate_config(cfg));

  cfg.pop_size = 0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = small_config();
  cfg.n_collaborators = 0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = small_config();
  cfg.n_collaborators = cfg.pop_size + 1;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = small_config();
  cfg.aggregation = Aggregation::kWm;
  cfg.n_collaborators = 4;  // no weight row for 4
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.aggregation = Aggregation::kAm;
  CHECK_NOTHROW(validate_config(cfg));  // plain means take any team size
  cfg = small_config();
  cfg.canvas = Dims{0, 4, 4};
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = small_config();
  cfg.jobs = 0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = small_config();
  cfg.sim.dt = -1e-4;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("collaborator selection takes the n fittest, ties to lower id") {
  std::vector<Genome> pool;
  pool.push_back(scored_genome(7, 0.5));
  pool.push_back(scored_genome(3, 0.9));
  pool.push_back(scored_genome(5, 0.5));
  pool.push_back(scored_genome(1, 0.1));

  const std::vector<Genome> top2 = select_collaborators(pool, 2);
  REQUIRE(top2.size() == 2);
  CHECK(top2[0].id == 3);
  CHECK(top2[1].id == 5);  // 0.5 tie broken toward the lower id

  const std::vector<Genome> top3 = select_collaborators(pool, 3);
  REQUIRE(top3.size() == 3);
  CHECK(top3[2].id == 7);

  // Asking for more than exists returns everything, still sorted.
  const std::vector<Genome> all = select_collaborators(pool, 10);
  REQUIRE(all.size() == 4);
  CHECK(all[3].id == 1);

  pool.push_back(Genome{});  // no fitness
  pool.back().id = 9;
  CHECK_THROWS_AS(select_collaborators(pool, 2), std::logic_error);
}

TEST_CASE("evaluation issues exactly pop*n simulations and aggregates the deltas") {
  CoevoConfig cfg = small_config();
  cfg.sim.duration = 0.05;
  RunState state = init_run(cfg);

  std::vector<Genome> collaborators(state.ctrls.genomes.begin(),
                                    state.ctrls.genomes.begin() + cfg.n_collaborators);
  std::uint64_t sims = 0;
  std::vector<FitnessRecord> records =
      evaluate_population(state.sams.genomes, collaborators, Role::kSam, cfg, &sims);

  CHECK(sims == static_cast<std::uint64_t>(cfg.pop_size) * cfg.n_collaborators);
  REQUIRE(records.size() == static_cast<std::size_t>(cfg.pop_size));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const FitnessRecord& rec = records[i];
    CHECK(rec.genome_id == state.sams.genomes[i].id);
    REQUIRE(rec.deltas.size() == static_cast<std::size_t>(cfg.n_collaborators));
    double mean = 0.0;
    for (double d : rec.deltas) {
      CHECK(d >= 0.0);
      CHECK(std::isfinite(d));
      mean += d;
    }
    mean /= static_cast<double>(rec.deltas.size());
    CHECK(rec.aptitude == doctest::Approx(mean).epsilon(1e-12));
    REQUIRE(state.sams.genomes[i].fitness.has_value());
    CHECK(*state.sams.genomes[i].fitness == rec.aptitude);
  }

  // Evaluating controllers flips which side supplies the bodies.
  std::uint64_t ctrl_sims = 0;
  std::vector<Genome> sam_collabs(state.sams.genomes.begin(),
                                  state.sams.genomes.begin() + cfg.n_collaborators);
  std::vector<FitnessRecord> ctrl_records = evaluate_population(
      state.ctrls.genomes, sam_collabs, Role::kController, cfg, &ctrl_sims);
  CHECK(ctrl_sims == static_cast<std::uint64_t>(cfg.pop_size) * cfg.n_collaborators);
  for (const FitnessRecord& rec : ctrl_records) {
    CHECK(rec.deltas.size() == static_cast<std::size_t>(cfg.n_collaborators));
  }
}

TEST_CASE("degenerate morphologies score zero but still count as simulations") {
  CoevoConfig cfg = small_config();
  cfg.enclosure = false;  // nothing forces material in

  // A morphology network that never reaches |nu| >= 0.5 decodes to nothing.
  Genome empty;
  empty.num_inputs = 3;
  empty.num_outputs = 2;
  for (int i = 0; i < 3; ++i) empty.nodes.push_back({i, NodeRole::kInput, Activation::kIdentity, 0.0});
  empty.nodes.push_back({3, NodeRole::kOutput, Activation::kIdentity, 0.0});
  empty.nodes.push_back({4, NodeRole::kOutput, Activation::kIdentity, 0.0});
  empty.id = 0;
  std::vector<Genome> evolving{empty};

  RunState donor = init_run(small_config());
  std::vector<Genome> collaborators(donor.ctrls.genomes.begin(), donor.ctrls.genomes.begin() + 2);

  std::uint64_t sims = 0;
  std::vector<FitnessRecord> records =
      evaluate_population(evolving, collaborators, Role::kSam, cfg, &sims);
  CHECK(sims == 2);
  REQUIRE(records.size() == 1);
  CHECK(records[0].deltas == std::vector<double>{0.0, 0.0});
  CHECK(records[0].aptitude == 0.0);
  CHECK(*evolving[0].fitness == 0.0);
}

TEST_CASE("initialization seeds both populations with minimal topologies") {
  CoevoConfig cfg = small_config();
  RunState state = init_run(cfg);

  CHECK(state.sams.genomes.size() == static_cast<std::size_t>(cfg.pop_size));
  CHECK(state.ctrls.genomes.size() == static_cast<std::size_t>(cfg.pop_size));
  CHECK(state.generation == 0);
  CHECK(state.sim_count == 0);
  CHECK_FALSE(state.champion.valid);
  CHECK(state.top_sams.empty());
  CHECK(state.top_ctrls.empty());
  CHECK_FALSE(state.sams.species.empty());
  CHECK_FALSE(state.ctrls.species.empty());

  std::set<int> ids;
  for (const Genome& g : state.sams.genomes) {
    CHECK(g.num_inputs == 3);
    CHECK(g.num_outputs == 2);
    CHECK(validate_genome(g).empty());
    ids.insert(g.id);
  }
  CHECK(ids.size() == state.sams.genomes.size());
  for (const Genome& g : state.ctrls.genomes) {
    CHECK(g.num_inputs == 4);
    CHECK(g.num_outputs == 1);
    CHECK(validate_genome(g).empty());
  }
  // Registries continue after the dense initial wiring.
  CHECK(state.sams.registry.next_innovation() == 3 * 2);
  CHECK(state.ctrls.registry.next_innovation() == 4 * 1);

  CHECK_THROWS_AS(init_run([] {
                    CoevoConfig bad = small_config();
                    bad.pop_size = 0;
                    return bad;
                  }()),
                  ConfigError);
}

TEST_CASE("generations alternate morphology and controller evolution") {
  CoevoConfig cfg = small_config();
  RunState state = init_run(cfg);
  coevolve(state);

  REQUIRE(state.log.size() == 4);
  CHECK(state.log[0].evolving == "sam");
  CHECK(state.log[1].evolving == "controller");
  CHECK(state.log[2].evolving == "sam");
  CHECK(state.log[3].evolving == "controller");
  for (int g = 0; g < 4; ++g) {
    CHECK(state.log[g].generation == g);
    CHECK(state.log[g].best_aptitude >= state.log[g].mean_aptitude);
    CHECK(state.log[g].species_count_sam >= 1);
    CHECK(state.log[g].species_count_ctrl >= 1);
  }
  CHECK(state.generation == 4);
  CHECK(state.sim_count == 4ull * cfg.pop_size * cfg.n_collaborators);

  // Populations keep their size through reproduction.
  CHECK(state.sams.genomes.size() == static_cast<std::size_t>(cfg.pop_size));
  CHECK(state.ctrls.genomes.size() == static_cast<std::size_t>(cfg.pop_size));

  // Snapshots hold the n collaborators used by the other side.
  CHECK(state.top_sams.size() == static_cast<std::size_t>(cfg.n_collaborators));
  CHECK(state.top_ctrls.size() == static_cast<std::size_t>(cfg.n_collaborators));
}

TEST_CASE("snapshots appear as soon as a population has been evaluated") {
  RunState state = init_run(small_config());
  run_generation(state);  // generation 0 evaluates morphologies
  CHECK(state.top_sams.size() == 2);
  CHECK(state.top_ctrls.empty());
  run_generation(state);  // generation 1 evaluates controllers
  CHECK(state.top_ctrls.size() == 2);
}

TEST_CASE("champion tracks the best morphology-turn aptitude") {
  CoevoConfig cfg = small_config();
  cfg.generations = 6;
  RunState state = init_run(cfg);
  coevolve(state);

  REQUIRE(state.champion.valid);
  CHECK(state.champion.generation % 2 == 0);
  CHECK(state.champion.sam.num_inputs == 3);
  CHECK(state.champion.ctrl.num_inputs == 4);

  REQUIRE(state.champion_history.size() == 6);
  double best_sam_turn = -1.0;
  for (const GenLogRow& row : state.log) {
    if (row.evolving == "sam") best_sam_turn = std::max(best_sam_turn, row.best_aptitude);
  }
  CHECK(state.champion.aptitude == best_sam_turn);
  for (std::size_t g = 1; g < state.champion_history.size(); ++g) {
    CHECK(state.champion_history[g] >= state.champion_history[g - 1]);
    if (g % 2 == 1) {
      // Controller turns never move the champion.
      CHECK(state.champion_history[g] == state.champion_history[g - 1]);
    }
  }
  CHECK(state.champion_history.back() == state.champion.aptitude);
}

TEST_CASE("identical seeds reproduce the whole run, different seeds do not") {
  CoevoConfig cfg = small_config();
  RunState a = init_run(cfg);
  RunState b = init_run(cfg);
  coevolve(a);
  coevolve(b);
  REQUIRE(a.log.size() == b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].best_aptitude == b.log[i].best_aptitude);
    CHECK(a.log[i].mean_aptitude == b.log[i].mean_aptitude);
    CHECK(a.log[i].species_count_sam == b.log[i].species_count_sam);
  }
  CHECK(a.sim_count == b.sim_count);
  CHECK(a.champion.aptitude == b.champion.aptitude);
  CHECK(a.rng == b.rng);

  cfg.seed = 43;
  RunState c = init_run(cfg);
  coevolve(c);
  bool any_different = c.champion.aptitude != a.champion.aptitude;
  for (std::size_t i = 0; i < a.log.size() && !any_different; ++i) {
    any_different = a.log[i].best_aptitude != c.log[i].best_aptitude ||
                    a.log[i].mean_aptitude != c.log[i].mean_aptitude;
  }
  CHECK(any_different);
}

TEST_CASE("a zero-generation run is a no-op") {
  CoevoConfig cfg = small_config();
  cfg.generations = 0;
  RunState state = init_run(cfg);
  coevolve(state);
  CHECK(state.log.empty());
  CHECK(state.sim_count == 0);
  CHECK_FALSE(state.champion.valid);
  run_generation(state);  // past the end: still a no-op
  CHECK(state.generation == 0);
}

TEST_CASE("the generation callback fires once per generation with fresh state") {
  CoevoConfig cfg = small_config();
  cfg.generations = 3;
  RunState state = init_run(cfg);
  std::vector<int> seen;
  coevolve(state, [&seen](const RunState& s) { seen.push_back(s.generation); });
  CHECK(seen == std::vector<int>{1, 2, 3});
}

TEST_CASE("more parallel jobs change nothing about the results") {
  CoevoConfig serial_cfg = small_config();
  serial_cfg.generations = 2;
  RunState serial = init_run(serial_cfg);
  coevolve(serial);

  CoevoConfig parallel_cfg = serial_cfg;
  parallel_cfg.jobs = 4;
  RunState parallel = init_run(parallel_cfg);
  coevolve(parallel);

  REQUIRE(serial.log.size() == parallel.log.size());
  for (std::size_t i = 0; i < serial.log.size(); ++i) {
    CHECK(serial.log[i].best_aptitude == parallel.log[i].best_aptitude);
    CHECK(serial.log[i].mean_aptitude == parallel.log[i].mean_aptitude);
  }
  CHECK(serial.champion.aptitude == parallel.champion.aptitude);
}
