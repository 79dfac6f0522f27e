#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "voxevo/errors.hpp"
#include "voxevo/evolution.hpp"

using namespace voxevo;

namespace {

// Acyclicity must hold over every connection, enabled or not, so that
// toggling can never create a cycle.
bool full_graph_acyclic(const Genome& g) {
  Genome all_enabled = g;
  for (ConnectionGene& c : all_enabled.connections) c.enabled = true;
  try {
    topological_order(all_enabled);
    return true;
  } catch (const CycleDetected&) {
    return false;
  }
}

Population make_population(int count, int num_inputs, int num_outputs, Rng& rng) {
  Population pop;
  pop.registry = InnovationRegistry(num_inputs * num_outputs, num_inputs + num_outputs);
  for (int i = 0; i < count; ++i) {
    Genome g = initial_genome(num_inputs, num_outputs, rng);
    g.id = i;
    pop.genomes.push_back(std::move(g));
  }
  pop.next_genome_id = count;
  return pop;
}

// Weight-shifted clone clusters: intra-cluster distance 0, inter-cluster
// distance driven far beyond any threshold by a uniform weight offset.
Population two_cluster_population(int per_cluster, double offset, Rng& rng) {
  Population pop;
  pop.registry = InnovationRegistry(6, 5);
  const Genome base = initial_genome(3, 2, rng);
  for (int i = 0; i < 2 * per_cluster; ++i) {
    Genome g = base;
    g.id = i;
    if (i >= per_cluster) {
      for (ConnectionGene& c : g.connections) c.weight += offset;
    }
    pop.genomes.push_back(std::move(g));
  }
  pop.next_genome_id = 2 * per_cluster;
  return pop;
}

EvolutionConfig rates_off() {
  EvolutionConfig cfg;
  cfg.add_node_rate = 0.0;
  cfg.del_node_rate = 0.0;
  cfg.add_conn_rate = 0.0;
  cfg.del_conn_rate = 0.0;
  cfg.toggle_conn_rate = 0.0;
  cfg.activation_mutate_rate = 0.0;
  cfg.weight_mutate_rate = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("initial genomes: minimal fully connected topology") {
  Rng rng(1);
  const Genome sam = initial_genome(3, 2, rng);
  CHECK(sam.nodes.size() == 5);
  CHECK(sam.connections.size() == 6);
  const Genome ctrl = initial_genome(4, 1, rng);
  CHECK(ctrl.nodes.size() == 5);
  CHECK(ctrl.connections.size() == 4);
  CHECK(validate_genome(sam).empty());
  CHECK(validate_genome(ctrl).empty());
  for (const ConnectionGene& c : sam.connections) {
    CHECK(c.enabled);
    CHECK(std::fabs(c.weight) <= 3.0);
    // input-major innovation numbering aligns initial populations gene-for-gene
    CHECK(c.innovation == c.from * 2 + (c.to - 3));
  }
}

TEST_CASE("initial genomes are deterministic per seed") {
  Rng a(99), b(99);
  const Genome ga = initial_genome(3, 2, a);
  const Genome gb = initial_genome(3, 2, b);
  REQUIRE(ga.connections.size() == gb.connections.size());
  for (std::size_t i = 0; i < ga.connections.size(); ++i) {
    CHECK(ga.connections[i].weight == gb.connections[i].weight);
  }
  for (std::size_t i = 0; i < ga.nodes.size(); ++i) {
    CHECK(ga.nodes[i].bias == gb.nodes[i].bias);
    CHECK(ga.nodes[i].activation == gb.nodes[i].activation);
  }
}

TEST_CASE("genomic distance: identity, symmetry, worked examples") {
  EvolutionConfig cfg;
  Rng rng(7);
  const Genome g = initial_genome(3, 2, rng);
  CHECK(genomic_distance(g, g, cfg) == 0.0);

  // one matching weight differing by 1.0 across 6 matching connections
  Genome shifted = g;
  shifted.connections[2].weight += 1.0;
  const double d = genomic_distance(g, shifted, cfg);
  CHECK(d == doctest::Approx(0.5 * (1.0 / 6.0)).epsilon(1e-12));
  CHECK(genomic_distance(shifted, g, cfg) == d);

  // copy with one extra hidden node spliced into connection 0:
  // 3 unmatched genes (node + two connections) over N = max(11, 14)
  Genome split = g;
  split.connections[0].enabled = false;
  split.insert_node({5, NodeRole::kHidden, Activation::kTanh, 0.0});
  split.insert_connection({6, split.connections[0].from, 5, 1.0, true});
  split.insert_connection({7, 5, split.connections[0].to, split.connections[0].weight, true});
  CHECK(genomic_distance(g, split, cfg) == doctest::Approx(3.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("genomic distance is symmetric and zero on self for mutated genomes") {
  EvolutionConfig cfg;
  Rng rng(11);
  InnovationRegistry reg(6, 5);
  Genome a = initial_genome(3, 2, rng);
  Genome b = initial_genome(3, 2, rng);
  for (int step = 0; step < 200; ++step) {
    reg.begin_generation();
    mutate(a, cfg, reg, rng);
    mutate(b, cfg, reg, rng);
    CHECK(genomic_distance(a, b, cfg) == genomic_distance(b, a, cfg));
    CHECK(genomic_distance(a, a, cfg) == 0.0);
    CHECK(genomic_distance(a, b, cfg) >= 0.0);
  }
}

TEST_CASE("forced add-node splits a connection") {
  EvolutionConfig cfg = rates_off();
  cfg.add_node_rate = 1.0;
  Rng rng(3);
  InnovationRegistry reg(6, 5);
  Genome g = initial_genome(3, 2, rng);
  mutate(g, cfg, reg, rng);
  CHECK(g.nodes.size() == 6);        // one hidden node added
  CHECK(g.connections.size() == 8);  // two replacement connections
  int disabled = 0;
  for (const ConnectionGene& c : g.connections) disabled += c.enabled ? 0 : 1;
  CHECK(disabled == 1);
  // the new node's incoming weight is exactly 1.0
  const NodeGene* hidden = g.find_node(5);
  REQUIRE(hidden != nullptr);
  CHECK(hidden->role == NodeRole::kHidden);
  double in_weight = -1.0;
  for (const ConnectionGene& c : g.connections) {
    if (c.to == 5) in_weight = c.weight;
  }
  CHECK(in_weight == 1.0);
  CHECK(validate_genome(g).empty());
  CHECK(full_graph_acyclic(g));
}

TEST_CASE("all rates zero leaves the genome untouched") {
  EvolutionConfig cfg = rates_off();
  Rng rng(4);
  InnovationRegistry reg(6, 5);
  Genome g = initial_genome(3, 2, rng);
  const Genome before = g;
  mutate(g, cfg, reg, rng);
  CHECK(g.nodes.size() == before.nodes.size());
  REQUIRE(g.connections.size() == before.connections.size());
  for (std::size_t i = 0; i < g.connections.size(); ++i) {
    CHECK(g.connections[i].weight == before.connections[i].weight);
    CHECK(g.connections[i].enabled == before.connections[i].enabled);
  }
}

TEST_CASE("identical structural mutations in one generation share innovation numbers") {
  InnovationRegistry reg(6, 5);
  const int first = reg.connection(1, 4);
  CHECK(reg.connection(1, 4) == first);    // same request, same generation
  CHECK(reg.connection(1, 3) == first + 1);  // different request, fresh number
  const InnovationRegistry::Split s1 = reg.split(2);
  const InnovationRegistry::Split s2 = reg.split(2);
  CHECK(s1.node_id == s2.node_id);
  CHECK(s1.in_innovation == s2.in_innovation);
  CHECK(s1.out_innovation == s2.out_innovation);
  const InnovationRegistry::Split other = reg.split(3);
  CHECK(other.node_id != s1.node_id);

  reg.begin_generation();
  // new generation: the same request mints a fresh number
  CHECK(reg.connection(1, 4) != first);
}

TEST_CASE("identical add-connection mutations on clone genomes share the new innovation") {
  EvolutionConfig cfg = rates_off();
  cfg.add_conn_rate = 1.0;
  Rng seed_rng(12);
  InnovationRegistry reg(6, 5);
  Genome a = initial_genome(3, 2, seed_rng);
  // give both genomes a hidden node so an addable pair exists
  cfg.add_node_rate = 1.0;
  Rng r1(500);
  mutate(a, cfg, reg, r1);
  cfg.add_node_rate = 0.0;
  Genome b = a;

  Rng r2(321), r3(321);  // identical decision streams
  mutate(a, cfg, reg, r2);
  mutate(b, cfg, reg, r3);
  REQUIRE(a.connections.size() == b.connections.size());
  for (std::size_t i = 0; i < a.connections.size(); ++i) {
    CHECK(a.connections[i].innovation == b.connections[i].innovation);
    CHECK(a.connections[i].from == b.connections[i].from);
    CHECK(a.connections[i].to == b.connections[i].to);
  }
}

TEST_CASE("mutation preserves validity and full-graph acyclicity under stress") {
  EvolutionConfig cfg;
  Rng rng(2025);
  InnovationRegistry reg(6, 5);
  Genome g = initial_genome(3, 2, rng);
  for (int step = 0; step < 500; ++step) {
    if (step % 10 == 0) reg.begin_generation();
    mutate(g, cfg, reg, rng);
    const auto violations = validate_genome(g);
    if (!violations.empty()) {
      CAPTURE(violations.front());
      REQUIRE(violations.empty());
    }
    REQUIRE(full_graph_acyclic(g));
    for (const ConnectionGene& c : g.connections) {
      CHECK(std::fabs(c.weight) <= kWeightClamp);
    }
  }
}

TEST_CASE("crossover of a genome with itself is a structural clone") {
  EvolutionConfig cfg;
  Rng rng(6);
  Genome g = initial_genome(3, 2, rng);
  g.fitness = 1.0;
  const Genome child = crossover(g, g, cfg, rng);
  REQUIRE(child.connections.size() == g.connections.size());
  for (std::size_t i = 0; i < g.connections.size(); ++i) {
    CHECK(child.connections[i].innovation == g.connections[i].innovation);
    CHECK(child.connections[i].weight == g.connections[i].weight);
  }
  CHECK(child.nodes.size() == g.nodes.size());
}

TEST_CASE("child inherits the fitter parent's extra topology") {
  EvolutionConfig cfg = rates_off();
  cfg.add_node_rate = 1.0;
  Rng rng(8);
  InnovationRegistry reg(6, 5);
  Genome fitter = initial_genome(3, 2, rng);
  Genome other = fitter;
  mutate(fitter, cfg, reg, rng);  // fitter gains a hidden node
  fitter.fitness = 2.0;
  other.fitness = 1.0;
  const Genome child = crossover(fitter, other, cfg, rng);
  CHECK(child.nodes.size() == fitter.nodes.size());
  CHECK(child.connections.size() == fitter.connections.size());
  CHECK(validate_genome(child).empty());

  // order of arguments must not matter: fitness decides
  const Genome child2 = crossover(other, fitter, cfg, rng);
  CHECK(child2.nodes.size() == fitter.nodes.size());
}

TEST_CASE("a gene disabled in one parent is disabled in ~75% of children") {
  EvolutionConfig cfg;
  Rng seed_rng(9);
  Genome a = initial_genome(3, 2, seed_rng);
  Genome b = a;
  a.connections[0].enabled = false;
  a.fitness = 1.0;
  b.fitness = 1.0;
  Rng rng(10);
  int disabled = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const Genome child = crossover(a, b, cfg, rng);
    if (!child.connections[0].enabled) ++disabled;
  }
  const double rate = static_cast<double>(disabled) / trials;
  CHECK(rate > 0.73);
  CHECK(rate < 0.77);
}

TEST_CASE("speciate: clones collapse to one species, clusters split") {
  EvolutionConfig cfg;
  Rng rng(13);
  Population clones = two_cluster_population(10, 0.0, rng);
  for (Genome& g : clones.genomes) g.fitness = 1.0;
  speciate(clones, cfg);
  CHECK(clones.species.size() == 1);
  CHECK(clones.species[0].members.size() == 20);

  Population clusters = two_cluster_population(10, 7.0, rng);
  for (Genome& g : clusters.genomes) g.fitness = 1.0;
  speciate(clusters, cfg);
  CHECK(clusters.species.size() == 2);
  for (const Species& s : clusters.species) CHECK(s.members.size() == 10);
}

TEST_CASE("speciate assigns every genome to exactly one species") {
  EvolutionConfig cfg;
  Rng rng(14);
  Population pop = make_population(25, 3, 2, rng);
  for (Genome& g : pop.genomes) g.fitness = 0.5;
  speciate(pop, cfg);
  std::set<int> seen;
  for (const Species& s : pop.species) {
    for (int idx : s.members) {
      CHECK(seen.insert(idx).second);
    }
  }
  CHECK(seen.size() == pop.genomes.size());
}

TEST_CASE("equal-fitness equal-size species split offspring 50/50") {
  EvolutionConfig cfg = rates_off();
  cfg.population_size = 20;
  cfg.crossover_rate = 0.0;
  cfg.elitism = 0;
  Rng rng(15);
  Population pop = two_cluster_population(10, 7.0, rng);
  for (Genome& g : pop.genomes) g.fitness = 1.0;
  speciate(pop, cfg);
  REQUIRE(pop.species.size() == 2);
  reproduce(pop, cfg, rng);
  CHECK(pop.genomes.size() == 20);
  // with all mutation off, offspring are exact clones: classify by weight
  int low = 0, high = 0;
  for (const Genome& g : pop.genomes) {
    (std::fabs(g.connections[0].weight) < 3.5 ? low : high) += 1;
  }
  CHECK(std::abs(low - high) <= 1);
}

TEST_CASE("species stagnant beyond the limit are removed") {
  EvolutionConfig cfg = rates_off();
  cfg.population_size = 20;
  cfg.crossover_rate = 0.0;
  Rng rng(16);
  Population pop = two_cluster_population(10, 7.0, rng);
  pop.generation = 30;
  for (Genome& g : pop.genomes) g.fitness = 1.0;
  speciate(pop, cfg);
  REQUIRE(pop.species.size() == 2);
  // cluster with shifted weights: mark its species stagnant for 26 generations
  Species& stale = pop.species[1];
  stale.scored = true;
  stale.best_fitness_ever = 100.0;  // never improved upon
  stale.last_improved = pop.generation - 26;
  const int stale_id = stale.id;
  reproduce(pop, cfg, rng);
  for (const Species& s : pop.species) CHECK(s.id != stale_id);
  CHECK(pop.genomes.size() == 20);
  // all offspring descend from the surviving unshifted cluster
  for (const Genome& g : pop.genomes) CHECK(std::fabs(g.connections[0].weight) < 3.5);
}

TEST_CASE("when every species is stagnant the best one is kept") {
  EvolutionConfig cfg = rates_off();
  cfg.population_size = 20;
  cfg.crossover_rate = 0.0;
  Rng rng(17);
  Population pop = two_cluster_population(10, 7.0, rng);
  pop.generation = 30;
  for (std::size_t i = 0; i < pop.genomes.size(); ++i) {
    pop.genomes[i].fitness = i < 10 ? 1.0 : 2.0;  // shifted cluster is fitter
  }
  speciate(pop, cfg);
  REQUIRE(pop.species.size() == 2);
  for (Species& s : pop.species) {
    s.scored = true;
    s.best_fitness_ever = 100.0;
    s.last_improved = pop.generation - 26;
  }
  reproduce(pop, cfg, rng);
  CHECK(pop.species.size() == 1);
  CHECK(pop.genomes.size() == 20);
  for (const Genome& g : pop.genomes) CHECK(std::fabs(g.connections[0].weight) > 3.5);
}

TEST_CASE("reproduce preserves population size for arbitrary fitness landscapes") {
  EvolutionConfig cfg;
  cfg.population_size = 25;
  Rng rng(18);
  Population pop = make_population(25, 3, 2, rng);
  for (int gen = 0; gen < 30; ++gen) {
    for (Genome& g : pop.genomes) {
      g.fitness = rng.uniform(0.0, 1.0);
    }
    speciate(pop, cfg);
    reproduce(pop, cfg, rng);
    REQUIRE(pop.genomes.size() == 25);
    std::set<int> ids;
    for (const Genome& g : pop.genomes) CHECK(ids.insert(g.id).second);
    for (const Genome& g : pop.genomes) {
      REQUIRE(validate_genome(g).empty());
      REQUIRE(full_graph_acyclic(g));
    }
  }
}

TEST_CASE("elitism makes deterministic best fitness non-decreasing") {
  EvolutionConfig cfg;
  cfg.population_size = 25;
  cfg.elitism = 1;
  // deterministic landscape: bounded smooth function of the genome's weights
  const auto score = [](const Genome& g) {
    double sum = 0.0;
    for (const ConnectionGene& c : g.connections) {
      if (c.enabled) sum += std::sin(c.weight);
    }
    return 1.0 / (1.0 + std::exp(-sum));
  };
  Rng rng(19);
  Population pop = make_population(25, 3, 2, rng);
  double last_best = 0.0;
  for (int gen = 0; gen < 40; ++gen) {
    double best = 0.0;
    for (Genome& g : pop.genomes) {
      g.fitness = score(g);
      best = std::max(best, *g.fitness);
    }
    if (gen > 0) CHECK(best >= last_best);
    last_best = best;
    speciate(pop, cfg);
    reproduce(pop, cfg, rng);
  }
}
