#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "voxevo/genome.hpp"
#include "voxevo/rng.hpp"

namespace voxevo {

struct EvolutionConfig {
  int population_size = 25;
  double compat_threshold = 3.0;
  double compat_disjoint_coeff = 1.0;
  double compat_weight_coeff = 0.5;
  int max_stagnation = 25;
  double survival_threshold = 0.6;
  int elitism = 1;
  double crossover_rate = 0.75;
  double add_node_rate = 0.3;
  double del_node_rate = 0.2;
  double add_conn_rate = 0.3;
  double del_conn_rate = 0.2;
  double toggle_conn_rate = 0.5;
  double activation_mutate_rate = 0.4;
  double weight_mutate_rate = 0.8;
  double weight_perturb_sigma = 0.5;
  double disabled_inherit_prob = 0.75;
};

// Mutated weights and biases stay inside this range; fresh ones are drawn
// from N(0, 1) clamped to kInitClamp.
inline constexpr double kWeightClamp = 8.0;
inline constexpr double kInitClamp = 3.0;

// Tracks historical markings. Identical structural mutations requested within
// one generation receive identical numbers; begin_generation() drops the
// per-generation memory while the counters keep running for the whole run.
class InnovationRegistry {
 public:
  InnovationRegistry() = default;
  InnovationRegistry(int next_innovation, int next_node_id)
      : next_innovation_(next_innovation), next_node_id_(next_node_id) {}

  void begin_generation();

  // Innovation number for a new connection from->to.
  int connection(int from, int to);

  // New node id plus innovation numbers for the two replacement connections
  // when splitting the connection with the given innovation.
  struct Split {
    int node_id;
    int in_innovation;
    int out_innovation;
  };
  Split split(int connection_innovation);

  int next_innovation() const { return next_innovation_; }
  int next_node_id() const { return next_node_id_; }

 private:
  int next_innovation_ = 0;
  int next_node_id_ = 0;
  std::map<std::pair<int, int>, int> seen_connections_;
  std::map<int, Split> seen_splits_;
};

struct Species {
  int id = 0;
  Genome representative;
  std::vector<int> members;  // indices into Population::genomes
  double best_fitness_ever = 0.0;
  bool scored = false;       // best_fitness_ever is meaningful
  int last_improved = 0;
  int created = 0;
};

struct Population {
  std::vector<Genome> genomes;
  std::vector<Species> species;
  InnovationRegistry registry;
  int generation = 0;
  int next_genome_id = 0;
  int next_species_id = 0;
};

// Minimal starting topology: every input wired to every output, no hidden
// nodes. Weights and biases from N(0, 1) clamped to [-3, 3]; output
// activations drawn uniformly from the dictionary. Connection innovations are
// input-major (input i -> output o gets i * num_outputs + o), identical for
// every initial genome so initial populations align gene-for-gene.
Genome initial_genome(int num_inputs, int num_outputs, Rng& rng);

// Compatibility distance:
//   disjoint_coeff * (#disjoint + #excess genes, nodes and connections) / N
//   + weight_coeff * (mean |weight delta| over matching connections
//                     + mean |bias delta| over matching nodes
//                     + fraction of matching nodes with different activations)
// with N = max(total gene count of either genome, 1). Empty matching sets
// contribute zero.
double genomic_distance(const Genome& a, const Genome& b, const EvolutionConfig& cfg);

// Structural and parametric mutation; each operator fires independently with
// its configured rate. Never produces a cycle or a duplicate (from, to) pair.
void mutate(Genome& g, const EvolutionConfig& cfg, InnovationRegistry& registry, Rng& rng);

// NEAT crossover: the child inherits the fitter parent's topology; matching
// genes take parameters from either parent with equal probability, and a gene
// disabled in either parent is disabled in the child with probability
// disabled_inherit_prob. Ties in fitness favour parent a.
Genome crossover(const Genome& a, const Genome& b, const EvolutionConfig& cfg, Rng& rng);

// Assigns every genome to the first species (in id order) whose representative
// is within compat_threshold, founding new species as needed. Afterwards each
// species' representative is the member closest to the previous
// representative (ties by lower genome id); empty species are dropped.
void speciate(Population& pop, const EvolutionConfig& cfg);

// Builds the next generation in place: updates stagnation bookkeeping, removes
// species stagnant for more than max_stagnation generations (always keeping at
// least one), hands out offspring quotas by largest remainder on mean adjusted
// fitness (fitness / species size), copies elites unchanged, and fills the
// rest with mutated crossover/clone offspring from the top
// ceil(survival_threshold * size) of each species. Population size is
// preserved exactly. Requires every genome to have a fitness.
void reproduce(Population& pop, const EvolutionConfig& cfg, Rng& rng);

}  // namespace voxevo
