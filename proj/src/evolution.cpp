#include "voxevo/evolution.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <stdexcept>

#include "voxevo/errors.hpp"

namespace voxevo {

namespace {

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double draw_initial(Rng& rng) { return clamp(rng.normal(0.0, 1.0), -kInitClamp, kInitClamp); }

Activation random_activation(Rng& rng) {
  return all_activations()[rng.index(kActivationCount)];
}

// Cycle test over the full connection set (enabled and disabled alike); the
// genome keeps even its disabled graph acyclic so re-enabling a gene is
// always safe.
bool would_create_cycle(const Genome& g, int from, int to) {
  if (from == to) return true;
  std::vector<int> stack{to};
  std::set<int> seen{to};
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    for (const ConnectionGene& c : g.connections) {
      if (c.from != node) continue;
      if (c.to == from) return true;
      if (seen.insert(c.to).second) stack.push_back(c.to);
    }
  }
  return false;
}

double fitness_of(const Genome& g) {
  if (!g.fitness) throw std::logic_error("genome fitness not set");
  return *g.fitness;
}

}  // namespace

void InnovationRegistry::begin_generation() {
  seen_connections_.clear();
  seen_splits_.clear();
}

int InnovationRegistry::connection(int from, int to) {
  auto key = std::make_pair(from, to);
  auto it = seen_connections_.find(key);
  if (it != seen_connections_.end()) return it->second;
  int innov = next_innovation_++;
  seen_connections_.emplace(key, innov);
  return innov;
}

InnovationRegistry::Split InnovationRegistry::split(int connection_innovation) {
  auto it = seen_splits_.find(connection_innovation);
  if (it != seen_splits_.end()) return it->second;
  Split s{next_node_id_++, next_innovation_, next_innovation_ + 1};
  next_innovation_ += 2;
  seen_splits_.emplace(connection_innovation, s);
  return s;
}

Genome initial_genome(int num_inputs, int num_outputs, Rng& rng) {
  if (num_inputs < 1 || num_outputs < 1) {
    throw std::invalid_argument("initial_genome: need at least one input and one output");
  }
  Genome g;
  g.num_inputs = num_inputs;
  g.num_outputs = num_outputs;
  for (int i = 0; i < num_inputs; ++i) {
    g.nodes.push_back({i, NodeRole::kInput, Activation::kIdentity, 0.0});
  }
  for (int o = 0; o < num_outputs; ++o) {
    g.nodes.push_back({num_inputs + o, NodeRole::kOutput, random_activation(rng), draw_initial(rng)});
  }
  for (int i = 0; i < num_inputs; ++i) {
    for (int o = 0; o < num_outputs; ++o) {
      g.connections.push_back({i * num_outputs + o, i, num_inputs + o, draw_initial(rng), true});
    }
  }
  return g;
}

double genomic_distance(const Genome& a, const Genome& b, const EvolutionConfig& cfg) {
  std::size_t unmatched = 0;

  std::size_t matching_conns = 0;
  double weight_delta = 0.0;
  {
    std::size_t i = 0, j = 0;
    while (i < a.connections.size() || j < b.connections.size()) {
      if (i < a.connections.size() && j < b.connections.size() &&
          a.connections[i].innovation == b.connections[j].innovation) {
        weight_delta += std::fabs(a.connections[i].weight - b.connections[j].weight);
        ++matching_conns;
        ++i;
        ++j;
      } else if (j >= b.connections.size() ||
                 (i < a.connections.size() &&
                  a.connections[i].innovation < b.connections[j].innovation)) {
        ++unmatched;
        ++i;
      } else {
        ++unmatched;
        ++j;
      }
    }
  }

  std::size_t matching_nodes = 0;
  double bias_delta = 0.0;
  double activation_mismatch = 0.0;
  {
    std::size_t i = 0, j = 0;
    while (i < a.nodes.size() || j < b.nodes.size()) {
      if (i < a.nodes.size() && j < b.nodes.size() && a.nodes[i].id == b.nodes[j].id) {
        bias_delta += std::fabs(a.nodes[i].bias - b.nodes[j].bias);
        if (a.nodes[i].activation != b.nodes[j].activation) activation_mismatch += 1.0;
        ++matching_nodes;
        ++i;
        ++j;
      } else if (j >= b.nodes.size() ||
                 (i < a.nodes.size() && a.nodes[i].id < b.nodes[j].id)) {
        ++unmatched;
        ++i;
      } else {
        ++unmatched;
        ++j;
      }
    }
  }

  std::size_t size_a = a.nodes.size() + a.connections.size();
  std::size_t size_b = b.nodes.size() + b.connections.size();
  double n = static_cast<double>(std::max<std::size_t>({size_a, size_b, 1}));

  double structural = cfg.compat_disjoint_coeff * static_cast<double>(unmatched) / n;
  double parametric = 0.0;
  if (matching_conns > 0) parametric += weight_delta / static_cast<double>(matching_conns);
  if (matching_nodes > 0) {
    parametric += bias_delta / static_cast<double>(matching_nodes);
    parametric += activation_mismatch / static_cast<double>(matching_nodes);
  }
  return structural + cfg.compat_weight_coeff * parametric;
}

namespace {

void mutate_add_node(Genome& g, InnovationRegistry& registry, Rng& rng) {
  std::vector<std::size_t> enabled;
  for (std::size_t i = 0; i < g.connections.size(); ++i) {
    if (g.connections[i].enabled) enabled.push_back(i);
  }
  if (enabled.empty()) return;
  std::size_t pick = enabled[rng.index(enabled.size())];
  InnovationRegistry::Split s = registry.split(g.connections[pick].innovation);
  if (g.find_node(s.node_id)) return;

  g.connections[pick].enabled = false;
  int from = g.connections[pick].from;
  int to = g.connections[pick].to;
  double old_weight = g.connections[pick].weight;
  g.insert_node({s.node_id, NodeRole::kHidden, random_activation(rng), 0.0});
  g.insert_connection({s.in_innovation, from, s.node_id, 1.0, true});
  g.insert_connection({s.out_innovation, s.node_id, to, old_weight, true});
}

void mutate_del_node(Genome& g, Rng& rng) {
  std::vector<int> hidden;
  for (const NodeGene& n : g.nodes) {
    if (n.role == NodeRole::kHidden) hidden.push_back(n.id);
  }
  if (hidden.empty()) return;
  int victim = hidden[rng.index(hidden.size())];
  std::erase_if(g.connections,
                [victim](const ConnectionGene& c) { return c.from == victim || c.to == victim; });
  std::erase_if(g.nodes, [victim](const NodeGene& n) { return n.id == victim; });
}

void mutate_add_connection(Genome& g, const EvolutionConfig&, InnovationRegistry& registry,
                           Rng& rng) {
  std::vector<std::pair<int, int>> candidates;
  for (const NodeGene& from : g.nodes) {
    if (from.role == NodeRole::kOutput) continue;
    for (const NodeGene& to : g.nodes) {
      if (to.role == NodeRole::kInput) continue;
      if (from.id == to.id) continue;
      if (g.has_connection(from.id, to.id)) continue;
      if (would_create_cycle(g, from.id, to.id)) continue;
      candidates.emplace_back(from.id, to.id);
    }
  }
  if (candidates.empty()) return;
  auto [from, to] = candidates[rng.index(candidates.size())];
  int innov = registry.connection(from, to);
  g.insert_connection({innov, from, to, draw_initial(rng), true});
}

void mutate_del_connection(Genome& g, Rng& rng) {
  if (g.connections.empty()) return;
  g.connections.erase(g.connections.begin() + static_cast<long>(rng.index(g.connections.size())));
}

void mutate_toggle(Genome& g, Rng& rng) {
  if (g.connections.empty()) return;
  ConnectionGene& c = g.connections[rng.index(g.connections.size())];
  // Safe either way: the full connection graph stays acyclic, so re-enabling
  // cannot create an enabled cycle.
  c.enabled = !c.enabled;
}

void mutate_activation(Genome& g, Rng& rng) {
  std::vector<NodeGene*> mutable_nodes;
  for (NodeGene& n : g.nodes) {
    if (n.role != NodeRole::kInput) mutable_nodes.push_back(&n);
  }
  if (mutable_nodes.empty()) return;
  mutable_nodes[rng.index(mutable_nodes.size())]->activation = random_activation(rng);
}

void mutate_parameters(Genome& g, const EvolutionConfig& cfg, Rng& rng) {
  for (ConnectionGene& c : g.connections) {
    if (rng.chance(cfg.weight_mutate_rate)) {
      c.weight = clamp(c.weight + rng.normal(0.0, cfg.weight_perturb_sigma), -kWeightClamp,
                       kWeightClamp);
    }
  }
  for (NodeGene& n : g.nodes) {
    if (n.role == NodeRole::kInput) continue;
    if (rng.chance(cfg.weight_mutate_rate)) {
      n.bias = clamp(n.bias + rng.normal(0.0, cfg.weight_perturb_sigma), -kWeightClamp,
                     kWeightClamp);
    }
  }
}

}  // namespace

void mutate(Genome& g, const EvolutionConfig& cfg, InnovationRegistry& registry, Rng& rng) {
  if (rng.chance(cfg.add_node_rate)) mutate_add_node(g, registry, rng);
  if (rng.chance(cfg.del_node_rate)) mutate_del_node(g, rng);
  if (rng.chance(cfg.add_conn_rate)) mutate_add_connection(g, cfg, registry, rng);
  if (rng.chance(cfg.del_conn_rate)) mutate_del_connection(g, rng);
  if (rng.chance(cfg.toggle_conn_rate)) mutate_toggle(g, rng);
  if (rng.chance(cfg.activation_mutate_rate)) mutate_activation(g, rng);
  mutate_parameters(g, cfg, rng);
}

Genome crossover(const Genome& a, const Genome& b, const EvolutionConfig& cfg, Rng& rng) {
  const Genome& fitter = fitness_of(b) > fitness_of(a) ? b : a;
  const Genome& other = (&fitter == &a) ? b : a;

  Genome child;
  child.num_inputs = fitter.num_inputs;
  child.num_outputs = fitter.num_outputs;

  // The child's topology is the fitter parent's; the weaker parent only
  // contributes parameters on matching genes.
  for (const ConnectionGene& c : fitter.connections) {
    const ConnectionGene* oc = nullptr;
    for (const ConnectionGene& cand : other.connections) {
      if (cand.innovation == c.innovation) {
        oc = &cand;
        break;
      }
      if (cand.innovation > c.innovation) break;
    }
    ConnectionGene gene = c;
    if (oc) gene = rng.chance(0.5) ? c : *oc;
    bool any_disabled = !c.enabled || (oc && !oc->enabled);
    gene.enabled = any_disabled ? !rng.chance(cfg.disabled_inherit_prob) : true;
    child.connections.push_back(gene);
  }

  for (const NodeGene& n : fitter.nodes) {
    const NodeGene* on = other.find_node(n.id);
    child.nodes.push_back(on && rng.chance(0.5) ? *on : n);
  }
  return child;
}

void speciate(Population& pop, const EvolutionConfig& cfg) {
  for (Species& s : pop.species) s.members.clear();

  for (std::size_t idx = 0; idx < pop.genomes.size(); ++idx) {
    const Genome& g = pop.genomes[idx];
    bool placed = false;
    for (Species& s : pop.species) {
      if (genomic_distance(g, s.representative, cfg) < cfg.compat_threshold) {
        s.members.push_back(static_cast<int>(idx));
        placed = true;
        break;
      }
    }
    if (!placed) {
      Species s;
      s.id = pop.next_species_id++;
      s.representative = g;
      s.members.push_back(static_cast<int>(idx));
      s.created = pop.generation;
      s.last_improved = pop.generation;
      pop.species.push_back(std::move(s));
    }
  }

  std::erase_if(pop.species, [](const Species& s) { return s.members.empty(); });

  for (Species& s : pop.species) {
    int best_idx = -1;
    double best_dist = 0.0;
    for (int idx : s.members) {
      double d = genomic_distance(pop.genomes[idx], s.representative, cfg);
      if (best_idx < 0 || d < best_dist ||
          (d == best_dist && pop.genomes[idx].id < pop.genomes[best_idx].id)) {
        best_idx = idx;
        best_dist = d;
      }
    }
    s.representative = pop.genomes[best_idx];
  }
}

namespace {

// Largest-remainder apportionment of population_size offspring over weights,
// ties by lower species id; every species then gets at least the elitism
// floor when the budget allows it.
std::vector<int> offspring_quotas(const Population& pop, const EvolutionConfig& cfg) {
  std::size_t count = pop.species.size();
  std::vector<double> weights(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Species& s = pop.species[i];
    double sum = 0.0;
    for (int idx : s.members) sum += fitness_of(pop.genomes[idx]);
    double size = static_cast<double>(s.members.size());
    weights[i] = (sum / size) / size;  // mean adjusted fitness
  }
  double min_w = *std::min_element(weights.begin(), weights.end());
  if (min_w < 0.0) {
    for (double& w : weights) w -= min_w;
  }
  double total_w = 0.0;
  for (double w : weights) total_w += w;
  if (total_w <= 0.0) {
    std::fill(weights.begin(), weights.end(), 1.0);
    total_w = static_cast<double>(count);
  }

  int total = cfg.population_size;
  std::vector<int> quota(count);
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < count; ++i) {
    double ideal = total * weights[i] / total_w;
    quota[i] = static_cast<int>(std::floor(ideal));
    assigned += quota[i];
    remainders.push_back({ideal - std::floor(ideal), i});
  }
  std::sort(remainders.begin(), remainders.end(), [&pop](const auto& lhs, const auto& rhs) {
    if (lhs.first != rhs.first) return lhs.first > rhs.first;
    return pop.species[lhs.second].id < pop.species[rhs.second].id;
  });
  for (int k = 0; k < total - assigned; ++k) quota[remainders[k % count].second] += 1;

  // Elitism floor. Feasible whenever elitism * species count <= population
  // size; otherwise the best species take priority.
  int floor_each = cfg.elitism;
  if (floor_each > 0 && static_cast<int>(count) * floor_each <= total) {
    auto donor = [&]() -> int {
      int best = -1;
      for (std::size_t i = 0; i < count; ++i) {
        if (quota[i] > floor_each && (best < 0 || quota[i] > quota[best])) {
          best = static_cast<int>(i);
        }
      }
      return best;
    };
    for (std::size_t i = 0; i < count; ++i) {
      while (quota[i] < floor_each) {
        int d = donor();
        if (d < 0) return quota;  // cannot rebalance further
        --quota[d];
        ++quota[i];
      }
    }
  } else if (floor_each > 0) {
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
      if (weights[lhs] != weights[rhs]) return weights[lhs] > weights[rhs];
      return pop.species[lhs].id < pop.species[rhs].id;
    });
    std::fill(quota.begin(), quota.end(), 0);
    int remaining = total;
    for (std::size_t i : order) {
      quota[i] = std::min(floor_each, remaining);
      remaining -= quota[i];
    }
    quota[order[0]] += remaining;
  }
  return quota;
}

}  // namespace

void reproduce(Population& pop, const EvolutionConfig& cfg, Rng& rng) {
  if (pop.species.empty()) throw std::logic_error("reproduce: speciate must run first");
  pop.registry.begin_generation();

  // Stagnation bookkeeping: a species improves when its best raw fitness
  // strictly exceeds its all-time best.
  for (Species& s : pop.species) {
    double best = fitness_of(pop.genomes[s.members.front()]);
    for (int idx : s.members) best = std::max(best, fitness_of(pop.genomes[idx]));
    if (!s.scored || best > s.best_fitness_ever) {
      s.best_fitness_ever = best;
      s.scored = true;
      s.last_improved = pop.generation;
    }
  }

  auto species_best = [&](const Species& s) {
    double best = fitness_of(pop.genomes[s.members.front()]);
    for (int idx : s.members) best = std::max(best, fitness_of(pop.genomes[idx]));
    return best;
  };

  // The species holding the population's best genome is exempt from
  // stagnation removal: dropping it would break the monotone best-fitness
  // guarantee elitism provides, and it keeps at least one species alive when
  // every species has stagnated.
  std::size_t champion = 0;
  for (std::size_t i = 1; i < pop.species.size(); ++i) {
    double a = species_best(pop.species[i]);
    double b = species_best(pop.species[champion]);
    if (a > b || (a == b && pop.species[i].id < pop.species[champion].id)) champion = i;
  }
  const int champion_id = pop.species[champion].id;
  std::erase_if(pop.species, [&](const Species& s) {
    return s.id != champion_id && pop.generation - s.last_improved > cfg.max_stagnation;
  });

  std::vector<int> quota = offspring_quotas(pop, cfg);

  std::vector<Genome> next;
  next.reserve(cfg.population_size);
  for (std::size_t si = 0; si < pop.species.size(); ++si) {
    Species& s = pop.species[si];
    std::vector<int> ranked = s.members;
    std::sort(ranked.begin(), ranked.end(), [&pop](int lhs, int rhs) {
      double fl = fitness_of(pop.genomes[lhs]);
      double fr = fitness_of(pop.genomes[rhs]);
      if (fl != fr) return fl > fr;
      return pop.genomes[lhs].id < pop.genomes[rhs].id;
    });

    int produced = 0;
    int elites = std::min({cfg.elitism, quota[si], static_cast<int>(ranked.size())});
    for (int e = 0; e < elites; ++e) {
      next.push_back(pop.genomes[ranked[e]]);  // carried over unchanged, id kept
      ++produced;
    }

    std::size_t pool =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(
                                     cfg.survival_threshold * static_cast<double>(ranked.size()))));
    pool = std::min(pool, ranked.size());

    for (; produced < quota[si]; ++produced) {
      Genome child;
      if (pool >= 2 && rng.chance(cfg.crossover_rate)) {
        std::size_t i = rng.index(pool);
        std::size_t j = rng.index(pool - 1);
        if (j >= i) ++j;
        child = crossover(pop.genomes[ranked[i]], pop.genomes[ranked[j]], cfg, rng);
      } else {
        child = pop.genomes[ranked[rng.index(pool)]];
        child.fitness.reset();
      }
      child.id = pop.next_genome_id++;
      child.fitness.reset();
      mutate(child, cfg, pop.registry, rng);
      next.push_back(std::move(child));
    }
  }

  assert(static_cast<int>(next.size()) == cfg.population_size);
  pop.genomes = std::move(next);
  for (Species& s : pop.species) s.members.clear();
  pop.generation += 1;
}

}  // namespace voxevo
