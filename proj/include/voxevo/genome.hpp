#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voxevo/activation.hpp"

namespace voxevo {

enum class NodeRole : std::uint8_t { kInput, kHidden, kOutput };

std::string_view node_role_name(NodeRole role);
NodeRole node_role_from_name(std::string_view name);

struct NodeGene {
  int id = 0;
  NodeRole role = NodeRole::kHidden;
  Activation activation = Activation::kIdentity;
  double bias = 0.0;
};

struct ConnectionGene {
  int innovation = 0;
  int from = 0;
  int to = 0;
  double weight = 0.0;
  bool enabled = true;
};

// Directed acyclic network genotype. Invariants maintained by every operation
// that produces a genome:
//   - nodes sorted by id; ids unique; inputs are 0..num_inputs-1 and outputs
//     num_inputs..num_inputs+num_outputs-1, both always present
//   - input nodes use the identity activation and zero bias
//   - connections sorted by innovation; (from, to) pairs unique
//   - no connection enters an input or leaves an output
//   - the connection graph (enabled or not) is acyclic, so toggling a gene
//     can never introduce a cycle
struct Genome {
  int id = 0;
  int num_inputs = 0;
  int num_outputs = 0;
  std::vector<NodeGene> nodes;
  std::vector<ConnectionGene> connections;
  std::optional<double> fitness;

  const NodeGene* find_node(int node_id) const;
  NodeGene* find_node(int node_id);
  bool has_connection(int from, int to) const;
  void insert_node(NodeGene gene);              // keeps id order
  void insert_connection(ConnectionGene gene);  // keeps innovation order
};

// Evaluation order over the enabled graph: inputs first (by id), hidden nodes
// in dependency order (ties by lower id), outputs last (by id). Throws
// CycleDetected if the enabled graph has a cycle.
std::vector<int> topological_order(const Genome& g);

// Single forward pass. Node value = activation(bias + sum of enabled incoming
// weight * source value); input node values are the raw inputs. Throws
// ArityMismatch if inputs.size() != num_inputs.
std::vector<double> feed_forward(const Genome& g, const std::vector<double>& inputs);

// Human-readable descriptions of every violated structural invariant; empty
// means the genome is well-formed.
std::vector<std::string> validate_genome(const Genome& g);

}  // namespace voxevo
