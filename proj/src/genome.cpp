#include "voxevo/genome.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "voxevo/errors.hpp"

namespace voxevo {

std::string_view node_role_name(NodeRole role) {
  switch (role) {
    case NodeRole::kInput: return "input";
    case NodeRole::kHidden: return "hidden";
    case NodeRole::kOutput: return "output";
  }
  throw std::invalid_argument("node_role_name: unknown role");
}

NodeRole node_role_from_name(std::string_view name) {
  if (name == "input") return NodeRole::kInput;
  if (name == "hidden") return NodeRole::kHidden;
  if (name == "output") return NodeRole::kOutput;
  throw std::invalid_argument("node_role_from_name: unknown role '" + std::string(name) + "'");
}

const NodeGene* Genome::find_node(int node_id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node_id,
                             [](const NodeGene& n, int id) { return n.id < id; });
  return (it != nodes.end() && it->id == node_id) ? &*it : nullptr;
}

NodeGene* Genome::find_node(int node_id) {
  return const_cast<NodeGene*>(static_cast<const Genome*>(this)->find_node(node_id));
}

bool Genome::has_connection(int from, int to) const {
  for (const ConnectionGene& c : connections) {
    if (c.from == from && c.to == to) return true;
  }
  return false;
}

void Genome::insert_node(NodeGene gene) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), gene.id,
                             [](const NodeGene& n, int id) { return n.id < id; });
  nodes.insert(it, gene);
}

void Genome::insert_connection(ConnectionGene gene) {
  auto it = std::lower_bound(connections.begin(), connections.end(), gene.innovation,
                             [](const ConnectionGene& c, int innov) { return c.innovation < innov; });
  connections.insert(it, gene);
}

std::vector<int> topological_order(const Genome& g) {
  std::vector<int> order;
  order.reserve(g.nodes.size());

  std::vector<int> hidden_ids;
  for (const NodeGene& n : g.nodes) {
    if (n.role == NodeRole::kInput) order.push_back(n.id);
    else if (n.role == NodeRole::kHidden) hidden_ids.push_back(n.id);
  }

  // Only hidden->hidden enabled edges constrain the order: inputs have no
  // incoming edges and outputs no outgoing ones.
  std::map<int, int> indegree;
  std::map<int, std::vector<int>> out_edges;
  for (int id : hidden_ids) indegree[id] = 0;
  for (const ConnectionGene& c : g.connections) {
    if (!c.enabled) continue;
    if (indegree.count(c.from) && indegree.count(c.to)) {
      ++indegree[c.to];
      out_edges[c.from].push_back(c.to);
    }
  }

  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (auto& [id, deg] : indegree) {
    if (deg == 0) ready.push(id);
  }
  std::size_t processed = 0;
  while (!ready.empty()) {
    int id = ready.top();
    ready.pop();
    order.push_back(id);
    ++processed;
    for (int succ : out_edges[id]) {
      if (--indegree[succ] == 0) ready.push(succ);
    }
  }
  if (processed != hidden_ids.size()) {
    throw CycleDetected("topological_order: enabled connection graph has a cycle");
  }

  for (const NodeGene& n : g.nodes) {
    if (n.role == NodeRole::kOutput) order.push_back(n.id);
  }
  return order;
}

std::vector<double> feed_forward(const Genome& g, const std::vector<double>& inputs) {
  if (static_cast<int>(inputs.size()) != g.num_inputs) {
    throw ArityMismatch("feed_forward: expected " + std::to_string(g.num_inputs) +
                        " inputs, got " + std::to_string(inputs.size()));
  }

  std::vector<int> order = topological_order(g);

  // Incoming lists built by walking connections in innovation order keeps the
  // accumulation order (and thus the result bits) reproducible.
  std::map<int, std::vector<const ConnectionGene*>> incoming;
  for (const ConnectionGene& c : g.connections) {
    if (c.enabled) incoming[c.to].push_back(&c);
  }

  std::map<int, double> value;
  for (int id : order) {
    const NodeGene* node = g.find_node(id);
    if (node->role == NodeRole::kInput) {
      value[id] = inputs[id];
      continue;
    }
    double sum = node->bias;
    auto it = incoming.find(id);
    if (it != incoming.end()) {
      for (const ConnectionGene* c : it->second) sum += c->weight * value[c->from];
    }
    value[id] = evaluate_activation(node->activation, sum);
  }

  std::vector<double> outputs(g.num_outputs);
  for (int o = 0; o < g.num_outputs; ++o) outputs[o] = value[g.num_inputs + o];
  return outputs;
}

std::vector<std::string> validate_genome(const Genome& g) {
  std::vector<std::string> issues;
  auto complain = [&issues](std::string msg) { issues.push_back(std::move(msg)); };

  if (g.num_inputs < 1) complain("num_inputs must be >= 1");
  if (g.num_outputs < 1) complain("num_outputs must be >= 1");

  std::set<int> ids;
  for (const NodeGene& n : g.nodes) {
    if (!ids.insert(n.id).second) complain("duplicate node id " + std::to_string(n.id));
  }
  for (std::size_t i = 1; i < g.nodes.size(); ++i) {
    if (g.nodes[i - 1].id >= g.nodes[i].id) {
      complain("nodes not sorted by id");
      break;
    }
  }

  for (int i = 0; i < g.num_inputs; ++i) {
    const NodeGene* n = g.find_node(i);
    if (!n || n->role != NodeRole::kInput) {
      complain("missing input node " + std::to_string(i));
    } else if (n->activation != Activation::kIdentity || n->bias != 0.0) {
      complain("input node " + std::to_string(i) + " must use identity activation and zero bias");
    }
  }
  for (int o = 0; o < g.num_outputs; ++o) {
    int id = g.num_inputs + o;
    const NodeGene* n = g.find_node(id);
    if (!n || n->role != NodeRole::kOutput) complain("missing output node " + std::to_string(id));
  }
  for (const NodeGene& n : g.nodes) {
    if (n.role == NodeRole::kInput && n.id >= g.num_inputs) {
      complain("input role on unexpected id " + std::to_string(n.id));
    }
    if (n.role == NodeRole::kOutput && (n.id < g.num_inputs || n.id >= g.num_inputs + g.num_outputs)) {
      complain("output role on unexpected id " + std::to_string(n.id));
    }
    if (n.role == NodeRole::kHidden && n.id < g.num_inputs + g.num_outputs) {
      complain("hidden role on reserved id " + std::to_string(n.id));
    }
  }

  std::set<std::pair<int, int>> pairs;
  std::set<int> innovations;
  for (const ConnectionGene& c : g.connections) {
    if (!innovations.insert(c.innovation).second) {
      complain("duplicate innovation " + std::to_string(c.innovation));
    }
    if (!pairs.insert({c.from, c.to}).second) {
      complain("duplicate connection " + std::to_string(c.from) + "->" + std::to_string(c.to));
    }
    const NodeGene* from = g.find_node(c.from);
    const NodeGene* to = g.find_node(c.to);
    if (!from) complain("connection from unknown node " + std::to_string(c.from));
    if (!to) complain("connection to unknown node " + std::to_string(c.to));
    if (from && from->role == NodeRole::kOutput) {
      complain("connection leaves output node " + std::to_string(c.from));
    }
    if (to && to->role == NodeRole::kInput) {
      complain("connection enters input node " + std::to_string(c.to));
    }
  }
  for (std::size_t i = 1; i < g.connections.size(); ++i) {
    if (g.connections[i - 1].innovation >= g.connections[i].innovation) {
      complain("connections not sorted by innovation");
      break;
    }
  }

  try {
    topological_order(g);
  } catch (const CycleDetected&) {
    complain("enabled connection graph has a cycle");
  }
  return issues;
}

}  // namespace voxevo
