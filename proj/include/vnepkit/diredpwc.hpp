#pragma once

// Directed edge-disjoint paths with congestion, and its two reductions to
// embedding instances: one pinning commodity endpoints through forbidden node
// sets (edge capacities + placement), one forcing the endpoints through
// capacity-tallying node copies (node + edge capacities).

#include "vnepkit/validate.hpp"

namespace vnep {

struct DirEdpwcInstance {
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::vector<std::pair<NodeId, NodeId>> commodities;  // (source, sink)
  int congestion = 1;
};

inline void validate_diredpwc(const DirEdpwcInstance& d) {
  for (const auto& u : d.nodes) detail::check_id(u, "graph node");
  for (const auto& e : d.edges) {
    if (!d.nodes.count(e.first) || !d.nodes.count(e.second))
      throw Error(ErrorKind::Model, "edge " + edge_key(e) + " has unknown endpoint");
    if (e.first == e.second)
      throw Error(ErrorKind::Model, "self-loop at '" + e.first + "'");
  }
  for (const auto& [s, t] : d.commodities)
    if (!d.nodes.count(s) || !d.nodes.count(t))
      throw Error(ErrorKind::Model, "commodity endpoint is not a graph node");
  if (d.congestion < 1) throw Error(ErrorKind::Model, "congestion must be >= 1");
}

inline NodeId commodity_source_id(int k) { return "i" + std::to_string(k); }
inline NodeId commodity_sink_id(int k) { return "j" + std::to_string(k); }

// Substrate is the original graph with edge capacity c; the request consists
// of one demand-1 edge per commodity whose endpoints are pinned to the
// commodity's source and sink via forbidden node sets.
inline VnepInstance reduce_diredpwc_en(const DirEdpwcInstance& d) {
  validate_diredpwc(d);
  VnepInstance inst;
  inst.variant = VariantSpec::en();
  inst.substrate.nodes = d.nodes;
  inst.substrate.edges = d.edges;
  for (const auto& u : d.nodes) inst.substrate.node_capacity[u] = Rational::infinity();
  for (const auto& e : d.edges) {
    inst.substrate.edge_capacity[e] = Rational(d.congestion);
    inst.substrate.edge_latency[e] = Rational(0);
  }
  for (size_t k = 0; k < d.commodities.size(); ++k) {
    const auto& [s, t] = d.commodities[k];
    const NodeId i = commodity_source_id(static_cast<int>(k) + 1);
    const NodeId j = commodity_sink_id(static_cast<int>(k) + 1);
    inst.request.nodes.insert(i);
    inst.request.nodes.insert(j);
    inst.request.node_demand[i] = Rational(0);
    inst.request.node_demand[j] = Rational(0);
    EdgeId e{i, j};
    inst.request.edges.insert(e);
    inst.request.edge_demand[e] = Rational(1);
    inst.request.edge_latency_bound[e] = Rational::infinity();
    std::set<NodeId> forbid_i, forbid_j;
    for (const auto& u : d.nodes) {
      if (u != s) forbid_i.insert(u);
      if (u != t) forbid_j.insert(u);
    }
    inst.request.forbidden_nodes[i] = std::move(forbid_i);
    inst.request.forbidden_nodes[j] = std::move(forbid_j);
  }
  validate_instance(inst);
  return inst;
}

namespace detail {

inline NodeId fresh_copy_id(const std::set<NodeId>& taken, const NodeId& base, int h) {
  NodeId id = base + "__copy" + std::to_string(h);
  while (taken.count(id)) id += "_";
  return id;
}

}  // namespace detail

// Capacity-only reduction: per occurrence of a node as commodity endpoint a
// copy is attached in both directions. Originals get capacity 0 and copy h of
// node v gets U(v), where U is the 1-based rank of the node id in sorted
// order. Since the total copy capacity equals the total requested demand and
// all U values are distinct, endpoints can only tally on copies of their own
// node.
inline VnepInstance reduce_diredpwc_ve(const DirEdpwcInstance& d) {
  validate_diredpwc(d);
  std::map<NodeId, int> rank;
  {
    int next = 1;
    for (const auto& u : d.nodes) rank[u] = next++;
  }
  std::map<NodeId, int> occurrences;
  for (const auto& [s, t] : d.commodities) {
    ++occurrences[s];
    ++occurrences[t];
  }

  VnepInstance inst;
  inst.variant = VariantSpec::ve();
  inst.substrate.nodes = d.nodes;
  inst.substrate.edges = d.edges;
  for (const auto& u : d.nodes) inst.substrate.node_capacity[u] = Rational(0);
  for (const auto& e : d.edges) {
    inst.substrate.edge_capacity[e] = Rational(d.congestion);
    inst.substrate.edge_latency[e] = Rational(0);
  }
  std::map<NodeId, std::vector<NodeId>> copies;
  for (const auto& [v, count] : occurrences) {
    for (int h = 1; h <= count; ++h) {
      NodeId c = detail::fresh_copy_id(inst.substrate.nodes, v, h);
      inst.substrate.nodes.insert(c);
      inst.substrate.node_capacity[c] = Rational(rank.at(v));
      for (EdgeId e : {EdgeId{c, v}, EdgeId{v, c}}) {
        inst.substrate.edges.insert(e);
        inst.substrate.edge_capacity[e] = Rational(1);
        inst.substrate.edge_latency[e] = Rational(0);
      }
      copies[v].push_back(std::move(c));
    }
  }

  for (size_t k = 0; k < d.commodities.size(); ++k) {
    const auto& [s, t] = d.commodities[k];
    const NodeId i = commodity_source_id(static_cast<int>(k) + 1);
    const NodeId j = commodity_sink_id(static_cast<int>(k) + 1);
    inst.request.nodes.insert(i);
    inst.request.nodes.insert(j);
    inst.request.node_demand[i] = Rational(rank.at(s));
    inst.request.node_demand[j] = Rational(rank.at(t));
    EdgeId e{i, j};
    inst.request.edges.insert(e);
    inst.request.edge_demand[e] = Rational(1);
    inst.request.edge_latency_bound[e] = Rational::infinity();
  }
  validate_instance(inst);
  return inst;
}

}  // namespace vnep
