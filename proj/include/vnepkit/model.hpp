#pragma once

// Instance data model: substrate and request graphs, the five-flag variant
// taxonomy, mappings and allocations. All types are plain values, immutable by
// convention after assembly; validate_instance() is the single gatekeeper for
// the normalization invariants the rest of the library relies on.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vnepkit/rational.hpp"

namespace vnep {

using NodeId = std::string;
using EdgeId = std::pair<NodeId, NodeId>;

inline std::string edge_key(const EdgeId& e) { return e.first + "->" + e.second; }

struct SubstrateGraph {
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::map<NodeId, Rational> node_capacity;   // >= 0 or inf
  std::map<EdgeId, Rational> edge_capacity;   // >= 0 or inf
  std::map<EdgeId, Rational> edge_latency;    // finite, >= 0

  bool has_node(const NodeId& u) const { return nodes.count(u) != 0; }
  bool has_edge(const EdgeId& e) const { return edges.count(e) != 0; }

  const Rational& capacity(const NodeId& u) const {
    auto it = node_capacity.find(u);
    if (it == node_capacity.end())
      throw Error(ErrorKind::Reference, "unknown substrate node '" + u + "'");
    return it->second;
  }
  const Rational& capacity(const EdgeId& e) const {
    auto it = edge_capacity.find(e);
    if (it == edge_capacity.end())
      throw Error(ErrorKind::Reference, "unknown substrate edge '" + edge_key(e) + "'");
    return it->second;
  }
  const Rational& latency(const EdgeId& e) const {
    auto it = edge_latency.find(e);
    if (it == edge_latency.end())
      throw Error(ErrorKind::Reference, "unknown substrate edge '" + edge_key(e) + "'");
    return it->second;
  }
};

struct RequestGraph {
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::map<NodeId, Rational> node_demand;           // finite, >= 0
  std::map<EdgeId, Rational> edge_demand;           // finite, >= 0
  std::map<EdgeId, Rational> edge_latency_bound;    // >= 0 or inf
  std::map<NodeId, std::set<NodeId>> forbidden_nodes;
  std::map<EdgeId, std::set<EdgeId>> forbidden_edges;

  bool has_node(const NodeId& i) const { return nodes.count(i) != 0; }
  bool has_edge(const EdgeId& e) const { return edges.count(e) != 0; }

  const Rational& demand(const NodeId& i) const {
    auto it = node_demand.find(i);
    if (it == node_demand.end())
      throw Error(ErrorKind::Reference, "unknown request node '" + i + "'");
    return it->second;
  }
  const Rational& demand(const EdgeId& e) const {
    auto it = edge_demand.find(e);
    if (it == edge_demand.end())
      throw Error(ErrorKind::Reference, "unknown request edge '" + edge_key(e) + "'");
    return it->second;
  }
  const Rational& latency_bound(const EdgeId& e) const {
    auto it = edge_latency_bound.find(e);
    if (it == edge_latency_bound.end())
      throw Error(ErrorKind::Reference, "unknown request edge '" + edge_key(e) + "'");
    return it->second;
  }
  const std::set<NodeId>& forbidden_nodes_of(const NodeId& i) const {
    static const std::set<NodeId> empty;
    auto it = forbidden_nodes.find(i);
    return it == forbidden_nodes.end() ? empty : it->second;
  }
  const std::set<EdgeId>& forbidden_edges_of(const EdgeId& e) const {
    static const std::set<EdgeId> empty;
    auto it = forbidden_edges.find(e);
    return it == forbidden_edges.end() ? empty : it->second;
  }
};

// Which constraint families are enforced. Any combination is representable;
// the five named variants used by the instance generators are provided as
// constants.
struct VariantSpec {
  bool node_capacities = false;
  bool edge_capacities = false;
  bool node_placement = false;
  bool routing = false;
  bool latency = false;

  static VariantSpec ve() { return {true, true, false, false, false}; }
  static VariantSpec en() { return {false, true, true, false, false}; }
  static VariantSpec vr() { return {true, false, false, true, false}; }
  static VariantSpec nr() { return {false, false, true, true, false}; }
  static VariantSpec nl() { return {false, false, true, false, true}; }
  static VariantSpec none() { return {}; }
  static VariantSpec all() { return {true, true, true, true, true}; }

  bool subset_of(const VariantSpec& o) const {
    return (!node_capacities || o.node_capacities) &&
           (!edge_capacities || o.edge_capacities) &&
           (!node_placement || o.node_placement) && (!routing || o.routing) &&
           (!latency || o.latency);
  }

  friend bool operator==(const VariantSpec& a, const VariantSpec& b) {
    return a.node_capacities == b.node_capacities &&
           a.edge_capacities == b.edge_capacities &&
           a.node_placement == b.node_placement && a.routing == b.routing &&
           a.latency == b.latency;
  }

  // "<VE|->", "<E|N>", "<-|NL>", ...
  std::string display_name() const {
    std::string c;
    if (node_capacities) c += "V";
    if (edge_capacities) c += "E";
    if (c.empty()) c = "-";
    std::string a;
    if (node_placement) a += "N";
    if (routing) a += "R";
    if (latency) a += "L";
    if (a.empty()) a = "-";
    return "<" + c + "|" + a + ">";
  }
};

struct VnepInstance {
  SubstrateGraph substrate;
  RequestGraph request;
  VariantSpec variant;
};

// A mapping of request nodes onto substrate nodes and of request edges onto
// (possibly empty) substrate edge sequences.
struct Mapping {
  std::map<NodeId, NodeId> node_map;
  std::map<EdgeId, std::vector<EdgeId>> edge_map;
};

struct Allocations {
  std::map<NodeId, Rational> node_alloc;
  std::map<EdgeId, Rational> edge_alloc;

  Rational node(const NodeId& u) const {
    auto it = node_alloc.find(u);
    return it == node_alloc.end() ? Rational(0) : it->second;
  }
  Rational edge(const EdgeId& e) const {
    auto it = edge_alloc.find(e);
    return it == edge_alloc.end() ? Rational(0) : it->second;
  }
};

namespace detail {

inline void check_id(const NodeId& id, const char* what) {
  if (id.empty()) throw Error(ErrorKind::Model, std::string(what) + " id must not be empty");
  if (id.find("->") != std::string::npos)
    throw Error(ErrorKind::Model, std::string(what) + " id '" + id + "' must not contain '->'");
}

template <typename Map>
void check_total_over(const Map& map, const std::set<typename Map::key_type>& domain,
                      const std::string& what) {
  for (const auto& x : domain)
    if (map.find(x) == map.end())
      throw Error(ErrorKind::Model, what + " is missing an entry");
  if (map.size() != domain.size())
    throw Error(ErrorKind::Model, what + " has entries outside its domain");
}

}  // namespace detail

inline void validate_substrate(const SubstrateGraph& g) {
  for (const auto& u : g.nodes) detail::check_id(u, "substrate node");
  for (const auto& e : g.edges) {
    if (!g.has_node(e.first) || !g.has_node(e.second))
      throw Error(ErrorKind::Model, "substrate edge " + edge_key(e) + " has unknown endpoint");
    if (e.first == e.second)
      throw Error(ErrorKind::Model, "substrate self-loop at '" + e.first + "'");
  }
  detail::check_total_over(g.node_capacity, g.nodes, "substrate node_capacity");
  detail::check_total_over(g.edge_capacity, g.edges, "substrate edge_capacity");
  detail::check_total_over(g.edge_latency, g.edges, "substrate edge_latency");
  for (const auto& [u, c] : g.node_capacity)
    if (c.is_negative())
      throw Error(ErrorKind::Model, "negative capacity at node '" + u + "'");
  for (const auto& [e, c] : g.edge_capacity)
    if (c.is_negative())
      throw Error(ErrorKind::Model, "negative capacity at edge " + edge_key(e));
  for (const auto& [e, l] : g.edge_latency)
    if (l.is_negative() || l.is_infinite())
      throw Error(ErrorKind::Model, "latency at edge " + edge_key(e) + " must be finite and >= 0");
}

inline void validate_request(const RequestGraph& r) {
  for (const auto& i : r.nodes) detail::check_id(i, "request node");
  for (const auto& e : r.edges) {
    if (!r.has_node(e.first) || !r.has_node(e.second))
      throw Error(ErrorKind::Model, "request edge " + edge_key(e) + " has unknown endpoint");
    if (e.first == e.second)
      throw Error(ErrorKind::Model, "request self-loop at '" + e.first + "'");
  }
  detail::check_total_over(r.node_demand, r.nodes, "request node_demand");
  detail::check_total_over(r.edge_demand, r.edges, "request edge_demand");
  detail::check_total_over(r.edge_latency_bound, r.edges, "request edge_latency_bound");
  for (const auto& [i, d] : r.node_demand)
    if (d.is_negative() || d.is_infinite())
      throw Error(ErrorKind::Model, "demand of node '" + i + "' must be finite and >= 0");
  for (const auto& [e, d] : r.edge_demand)
    if (d.is_negative() || d.is_infinite())
      throw Error(ErrorKind::Model, "demand of edge " + edge_key(e) + " must be finite and >= 0");
  for (const auto& [e, b] : r.edge_latency_bound)
    if (b.is_negative())
      throw Error(ErrorKind::Model, "latency bound of edge " + edge_key(e) + " must be >= 0");
  for (const auto& [i, fs] : r.forbidden_nodes)
    if (!r.has_node(i))
      throw Error(ErrorKind::Model, "forbidden_nodes keyed by unknown request node '" + i + "'");
  for (const auto& [e, fs] : r.forbidden_edges)
    if (!r.has_edge(e))
      throw Error(ErrorKind::Model, "forbidden_edges keyed by unknown request edge " + edge_key(e));
}

// Full instance invariant: well-formed graphs, forbidden sets referencing the
// paired substrate, and the normalized form for disabled constraints
// (capacities at infinity, latency bounds at infinity, empty forbidden sets).
inline void validate_instance(const VnepInstance& inst) {
  validate_substrate(inst.substrate);
  validate_request(inst.request);
  for (const auto& [i, fs] : inst.request.forbidden_nodes)
    for (const auto& u : fs)
      if (!inst.substrate.has_node(u))
        throw Error(ErrorKind::Model,
                    "forbidden node '" + u + "' of '" + i + "' is not a substrate node");
  for (const auto& [e, fs] : inst.request.forbidden_edges)
    for (const auto& se : fs)
      if (!inst.substrate.has_edge(se))
        throw Error(ErrorKind::Model, "forbidden edge " + edge_key(se) + " of " + edge_key(e) +
                                          " is not a substrate edge");
  const VariantSpec& v = inst.variant;
  if (!v.node_capacities)
    for (const auto& [u, c] : inst.substrate.node_capacity)
      if (!c.is_infinite())
        throw Error(ErrorKind::Model,
                    "node capacities disabled but node '" + u + "' has a finite capacity");
  if (!v.edge_capacities)
    for (const auto& [e, c] : inst.substrate.edge_capacity)
      if (!c.is_infinite())
        throw Error(ErrorKind::Model,
                    "edge capacities disabled but edge " + edge_key(e) + " has a finite capacity");
  if (!v.latency)
    for (const auto& [e, b] : inst.request.edge_latency_bound)
      if (!b.is_infinite())
        throw Error(ErrorKind::Model,
                    "latency disabled but edge " + edge_key(e) + " has a finite bound");
  if (!v.node_placement)
    for (const auto& [i, fs] : inst.request.forbidden_nodes)
      if (!fs.empty())
        throw Error(ErrorKind::Model, "node placement disabled but '" + i +
                                          "' has a non-empty forbidden node set");
  if (!v.routing)
    for (const auto& [e, fs] : inst.request.forbidden_edges)
      if (!fs.empty())
        throw Error(ErrorKind::Model, "routing disabled but " + edge_key(e) +
                                          " has a non-empty forbidden edge set");
}

inline bool is_acyclic(const std::set<NodeId>& nodes, const std::set<EdgeId>& edges) {
  std::map<NodeId, int> indeg;
  std::map<NodeId, std::vector<NodeId>> out;
  for (const auto& n : nodes) indeg[n] = 0;
  for (const auto& e : edges) {
    ++indeg[e.second];
    out[e.first].push_back(e.second);
  }
  std::vector<NodeId> queue;
  for (const auto& [n, d] : indeg)
    if (d == 0) queue.push_back(n);
  size_t seen = 0;
  while (!queue.empty()) {
    NodeId n = queue.back();
    queue.pop_back();
    ++seen;
    for (const auto& m : out[n])
      if (--indeg[m] == 0) queue.push_back(m);
  }
  return seen == nodes.size();
}

}  // namespace vnep
