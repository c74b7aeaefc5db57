#pragma once

// Validation logic: allowed-set computation, mapping validity, induced
// allocations, feasibility and approximate feasibility, and constraint
// relaxation. All functions are pure; reports enumerate every violation, not
// just the first.

#include <algorithm>
#include <vector>

#include "vnepkit/model.hpp"

namespace vnep {

enum class ViolationKind {
  NodeNotAllowed,            // node mapped outside its allowed set
  PathEndpointMismatch,      // edge path does not start/end at the mapped nodes
  PathNotSimple,             // a substrate node repeats along the path
  PathDisconnected,          // consecutive path edges do not chain
  PathEmptyForDistinctNodes, // empty path although endpoints map to distinct nodes
  PathNonemptyForCollocated, // non-empty path although endpoints are collocated
  EdgeNotAllowed,            // path uses an edge outside the allowed set
  NodeCapacityExceeded,
  EdgeCapacityExceeded,
  LatencyExceeded,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::NodeNotAllowed: return "node_not_allowed";
    case ViolationKind::PathEndpointMismatch: return "path_endpoint_mismatch";
    case ViolationKind::PathNotSimple: return "path_not_simple";
    case ViolationKind::PathDisconnected: return "path_disconnected";
    case ViolationKind::PathEmptyForDistinctNodes: return "path_empty_for_distinct_nodes";
    case ViolationKind::PathNonemptyForCollocated: return "path_nonempty_for_collocated";
    case ViolationKind::EdgeNotAllowed: return "edge_not_allowed";
    case ViolationKind::NodeCapacityExceeded: return "node_capacity_exceeded";
    case ViolationKind::EdgeCapacityExceeded: return "edge_capacity_exceeded";
    case ViolationKind::LatencyExceeded: return "latency_exceeded";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string element;  // the offending substrate/request element
  std::string detail;
};

struct CheckReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(ViolationKind kind, std::string element, std::string detail) {
    ok = false;
    violations.push_back({kind, std::move(element), std::move(detail)});
  }
};

struct ApproxFactors {
  Rational alpha{1};
  Rational beta{1};
  Rational gamma{1};
};

// Substrate nodes that may host request node i: not forbidden and with enough
// capacity for i's demand alone.
inline std::set<NodeId> allowed_nodes(const VnepInstance& inst, const NodeId& i) {
  if (!inst.request.has_node(i))
    throw Error(ErrorKind::Reference, "unknown request node '" + i + "'");
  const Rational& d = inst.request.demand(i);
  const auto& forbidden = inst.request.forbidden_nodes_of(i);
  std::set<NodeId> out;
  for (const auto& u : inst.substrate.nodes)
    if (!forbidden.count(u) && inst.substrate.capacity(u) >= d) out.insert(u);
  return out;
}

inline std::set<EdgeId> allowed_edges(const VnepInstance& inst, const EdgeId& ij) {
  if (!inst.request.has_edge(ij))
    throw Error(ErrorKind::Reference, "unknown request edge " + edge_key(ij));
  const Rational& d = inst.request.demand(ij);
  const auto& forbidden = inst.request.forbidden_edges_of(ij);
  std::set<EdgeId> out;
  for (const auto& e : inst.substrate.edges)
    if (!forbidden.count(e) && inst.substrate.capacity(e) >= d) out.insert(e);
  return out;
}

namespace detail {

// Dangling references are errors, distinct from invalidity.
inline void check_mapping_references(const VnepInstance& inst, const Mapping& m) {
  for (const auto& i : inst.request.nodes)
    if (!m.node_map.count(i))
      throw Error(ErrorKind::Reference, "node_map is missing request node '" + i + "'");
  for (const auto& [i, u] : m.node_map) {
    if (!inst.request.has_node(i))
      throw Error(ErrorKind::Reference, "node_map references unknown request node '" + i + "'");
    if (!inst.substrate.has_node(u))
      throw Error(ErrorKind::Reference, "node_map references unknown substrate node '" + u + "'");
  }
  for (const auto& e : inst.request.edges)
    if (!m.edge_map.count(e))
      throw Error(ErrorKind::Reference, "edge_map is missing request edge " + edge_key(e));
  for (const auto& [e, path] : m.edge_map) {
    if (!inst.request.has_edge(e))
      throw Error(ErrorKind::Reference, "edge_map references unknown request edge " + edge_key(e));
    for (const auto& se : path)
      if (!inst.substrate.has_edge(se))
        throw Error(ErrorKind::Reference,
                    "edge_map references unknown substrate edge " + edge_key(se));
  }
}

}  // namespace detail

// Validity per the mapping definition: suitable node placements, simple
// connecting paths over allowed edges, and empty paths exactly for collocated
// endpoints.
inline CheckReport is_valid(const VnepInstance& inst, const Mapping& m) {
  detail::check_mapping_references(inst, m);
  CheckReport report;
  for (const auto& i : inst.request.nodes) {
    const NodeId& u = m.node_map.at(i);
    const auto allowed = allowed_nodes(inst, i);
    if (!allowed.count(u))
      report.add(ViolationKind::NodeNotAllowed, i,
                 "request node '" + i + "' mapped on disallowed substrate node '" + u + "'");
  }
  for (const auto& ij : inst.request.edges) {
    const std::vector<EdgeId>& path = m.edge_map.at(ij);
    const NodeId& from = m.node_map.at(ij.first);
    const NodeId& to = m.node_map.at(ij.second);
    const std::string el = edge_key(ij);
    if (from == to) {
      if (!path.empty())
        report.add(ViolationKind::PathNonemptyForCollocated, el,
                   "endpoints collocated on '" + from + "' but path is non-empty");
      continue;
    }
    if (path.empty()) {
      report.add(ViolationKind::PathEmptyForDistinctNodes, el,
                 "empty path but endpoints map to '" + from + "' and '" + to + "'");
      continue;
    }
    if (path.front().first != from)
      report.add(ViolationKind::PathEndpointMismatch, el,
                 "path starts at '" + path.front().first + "', expected '" + from + "'");
    if (path.back().second != to)
      report.add(ViolationKind::PathEndpointMismatch, el,
                 "path ends at '" + path.back().second + "', expected '" + to + "'");
    std::set<NodeId> seen{path.front().first};
    for (size_t k = 0; k < path.size(); ++k) {
      if (k + 1 < path.size() && path[k].second != path[k + 1].first)
        report.add(ViolationKind::PathDisconnected, el,
                   "edges " + edge_key(path[k]) + " and " + edge_key(path[k + 1]) +
                       " do not chain");
      if (!seen.insert(path[k].second).second)
        report.add(ViolationKind::PathNotSimple, el,
                   "substrate node '" + path[k].second + "' repeats on the path");
    }
    const auto allowed = allowed_edges(inst, ij);
    for (const auto& se : path)
      if (!allowed.count(se))
        report.add(ViolationKind::EdgeNotAllowed, el,
                   "path uses disallowed substrate edge " + edge_key(se));
  }
  return report;
}

// Cumulative allocations induced by a valid mapping; recomputed from scratch.
inline Allocations allocations(const VnepInstance& inst, const Mapping& m) {
  CheckReport validity = is_valid(inst, m);
  if (!validity.ok)
    throw Error(ErrorKind::Mapping, "allocations require a valid mapping (" +
                                        std::to_string(validity.violations.size()) +
                                        " violations)");
  Allocations a;
  for (const auto& i : inst.request.nodes) {
    const NodeId& u = m.node_map.at(i);
    auto [it, inserted] = a.node_alloc.emplace(u, inst.request.demand(i));
    if (!inserted) it->second += inst.request.demand(i);
  }
  for (const auto& ij : inst.request.edges) {
    const Rational& d = inst.request.demand(ij);
    for (const auto& se : m.edge_map.at(ij)) {
      auto [it, inserted] = a.edge_alloc.emplace(se, d);
      if (!inserted) it->second += d;
    }
  }
  return a;
}

namespace detail {

inline CheckReport check_feasible(const VnepInstance& inst, const Mapping& m,
                                  const ApproxFactors& f) {
  CheckReport report = is_valid(inst, m);
  if (!report.ok) return report;
  const Allocations alloc = allocations(inst, m);
  if (inst.variant.node_capacities) {
    for (const auto& [u, a] : alloc.node_alloc) {
      Rational limit = f.alpha * inst.substrate.capacity(u);
      if (a > limit)
        report.add(ViolationKind::NodeCapacityExceeded, u,
                   "allocation " + a.to_string() + " exceeds " + limit.to_string() +
                       " at node '" + u + "'");
    }
  }
  if (inst.variant.edge_capacities) {
    for (const auto& [e, a] : alloc.edge_alloc) {
      Rational limit = f.beta * inst.substrate.capacity(e);
      if (a > limit)
        report.add(ViolationKind::EdgeCapacityExceeded, edge_key(e),
                   "allocation " + a.to_string() + " exceeds " + limit.to_string() + " at edge " +
                       edge_key(e));
    }
  }
  if (inst.variant.latency) {
    for (const auto& ij : inst.request.edges) {
      Rational total(0);
      for (const auto& se : m.edge_map.at(ij)) total += inst.substrate.latency(se);
      Rational limit = f.gamma * inst.request.latency_bound(ij);
      if (total > limit)
        report.add(ViolationKind::LatencyExceeded, edge_key(ij),
                   "path latency " + total.to_string() + " exceeds " + limit.to_string());
    }
  }
  return report;
}

}  // namespace detail

inline CheckReport is_feasible(const VnepInstance& inst, const Mapping& m) {
  return detail::check_feasible(inst, m, ApproxFactors{});
}

// Approximate feasibility: validity is checked against the original
// capacities; only the cumulative capacity and latency checks are scaled.
inline CheckReport is_approx_feasible(const VnepInstance& inst, const Mapping& m,
                                      const ApproxFactors& f) {
  if (f.alpha < Rational(1) || f.beta < Rational(1) || f.gamma < Rational(1))
    throw Error(ErrorKind::Argument, "approximation factors must be >= 1");
  return detail::check_feasible(inst, m, f);
}

// Normalized instance in which every constraint dropped by `target` is
// neutralized: capacities to infinity, forbidden sets to empty, latency bounds
// to infinity and substrate latencies to zero.
inline VnepInstance relax_variant(const VnepInstance& inst, const VariantSpec& target) {
  if (!target.subset_of(inst.variant))
    throw Error(ErrorKind::Argument, "relaxation target " + target.display_name() +
                                         " enforces a flag that " +
                                         inst.variant.display_name() + " lacks");
  VnepInstance out = inst;
  out.variant = target;
  if (!target.node_capacities)
    for (auto& [u, c] : out.substrate.node_capacity) c = Rational::infinity();
  if (!target.edge_capacities)
    for (auto& [e, c] : out.substrate.edge_capacity) c = Rational::infinity();
  if (!target.node_placement) out.request.forbidden_nodes.clear();
  if (!target.routing) out.request.forbidden_edges.clear();
  if (!target.latency) {
    for (auto& [e, b] : out.request.edge_latency_bound) b = Rational::infinity();
    for (auto& [e, l] : out.substrate.edge_latency) l = Rational(0);
  }
  return out;
}

}  // namespace vnep
