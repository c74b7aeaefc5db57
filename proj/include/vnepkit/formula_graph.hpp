#pragma once

// Clause-literal incidence graphs and the structural checks for the
// planar/degree-bounded formula class: exactly-3-literal clauses, occurrence
// bounds, the bipartite Euler edge bound, an exact Kuratowski-subdivision
// planarity decision for small graphs, and brute-force vertex 3-connectivity.

#include <array>
#include <functional>

#include "vnepkit/cnf.hpp"
#include "vnepkit/model.hpp"

namespace vnep {

// Bipartite by construction: edges connect clause nodes to literal nodes only.
struct FormulaGraph {
  std::vector<std::string> clause_nodes;   // "C1".."CM"
  std::vector<std::string> literal_nodes;  // "x1".., occurring variables only
  std::set<std::pair<std::string, std::string>> edges;  // (clause node, literal node)
};

inline FormulaGraph build_formula_graph(const CnfFormula& f) {
  FormulaGraph g;
  for (size_t i = 1; i <= f.clauses.size(); ++i)
    g.clause_nodes.push_back("C" + std::to_string(i));
  for (int v : occurring_variables(f)) g.literal_nodes.push_back("x" + std::to_string(v));
  for (size_t i = 0; i < f.clauses.size(); ++i)
    for (int v : f.clauses[i].variables())
      g.edges.emplace(g.clause_nodes[i], "x" + std::to_string(v));
  return g;
}

enum class TriBool { Yes, No, Unchecked };

inline const char* to_string(TriBool t) {
  switch (t) {
    case TriBool::Yes: return "yes";
    case TriBool::No: return "no";
    case TriBool::Unchecked: return "unchecked";
  }
  return "?";
}

namespace detail {

constexpr int kPlanarityNodeLimit = 12;

struct SmallGraph {
  int n = 0;
  std::array<std::uint16_t, 16> adj{};  // undirected adjacency bitmasks

  void add_edge(int a, int b) {
    if (a == b) return;
    adj[a] = static_cast<std::uint16_t>(adj[a] | (1u << b));
    adj[b] = static_cast<std::uint16_t>(adj[b] | (1u << a));
  }
  int degree(int v) const { return __builtin_popcount(adj[v]); }
  int edge_count() const {
    int total = 0;
    for (int v = 0; v < n; ++v) total += degree(v);
    return total / 2;
  }
};

// Internally-disjoint path from a to b avoiding `blocked`; on success the
// search continues with the path's internal vertices added to `blocked`.
inline bool connect_pairs(const SmallGraph& g, const std::vector<std::pair<int, int>>& pairs,
                          size_t idx, unsigned branch_mask, unsigned blocked) {
  if (idx == pairs.size()) return true;
  const auto [a, b] = pairs[idx];
  // Iterative DFS over partial paths ending at `at` with internal set `used`.
  struct Frame {
    int at;
    unsigned used;
  };
  std::vector<Frame> stack{{a, 0u}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    unsigned nbrs = g.adj[f.at];
    for (int w = 0; w < g.n; ++w) {
      if (!(nbrs & (1u << w))) continue;
      if (w == b) {
        if (connect_pairs(g, pairs, idx + 1, branch_mask, blocked | f.used)) return true;
        continue;
      }
      if ((branch_mask | blocked | f.used) & (1u << w)) continue;
      stack.push_back({w, f.used | (1u << w)});
    }
  }
  return false;
}

inline bool has_topological_minor(const SmallGraph& g, int side_a, int side_b) {
  // side_b == 0 requests a complete K_{side_a}; otherwise K_{side_a, side_b}.
  const int branch_total = side_a + side_b;
  const int min_degree = side_b == 0 ? side_a - 1 : (side_a < side_b ? side_b : side_a);
  std::vector<int> cands;
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) >= min_degree) cands.push_back(v);
  if (static_cast<int>(cands.size()) < branch_total) return false;

  std::vector<int> combo(branch_total);
  std::vector<std::pair<int, int>> pairs;
  auto try_branches = [&](const std::vector<int>& branch) {
    unsigned branch_mask = 0;
    for (int v : branch) branch_mask |= 1u << v;
    if (side_b == 0) {
      pairs.clear();
      for (int i = 0; i < side_a; ++i)
        for (int j = i + 1; j < side_a; ++j) pairs.emplace_back(branch[i], branch[j]);
      return connect_pairs(g, pairs, 0, branch_mask, 0u);
    }
    // Split the chosen branch vertices into two sides; fixing branch[0] on
    // side A halves the symmetric splits.
    std::vector<int> rest(branch.begin() + 1, branch.end());
    std::vector<int> pick(side_a - 1);
    std::function<bool(size_t, size_t)> split = [&](size_t from, size_t chosen) -> bool {
      if (chosen == pick.size()) {
        std::vector<int> a_side{branch[0]};
        for (int v : pick) a_side.push_back(v);
        std::vector<int> b_side;
        for (int v : rest)
          if (std::find(a_side.begin(), a_side.end(), v) == a_side.end()) b_side.push_back(v);
        pairs.clear();
        for (int x : a_side)
          for (int y : b_side) pairs.emplace_back(x, y);
        return connect_pairs(g, pairs, 0, branch_mask, 0u);
      }
      for (size_t i = from; i < rest.size(); ++i) {
        pick[chosen] = rest[i];
        if (split(i + 1, chosen + 1)) return true;
      }
      return false;
    };
    return split(0, 0);
  };

  std::function<bool(int, int)> choose = [&](int from, int chosen) -> bool {
    if (chosen == branch_total) {
      std::vector<int> branch(combo.begin(), combo.end());
      return try_branches(branch);
    }
    for (size_t i = from; i < cands.size(); ++i) {
      combo[chosen] = cands[i];
      if (choose(static_cast<int>(i) + 1, chosen + 1)) return true;
    }
    return false;
  };
  return choose(0, 0);
}

}  // namespace detail

// Exact planarity for graphs with at most 12 vertices, by Kuratowski: planar
// iff there is neither a K5 nor a K3,3 subdivision. Vertices are 0..n-1.
inline bool decide_planarity_small(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n > detail::kPlanarityNodeLimit)
    throw Error(ErrorKind::Argument, "exact planarity decision is limited to 12 nodes");
  detail::SmallGraph g;
  g.n = n;
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error(ErrorKind::Argument, "edge endpoint out of range");
    g.add_edge(a, b);
  }
  if (n >= 3 && g.edge_count() > 3 * n - 6) return false;
  if (detail::has_topological_minor(g, 5, 0)) return false;
  if (detail::has_topological_minor(g, 3, 3)) return false;
  return true;
}

// Brute-force vertex 3-connectivity: connected, at least 4 vertices, and no
// pair of vertices whose removal disconnects the rest.
inline bool decide_three_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 4) return false;
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  auto connected_without = [&](int x, int y) {
    int start = -1;
    for (int v = 0; v < n; ++v)
      if (v != x && v != y) {
        start = v;
        break;
      }
    if (start < 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w] && w != x && w != y) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    int expected = n - (x >= 0 ? 1 : 0) - (y >= 0 && y != x ? 1 : 0);
    return count == expected;
  };
  if (!connected_without(-1, -1)) return false;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (!connected_without(x, y)) return false;
  return true;
}

struct FourP3CReport {
  bool clauses_exactly_three = false;  // condition 1
  bool occurrence_at_most_four = false;  // condition 2
  bool euler_ok = false;               // |E| <= 2|V| - 4 for the bipartite graph
  TriBool planar = TriBool::Unchecked;  // exact decision for |V| <= 12
  TriBool three_connected = TriBool::Unchecked;  // brute force for |V| <= 100
  int node_count = 0;
  int edge_count = 0;
  int max_literal_occurrence = 0;
};

inline FourP3CReport check_4p3c(const CnfFormula& f) {
  FourP3CReport report;
  report.clauses_exactly_three = true;
  for (const auto& c : f.clauses)
    report.clauses_exactly_three = report.clauses_exactly_three && c.literals.size() == 3;

  std::map<int, int> occurrence;
  for (const auto& c : f.clauses)
    for (int v : c.variables()) ++occurrence[v];
  for (const auto& [v, count] : occurrence)
    report.max_literal_occurrence = std::max(report.max_literal_occurrence, count);
  report.occurrence_at_most_four = report.max_literal_occurrence <= 4;

  const FormulaGraph g = build_formula_graph(f);
  const int n = static_cast<int>(g.clause_nodes.size() + g.literal_nodes.size());
  const int m = static_cast<int>(g.edges.size());
  report.node_count = n;
  report.edge_count = m;
  report.euler_ok = n < 3 || m <= 2 * n - 4;

  std::map<std::string, int> index;
  std::vector<std::pair<int, int>> edges;
  for (const auto& c : g.clause_nodes) index.emplace(c, static_cast<int>(index.size()));
  for (const auto& l : g.literal_nodes) index.emplace(l, static_cast<int>(index.size()));
  for (const auto& [a, b] : g.edges) edges.emplace_back(index.at(a), index.at(b));

  if (n <= detail::kPlanarityNodeLimit)
    report.planar = decide_planarity_small(n, edges) ? TriBool::Yes : TriBool::No;
  if (n <= 100)
    report.three_connected = decide_three_connected(n, edges) ? TriBool::Yes : TriBool::No;
  return report;
}

struct RequestStructureReport {
  int max_total_degree = 0;  // in-degree + out-degree
  bool degree_at_most_12 = false;
  bool acyclic = false;
  bool planar_edge_bound_ok = false;  // |E| <= 3|V| - 6 for |V| >= 3
};

inline RequestStructureReport check_request_structure(const RequestGraph& r) {
  RequestStructureReport report;
  std::map<NodeId, int> degree;
  for (const auto& n : r.nodes) degree[n] = 0;
  for (const auto& e : r.edges) {
    ++degree[e.first];
    ++degree[e.second];
  }
  for (const auto& [n, d] : degree) report.max_total_degree = std::max(report.max_total_degree, d);
  report.degree_at_most_12 = report.max_total_degree <= 12;
  report.acyclic = is_acyclic(r.nodes, r.edges);
  const int n = static_cast<int>(r.nodes.size());
  const int m = static_cast<int>(r.edges.size());
  report.planar_edge_bound_ok = n < 3 || m <= 3 * n - 6;
  return report;
}

}  // namespace vnep
