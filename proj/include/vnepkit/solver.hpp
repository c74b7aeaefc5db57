#pragma once

// Exact decision procedure for any variant: exhaustive backtracking over node
// assignments (fail-first order) and simple-path routings with residual
// capacities and latency budgets. Deterministic: candidates are tried in
// sorted id order and paths are yielded in lexicographic edge order, so the
// first feasible mapping found is stable across runs.

#include <chrono>
#include <optional>

#include "vnepkit/validate.hpp"

namespace vnep {

struct SolveLimits {
  std::optional<std::int64_t> max_search_nodes = 10'000'000;
  std::optional<double> max_time_seconds{};
};

struct SolveStats {
  std::int64_t nodes_explored = 0;
  std::int64_t paths_enumerated = 0;
  double wall_seconds = 0.0;
};

enum class SolveStatus { Feasible, Infeasible, ResourceLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::ResourceLimit: return "resource_limit";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Mapping> mapping;  // present iff status == Feasible
  SolveStats stats;
};

namespace detail {

class SearchEngine {
 public:
  SearchEngine(const VnepInstance& inst, const ApproxFactors& factors, const SolveLimits& limits)
      : limits_(limits) {
    for (const auto& u : inst.substrate.nodes) {
      snode_index_[u] = static_cast<int>(snodes_.size());
      snodes_.push_back(u);
    }
    for (const auto& e : inst.substrate.edges) sedges_.push_back(e);
    out_adj_.resize(snodes_.size());
    in_adj_.resize(snodes_.size());
    for (size_t k = 0; k < sedges_.size(); ++k) {
      edge_tail_.push_back(snode_index_.at(sedges_[k].first));
      edge_head_.push_back(snode_index_.at(sedges_[k].second));
      out_adj_[edge_tail_[k]].push_back(static_cast<int>(k));
      in_adj_[edge_head_[k]].push_back(static_cast<int>(k));
    }
    for (const auto& i : inst.request.nodes) {
      rnode_index_[i] = static_cast<int>(rnodes_.size());
      rnodes_.push_back(i);
    }
    for (const auto& e : inst.request.edges) redges_.push_back(e);

    // Static suitability filters; cumulative checks scale by the factors but
    // suitability always uses the original capacities.
    allowed_node_.assign(rnodes_.size(), std::vector<char>(snodes_.size(), 0));
    for (size_t ri = 0; ri < rnodes_.size(); ++ri)
      for (const auto& u : allowed_nodes(inst, rnodes_[ri]))
        allowed_node_[ri][snode_index_.at(u)] = 1;
    allowed_edge_.assign(redges_.size(), std::vector<char>(sedges_.size(), 0));
    for (size_t re = 0; re < redges_.size(); ++re) {
      const auto allowed = allowed_edges(inst, redges_[re]);
      for (size_t k = 0; k < sedges_.size(); ++k)
        if (allowed.count(sedges_[k])) allowed_edge_[re][k] = 1;
    }

    node_limit_.reserve(snodes_.size());
    for (const auto& u : snodes_)
      node_limit_.push_back(inst.variant.node_capacities
                                ? factors.alpha * inst.substrate.capacity(u)
                                : Rational::infinity());
    edge_limit_.reserve(sedges_.size());
    edge_latency_.reserve(sedges_.size());
    for (const auto& e : sedges_) {
      edge_limit_.push_back(inst.variant.edge_capacities
                                ? factors.beta * inst.substrate.capacity(e)
                                : Rational::infinity());
      edge_latency_.push_back(inst.substrate.latency(e));
    }
    node_demand_.reserve(rnodes_.size());
    for (const auto& i : rnodes_) node_demand_.push_back(inst.request.demand(i));
    edge_demand_.reserve(redges_.size());
    latency_budget_.reserve(redges_.size());
    for (const auto& e : redges_) {
      edge_demand_.push_back(inst.request.demand(e));
      latency_budget_.push_back(inst.variant.latency
                                    ? factors.gamma * inst.request.latency_bound(e)
                                    : Rational::infinity());
    }

    build_plan();
    node_used_.assign(snodes_.size(), Rational(0));
    edge_used_.assign(sedges_.size(), Rational(0));
    node_of_.assign(rnodes_.size(), -1);
    path_of_.assign(redges_.size(), {});
  }

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    deadline_.reset();
    if (limits_.max_time_seconds)
      deadline_ = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(*limits_.max_time_seconds));
    SolveResult result;
    const Outcome outcome = search(0);
    result.stats = stats_;
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    switch (outcome) {
      case Outcome::Found:
        result.status = SolveStatus::Feasible;
        result.mapping = std::move(found_mapping_);
        break;
      case Outcome::Exhausted:
        result.status = SolveStatus::Infeasible;
        break;
      case Outcome::LimitHit:
        result.status = SolveStatus::ResourceLimit;
        break;
    }
    return result;
  }

 private:
  enum class Outcome { Found, Exhausted, LimitHit };
  struct Step {
    bool route = false;  // false: assign request node, true: route request edge
    int index = 0;
  };

  // Fail-first: request nodes by ascending allowed-set size, ties by id.
  // Every request edge is routed at the first position where both endpoints
  // are assigned.
  void build_plan() {
    std::vector<int> order(rnodes_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<size_t> allowed_count(rnodes_.size(), 0);
    for (size_t ri = 0; ri < rnodes_.size(); ++ri)
      for (char ok : allowed_node_[ri]) allowed_count[ri] += ok ? 1 : 0;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (allowed_count[a] != allowed_count[b]) return allowed_count[a] < allowed_count[b];
      return rnodes_[a] < rnodes_[b];
    });
    std::vector<int> position(rnodes_.size(), 0);
    for (size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<int>(p);
    for (size_t p = 0; p < order.size(); ++p) {
      plan_.push_back(Step{false, order[p]});
      for (size_t re = 0; re < redges_.size(); ++re) {
        const int pi = position[rnode_index_.at(redges_[re].first)];
        const int pj = position[rnode_index_.at(redges_[re].second)];
        if (static_cast<size_t>(std::max(pi, pj)) == p) plan_.push_back(Step{true, static_cast<int>(re)});
      }
    }
  }

  bool tick() {
    ++stats_.nodes_explored;
    if (limits_.max_search_nodes && stats_.nodes_explored > *limits_.max_search_nodes)
      return false;
    if (deadline_ && (stats_.nodes_explored & 0xFF) == 0 &&
        std::chrono::steady_clock::now() > *deadline_)
      return false;
    return true;
  }

  Outcome search(size_t step_idx) {
    if (step_idx == plan_.size()) {
      // Snapshot before the unwind restores the trail.
      found_mapping_ = extract_mapping();
      return Outcome::Found;
    }
    const Step& step = plan_[step_idx];
    if (!step.route) return assign_node(step_idx, step.index);
    return route_edge(step_idx, step.index);
  }

  Outcome assign_node(size_t step_idx, int ri) {
    const Rational& d = node_demand_[ri];
    for (size_t su = 0; su < snodes_.size(); ++su) {
      if (!allowed_node_[ri][su]) continue;
      if (!tick()) return Outcome::LimitHit;
      if (node_used_[su] + d > node_limit_[su]) continue;
      node_of_[ri] = static_cast<int>(su);
      node_used_[su] += d;
      const Outcome sub = search(step_idx + 1);
      node_used_[su] -= d;
      node_of_[ri] = -1;
      if (sub != Outcome::Exhausted) return sub;
    }
    return Outcome::Exhausted;
  }

  Outcome route_edge(size_t step_idx, int re) {
    const int u = node_of_[rnode_index_.at(redges_[re].first)];
    const int v = node_of_[rnode_index_.at(redges_[re].second)];
    if (u == v) {
      // Collocated endpoints use the empty path; its latency is zero.
      if (!tick()) return Outcome::LimitHit;
      path_of_[re].clear();
      return search(step_idx + 1);
    }
    // Prune DFS branches from which the target is unreachable even over the
    // unconsumed allowed-edge set.
    std::vector<char> reach(snodes_.size(), 0);
    reach[v] = 1;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      const int w = stack.back();
      stack.pop_back();
      for (int e : in_adj_[w])
        if (allowed_edge_[re][e] && !reach[edge_tail_[e]]) {
          reach[edge_tail_[e]] = 1;
          stack.push_back(edge_tail_[e]);
        }
    }
    if (!reach[u]) return Outcome::Exhausted;
    std::vector<char> visited(snodes_.size(), 0);
    visited[u] = 1;
    std::vector<int> path;
    return extend_path(step_idx, re, u, v, Rational(0), reach, visited, path);
  }

  Outcome extend_path(size_t step_idx, int re, int at, int target, Rational latency,
                      const std::vector<char>& reach, std::vector<char>& visited,
                      std::vector<int>& path) {
    const Rational& d = edge_demand_[re];
    for (int e : out_adj_[at]) {
      if (!allowed_edge_[re][e]) continue;
      const int head = edge_head_[e];
      if (visited[head] || !reach[head]) continue;
      if (edge_used_[e] + d > edge_limit_[e]) continue;
      const Rational lat = latency + edge_latency_[e];
      if (lat > latency_budget_[re]) continue;
      if (head == target) {
        ++stats_.paths_enumerated;
        if (!tick()) return Outcome::LimitHit;
        path.push_back(e);
        apply_path_delta(path, d, true);
        path_of_[re] = path;
        const Outcome sub = search(step_idx + 1);
        apply_path_delta(path, d, false);
        path.pop_back();
        if (sub != Outcome::Exhausted) return sub;
        continue;
      }
      visited[head] = 1;
      path.push_back(e);
      const Outcome sub = extend_path(step_idx, re, head, target, lat, reach, visited, path);
      path.pop_back();
      visited[head] = 0;
      if (sub != Outcome::Exhausted) return sub;
    }
    return Outcome::Exhausted;
  }

  void apply_path_delta(const std::vector<int>& path, const Rational& d, bool add) {
    for (int e : path) {
      if (add)
        edge_used_[e] += d;
      else
        edge_used_[e] -= d;
    }
  }

  Mapping extract_mapping() const {
    Mapping m;
    for (size_t ri = 0; ri < rnodes_.size(); ++ri) m.node_map[rnodes_[ri]] = snodes_[node_of_[ri]];
    for (size_t re = 0; re < redges_.size(); ++re) {
      std::vector<EdgeId> path;
      for (int e : path_of_[re]) path.push_back(sedges_[e]);
      m.edge_map[redges_[re]] = std::move(path);
    }
    return m;
  }

  SolveLimits limits_;
  std::vector<NodeId> snodes_;
  std::vector<EdgeId> sedges_;
  std::map<NodeId, int> snode_index_;
  std::vector<int> edge_tail_, edge_head_;
  std::vector<std::vector<int>> out_adj_, in_adj_;
  std::vector<NodeId> rnodes_;
  std::vector<EdgeId> redges_;
  std::map<NodeId, int> rnode_index_;
  std::vector<std::vector<char>> allowed_node_, allowed_edge_;
  std::vector<Rational> node_limit_, edge_limit_, edge_latency_;
  std::vector<Rational> node_demand_, edge_demand_, latency_budget_;
  std::vector<Step> plan_;
  std::vector<Rational> node_used_, edge_used_;
  std::vector<int> node_of_;
  std::vector<std::vector<int>> path_of_;
  Mapping found_mapping_;
  SolveStats stats_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace detail

inline CheckReport verify_certificate_report(const VnepInstance& inst, const Mapping& m,
                                             const std::optional<ApproxFactors>& factors = {}) {
  return factors ? is_approx_feasible(inst, m, *factors) : is_feasible(inst, m);
}

inline bool verify_certificate(const VnepInstance& inst, const Mapping& m,
                               const std::optional<ApproxFactors>& factors = {}) {
  return verify_certificate_report(inst, m, factors).ok;
}

// Decides whether a (factor-relaxed) feasible embedding exists. Feasible
// results carry a mapping that passes the corresponding validator; Infeasible
// is only reported after the backtracking search exhausted every node
// assignment and path combination.
inline SolveResult solve_decision(const VnepInstance& inst,
                                  const std::optional<ApproxFactors>& factors = {},
                                  const SolveLimits& limits = {}) {
  validate_instance(inst);
  if (factors &&
      (factors->alpha < Rational(1) || factors->beta < Rational(1) || factors->gamma < Rational(1)))
    throw Error(ErrorKind::Argument, "approximation factors must be >= 1");
  if ((limits.max_search_nodes && *limits.max_search_nodes < 0) ||
      (limits.max_time_seconds && *limits.max_time_seconds < 0))
    throw Error(ErrorKind::Argument, "limits must be nonnegative");
  detail::SearchEngine engine(inst, factors ? *factors : ApproxFactors{}, limits);
  SolveResult result = engine.run();
  if (result.status == SolveStatus::Feasible) {
    if (!verify_certificate(inst, *result.mapping, factors))
      throw Error(ErrorKind::Internal, "solver produced an infeasible certificate");
  }
  return result;
}

}  // namespace vnep
