#pragma once

// 3-SAT instance constructions: one substrate node per satisfying local
// assignment of a clause, one request node per clause, and the five variant
// instantiations whose feasibility equals satisfiability of the formula. Also
// houses the assignment encoder and the mapping decoder.

#include <optional>

#include "vnepkit/cnf.hpp"
#include "vnepkit/sat.hpp"
#include "vnepkit/validate.hpp"

namespace vnep {

enum class GadgetVariant { VE, EN, VR, NR, NL };

inline VariantSpec variant_spec(GadgetVariant v) {
  switch (v) {
    case GadgetVariant::VE: return VariantSpec::ve();
    case GadgetVariant::EN: return VariantSpec::en();
    case GadgetVariant::VR: return VariantSpec::vr();
    case GadgetVariant::NR: return VariantSpec::nr();
    case GadgetVariant::NL: return VariantSpec::nl();
  }
  throw Error(ErrorKind::Internal, "unknown gadget variant");
}

inline const char* variant_code(GadgetVariant v) {
  switch (v) {
    case GadgetVariant::VE: return "ve";
    case GadgetVariant::EN: return "en";
    case GadgetVariant::VR: return "vr";
    case GadgetVariant::NR: return "nr";
    case GadgetVariant::NL: return "nl";
  }
  return "?";
}

inline std::optional<GadgetVariant> gadget_variant_from_code(const std::string& code) {
  if (code == "ve") return GadgetVariant::VE;
  if (code == "en") return GadgetVariant::EN;
  if (code == "vr") return GadgetVariant::VR;
  if (code == "nr") return GadgetVariant::NR;
  if (code == "nl") return GadgetVariant::NL;
  return std::nullopt;
}

inline NodeId substrate_node_id(int clause, int rank) {
  return "a" + std::to_string(clause) + "_" + std::to_string(rank);
}
inline NodeId request_node_id(int clause) { return "v" + std::to_string(clause); }

// Substrate skeleton: nodes are the satisfying local assignments of each
// clause; edge (a_{i,m}, a_{j,n}) exists iff some shared variable first occurs
// in clause i and the two assignments agree on every shared variable.
struct SubstrateSkeleton {
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::map<NodeId, LocalAssignment> registry;
  std::vector<std::vector<NodeId>> groups;  // groups[i-1] lists A_i in canonical order
};

struct RequestSkeleton {
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::map<NodeId, int> registry;  // request node -> clause index
};

namespace detail {

inline void require_ordered(const CnfFormula& f) {
  if (!is_ordered(f))
    throw Error(ErrorKind::Argument,
                "formula is not ordered; normalize it first (decomposable formulas "
                "must be handled per component)");
}

// Request edge (i, j) exists iff some variable shared by clauses i and j has
// its first occurrence in clause i.
inline bool clauses_linked(const CnfFormula& f, const std::map<int, int>& first, int i, int j) {
  for (int v : f.clauses[i - 1].variables())
    if (f.clauses[j - 1].contains_variable(v) && first.at(v) == i) return true;
  return false;
}

}  // namespace detail

inline SubstrateSkeleton build_substrate(const CnfFormula& f) {
  detail::require_ordered(f);
  const int m = static_cast<int>(f.clauses.size());
  const auto first = first_occurrence(f);
  SubstrateSkeleton s;
  std::vector<std::vector<LocalAssignment>> groups(m);
  for (int i = 1; i <= m; ++i) {
    groups[i - 1] = local_satisfying_assignments(f, i);
    std::vector<NodeId> ids;
    for (size_t r = 0; r < groups[i - 1].size(); ++r) {
      NodeId id = substrate_node_id(i, static_cast<int>(r) + 1);
      s.nodes.insert(id);
      s.registry.emplace(id, groups[i - 1][r]);
      ids.push_back(std::move(id));
    }
    s.groups.push_back(std::move(ids));
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      if (!detail::clauses_linked(f, first, i, j)) continue;
      std::vector<int> shared;
      for (int v : f.clauses[i - 1].variables())
        if (f.clauses[j - 1].contains_variable(v)) shared.push_back(v);
      for (size_t mi = 0; mi < groups[i - 1].size(); ++mi) {
        for (size_t nj = 0; nj < groups[j - 1].size(); ++nj) {
          bool agree = true;
          for (int v : shared)
            if (groups[i - 1][mi].values.at(v) != groups[j - 1][nj].values.at(v)) {
              agree = false;
              break;
            }
          if (agree) s.edges.emplace(s.groups[i - 1][mi], s.groups[j - 1][nj]);
        }
      }
    }
  }
  return s;
}

inline RequestSkeleton build_request(const CnfFormula& f) {
  detail::require_ordered(f);
  const int m = static_cast<int>(f.clauses.size());
  const auto first = first_occurrence(f);
  RequestSkeleton r;
  for (int i = 1; i <= m; ++i) {
    NodeId id = request_node_id(i);
    r.nodes.insert(id);
    r.registry.emplace(id, i);
  }
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      if (detail::clauses_linked(f, first, i, j))
        r.edges.emplace(request_node_id(i), request_node_id(j));
  return r;
}

struct GadgetApprox {
  enum class Kind { AlphaEps, GammaEps };
  Kind kind;
  Rational eps;  // the hardness factor is 2 - eps, 0 < eps < 1
};

struct GadgetParameters {
  Rational lambda;
  std::optional<Rational> epsilon;
  std::optional<Rational> alpha;  // set for alpha_eps instantiations
  std::optional<Rational> gamma;  // set for gamma_eps instantiations
};

struct GadgetArtifacts {
  VnepInstance instance;
  CnfFormula formula;  // the clause order the construction used
  std::map<NodeId, LocalAssignment> node_registry;
  std::map<NodeId, int> request_registry;
  GadgetParameters parameters;
  GadgetVariant variant = GadgetVariant::VE;
};

// Builds the variant instantiation on top of the skeletons. Capacities and
// demands follow 1 + lambda * (M - i) per group and 1 + lambda * i for edges
// entering group i; with lambda below 1/M no substrate node can host two
// request nodes and no request edge fits a path of length two. Placement,
// routing and latency variants replace the capacity arguments by forbidden
// sets or unit latencies.
inline GadgetArtifacts instantiate_gadget(const CnfFormula& f, GadgetVariant variant,
                                          const std::optional<GadgetApprox>& approx = {},
                                          const std::optional<Rational>& lambda_override = {}) {
  detail::require_ordered(f);
  const int m = static_cast<int>(f.clauses.size());

  GadgetParameters params;
  if (approx) {
    const Rational& eps = approx->eps;
    if (!(Rational(0) < eps && eps < Rational(1)))
      throw Error(ErrorKind::Argument, "approximation epsilon must satisfy 0 < eps < 1");
    params.epsilon = eps;
    if (approx->kind == GadgetApprox::Kind::AlphaEps) {
      if (variant != GadgetVariant::VE && variant != GadgetVariant::VR)
        throw Error(ErrorKind::Argument, "alpha_eps applies to the ve and vr variants only");
      params.alpha = Rational(2) - eps;
    } else {
      if (variant != GadgetVariant::NL)
        throw Error(ErrorKind::Argument, "gamma_eps applies to the nl variant only");
      params.gamma = Rational(2) - eps;
    }
  }

  Rational lambda(1);
  if (m > 0) {
    if (approx && approx->kind == GadgetApprox::Kind::AlphaEps)
      lambda = approx->eps / Rational(4 * m);
    else
      lambda = Rational(1, 2 * static_cast<std::int64_t>(m));
    if (lambda_override) {
      lambda = *lambda_override;
      if (!(Rational(0) < lambda && lambda < Rational(1, m)))
        throw Error(ErrorKind::Argument, "lambda must satisfy 0 < lambda < 1/M");
      if (approx && approx->kind == GadgetApprox::Kind::AlphaEps &&
          !(lambda < approx->eps / Rational(2 * m)))
        throw Error(ErrorKind::Argument, "lambda must satisfy lambda < eps/(2M)");
    }
  }
  params.lambda = lambda;

  const SubstrateSkeleton sub = build_substrate(f);
  const RequestSkeleton req = build_request(f);

  GadgetArtifacts g;
  g.formula = f;
  g.node_registry = sub.registry;
  g.request_registry = req.registry;
  g.parameters = params;
  g.variant = variant;

  SubstrateGraph& substrate = g.instance.substrate;
  RequestGraph& request = g.instance.request;
  substrate.nodes = sub.nodes;
  substrate.edges = sub.edges;
  request.nodes = req.nodes;
  request.edges = req.edges;
  g.instance.variant = variant_spec(variant);

  const bool use_node_caps = g.instance.variant.node_capacities;
  const bool use_edge_caps = g.instance.variant.edge_capacities;
  const bool use_latency = g.instance.variant.latency;

  auto group_of = [&g](const NodeId& u) { return g.node_registry.at(u).clause_index; };
  for (const auto& u : substrate.nodes) {
    const int i = group_of(u);
    substrate.node_capacity[u] =
        use_node_caps ? Rational(1) + lambda * Rational(m - i) : Rational::infinity();
  }
  for (const auto& e : substrate.edges) {
    const int j = group_of(e.second);
    substrate.edge_capacity[e] =
        use_edge_caps ? Rational(1) + lambda * Rational(j) : Rational::infinity();
    substrate.edge_latency[e] = use_latency ? Rational(1) : Rational(0);
  }
  for (const auto& v : request.nodes) {
    const int i = g.request_registry.at(v);
    request.node_demand[v] = Rational(1) + lambda * Rational(m - i);
  }
  for (const auto& e : request.edges) {
    const int j = g.request_registry.at(e.second);
    request.edge_demand[e] = Rational(1) + lambda * Rational(j);
    request.edge_latency_bound[e] = use_latency ? Rational(1) : Rational::infinity();
  }

  if (g.instance.variant.node_placement) {
    for (const auto& v : request.nodes) {
      const int i = g.request_registry.at(v);
      std::set<NodeId> forbidden;
      for (const auto& u : substrate.nodes)
        if (group_of(u) != i) forbidden.insert(u);
      request.forbidden_nodes[v] = std::move(forbidden);
    }
  }
  if (g.instance.variant.routing) {
    for (const auto& e : request.edges) {
      const int i = g.request_registry.at(e.first);
      const int j = g.request_registry.at(e.second);
      std::set<EdgeId> forbidden;
      for (const auto& se : substrate.edges)
        if (group_of(se.first) != i || group_of(se.second) != j) forbidden.insert(se);
      request.forbidden_edges[e] = std::move(forbidden);
    }
  }

  validate_instance(g.instance);
  return g;
}

namespace detail {

// Canonical rank of the local assignment that alpha induces on clause i, as
// used in the substrate node ids.
inline int assignment_rank(const CnfFormula& f, int clause_index, const Assignment& alpha) {
  const Clause& c = f.clauses[clause_index - 1];
  const std::vector<int> vars = c.variables();
  const int k = static_cast<int>(vars.size());
  unsigned counter = 0, falsifier = 0;
  for (int j = 0; j < k; ++j) {
    auto it = alpha.find(vars[j]);
    if (it == alpha.end())
      throw Error(ErrorKind::Argument,
                  "assignment does not cover variable x" + std::to_string(vars[j]));
    if (it->second) counter |= 1u << (k - 1 - j);
  }
  for (int l : c.literals) {
    int j = static_cast<int>(std::find(vars.begin(), vars.end(), std::abs(l)) - vars.begin());
    if (l < 0) falsifier |= 1u << (k - 1 - j);
  }
  if (counter == falsifier)
    throw Error(ErrorKind::Argument,
                "assignment falsifies clause " + std::to_string(clause_index));
  return static_cast<int>(counter) + 1 - (counter > falsifier ? 1 : 0);
}

}  // namespace detail

// Mapping for a satisfying assignment: each request node goes to the substrate
// node agreeing with the assignment on its clause, each request edge to the
// single direct substrate edge between the chosen nodes.
inline Mapping encode_assignment(const GadgetArtifacts& g, const Assignment& alpha) {
  if (!evaluate(g.formula, alpha))
    throw Error(ErrorKind::Argument, "assignment does not satisfy the formula");
  Mapping m;
  const int clause_count = static_cast<int>(g.formula.clauses.size());
  for (int i = 1; i <= clause_count; ++i)
    m.node_map[request_node_id(i)] =
        substrate_node_id(i, detail::assignment_rank(g.formula, i, alpha));
  for (const auto& e : g.instance.request.edges) {
    EdgeId se{m.node_map.at(e.first), m.node_map.at(e.second)};
    if (!g.instance.substrate.has_edge(se))
      throw Error(ErrorKind::Internal,
                  "expected direct substrate edge " + edge_key(se) + " is missing");
    m.edge_map[e] = {se};
  }
  return m;
}

// Recovers a satisfying assignment from a mapping that places every request
// node in its own clause group and routes every edge over a single substrate
// edge. Clauses are processed in order and never overwrite an assigned
// variable; a contradiction here would mean the construction itself is broken.
inline Assignment decode_mapping(const GadgetArtifacts& g, const Mapping& m) {
  const int clause_count = static_cast<int>(g.formula.clauses.size());
  for (int i = 1; i <= clause_count; ++i) {
    const NodeId v = request_node_id(i);
    auto it = m.node_map.find(v);
    if (it == m.node_map.end())
      throw Error(ErrorKind::Reference, "mapping is missing request node '" + v + "'");
    auto reg = g.node_registry.find(it->second);
    if (reg == g.node_registry.end())
      throw Error(ErrorKind::Reference,
                  "mapped node '" + it->second + "' is not a gadget substrate node");
    if (reg->second.clause_index != i)
      throw Error(ErrorKind::Argument, "request node '" + v +
                                           "' is mapped outside its clause group (got group " +
                                           std::to_string(reg->second.clause_index) + ")");
  }
  for (const auto& e : g.instance.request.edges) {
    auto it = m.edge_map.find(e);
    if (it == m.edge_map.end())
      throw Error(ErrorKind::Reference, "mapping is missing request edge " + edge_key(e));
    if (it->second.size() != 1)
      throw Error(ErrorKind::Argument, "request edge " + edge_key(e) + " uses " +
                                           std::to_string(it->second.size()) +
                                           " substrate edges, expected exactly 1");
  }
  Assignment alpha;
  for (int i = 1; i <= clause_count; ++i) {
    const LocalAssignment& local = g.node_registry.at(m.node_map.at(request_node_id(i)));
    for (const auto& [var, value] : local.values) {
      auto [it, inserted] = alpha.emplace(var, value);
      if (!inserted && it->second != value)
        throw Error(ErrorKind::Internal, "contradictory values for x" + std::to_string(var) +
                                             " while decoding (construction bug)");
    }
  }
  for (int v = 1; v <= g.formula.num_literals; ++v) alpha.emplace(v, false);
  if (!evaluate(g.formula, alpha))
    throw Error(ErrorKind::Internal, "decoded assignment does not satisfy the formula");
  return alpha;
}

}  // namespace vnep
