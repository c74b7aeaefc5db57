#pragma once

// Versioned JSON formats for instances, mappings and gadget registries.
// Rationals serialize as integers or "p/q" strings, infinity as "inf";
// node ids are strings, edges two-element arrays, and edge-keyed objects use
// "u->v" keys.

#include <fstream>
#include <json.hpp>

#include "vnepkit/gadget.hpp"
#include "vnepkit/model.hpp"

namespace vnep {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

inline Json rational_to_json(const Rational& r) {
  if (r.is_infinite()) return "inf";
  if (r.den() == 1) return r.num();
  return r.to_string();
}

inline Rational rational_from_json(const Json& j, const std::string& context) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw Error(ErrorKind::Parse, context + ": expected an integer or a \"p/q\" string");
}

namespace detail {

inline EdgeId edge_from_key(const std::string& key, const std::string& context) {
  const size_t pos = key.find("->");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= key.size())
    throw Error(ErrorKind::Parse, context + ": malformed edge key '" + key + "'");
  return {key.substr(0, pos), key.substr(pos + 2)};
}

inline EdgeId edge_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw Error(ErrorKind::Parse, context + ": an edge must be a 2-element array of node ids");
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

inline Json edge_to_json(const EdgeId& e) { return Json::array({e.first, e.second}); }

inline const Json& require(const Json& j, const char* key, int, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(ErrorKind::Parse, context + ": missing key '" + std::string(key) + "'");
  return *it;
}

inline void check_version(const Json& j, const std::string& context) {
  auto it = j.find("format_version");
  if (it == j.end() || !it->is_number_integer() || it->get<int>() != kFormatVersion)
    throw Error(ErrorKind::Parse, context + ": missing or unsupported format_version");
}

}  // namespace detail

inline Json instance_to_json(const VnepInstance& inst) {
  Json sub;
  sub["nodes"] = Json::array();
  for (const auto& u : inst.substrate.nodes) sub["nodes"].push_back(u);
  sub["edges"] = Json::array();
  for (const auto& e : inst.substrate.edges) sub["edges"].push_back(detail::edge_to_json(e));
  sub["node_capacity"] = Json::object();
  for (const auto& [u, c] : inst.substrate.node_capacity)
    sub["node_capacity"][u] = rational_to_json(c);
  sub["edge_capacity"] = Json::object();
  for (const auto& [e, c] : inst.substrate.edge_capacity)
    sub["edge_capacity"][edge_key(e)] = rational_to_json(c);
  sub["edge_latency"] = Json::object();
  for (const auto& [e, l] : inst.substrate.edge_latency)
    sub["edge_latency"][edge_key(e)] = rational_to_json(l);

  Json req;
  req["nodes"] = Json::array();
  for (const auto& i : inst.request.nodes) req["nodes"].push_back(i);
  req["edges"] = Json::array();
  for (const auto& e : inst.request.edges) req["edges"].push_back(detail::edge_to_json(e));
  req["node_demand"] = Json::object();
  for (const auto& [i, d] : inst.request.node_demand) req["node_demand"][i] = rational_to_json(d);
  req["edge_demand"] = Json::object();
  for (const auto& [e, d] : inst.request.edge_demand)
    req["edge_demand"][edge_key(e)] = rational_to_json(d);
  req["edge_latency_bound"] = Json::object();
  for (const auto& [e, b] : inst.request.edge_latency_bound)
    req["edge_latency_bound"][edge_key(e)] = rational_to_json(b);
  req["forbidden_nodes"] = Json::object();
  for (const auto& [i, fs] : inst.request.forbidden_nodes) {
    if (fs.empty()) continue;
    Json arr = Json::array();
    for (const auto& u : fs) arr.push_back(u);
    req["forbidden_nodes"][i] = std::move(arr);
  }
  req["forbidden_edges"] = Json::object();
  for (const auto& [e, fs] : inst.request.forbidden_edges) {
    if (fs.empty()) continue;
    Json arr = Json::array();
    for (const auto& se : fs) arr.push_back(detail::edge_to_json(se));
    req["forbidden_edges"][edge_key(e)] = std::move(arr);
  }

  Json variant;
  variant["node_capacities"] = inst.variant.node_capacities;
  variant["edge_capacities"] = inst.variant.edge_capacities;
  variant["node_placement"] = inst.variant.node_placement;
  variant["routing"] = inst.variant.routing;
  variant["latency"] = inst.variant.latency;

  Json out;
  out["format_version"] = kFormatVersion;
  out["substrate"] = std::move(sub);
  out["request"] = std::move(req);
  out["variant"] = std::move(variant);
  return out;
}

inline VnepInstance instance_from_json(const Json& j) {
  detail::check_version(j, "instance");
  if (!j.contains("substrate") || !j.contains("request") || !j.contains("variant"))
    throw Error(ErrorKind::Parse, "instance: expected keys substrate, request, variant");
  VnepInstance inst;
  const Json& sub = j["substrate"];
  for (const auto& u : detail::require(sub, "nodes", 0, "substrate"))
    inst.substrate.nodes.insert(u.get<std::string>());
  for (const auto& e : detail::require(sub, "edges", 0, "substrate"))
    inst.substrate.edges.insert(detail::edge_from_json(e, "substrate.edges"));
  for (const auto& [key, value] : detail::require(sub, "node_capacity", 0, "substrate").items())
    inst.substrate.node_capacity[key] = rational_from_json(value, "node_capacity." + key);
  for (const auto& [key, value] : detail::require(sub, "edge_capacity", 0, "substrate").items())
    inst.substrate.edge_capacity[detail::edge_from_key(key, "edge_capacity")] =
        rational_from_json(value, "edge_capacity." + key);
  for (const auto& [key, value] : detail::require(sub, "edge_latency", 0, "substrate").items())
    inst.substrate.edge_latency[detail::edge_from_key(key, "edge_latency")] =
        rational_from_json(value, "edge_latency." + key);

  const Json& req = j["request"];
  for (const auto& i : detail::require(req, "nodes", 0, "request"))
    inst.request.nodes.insert(i.get<std::string>());
  for (const auto& e : detail::require(req, "edges", 0, "request"))
    inst.request.edges.insert(detail::edge_from_json(e, "request.edges"));
  for (const auto& [key, value] : detail::require(req, "node_demand", 0, "request").items())
    inst.request.node_demand[key] = rational_from_json(value, "node_demand." + key);
  for (const auto& [key, value] : detail::require(req, "edge_demand", 0, "request").items())
    inst.request.edge_demand[detail::edge_from_key(key, "edge_demand")] =
        rational_from_json(value, "edge_demand." + key);
  for (const auto& [key, value] :
       detail::require(req, "edge_latency_bound", 0, "request").items())
    inst.request.edge_latency_bound[detail::edge_from_key(key, "edge_latency_bound")] =
        rational_from_json(value, "edge_latency_bound." + key);
  if (req.contains("forbidden_nodes"))
    for (const auto& [key, value] : req["forbidden_nodes"].items()) {
      std::set<NodeId> fs;
      for (const auto& u : value) fs.insert(u.get<std::string>());
      inst.request.forbidden_nodes[key] = std::move(fs);
    }
  if (req.contains("forbidden_edges"))
    for (const auto& [key, value] : req["forbidden_edges"].items()) {
      std::set<EdgeId> fs;
      for (const auto& e : value) fs.insert(detail::edge_from_json(e, "forbidden_edges"));
      inst.request.forbidden_edges[detail::edge_from_key(key, "forbidden_edges")] = std::move(fs);
    }

  const Json& variant = j["variant"];
  auto flag = [&variant](const char* name) {
    auto it = variant.find(name);
    if (it == variant.end() || !it->is_boolean())
      throw Error(ErrorKind::Parse, std::string("variant: missing boolean '") + name + "'");
    return it->get<bool>();
  };
  inst.variant.node_capacities = flag("node_capacities");
  inst.variant.edge_capacities = flag("edge_capacities");
  inst.variant.node_placement = flag("node_placement");
  inst.variant.routing = flag("routing");
  inst.variant.latency = flag("latency");

  validate_instance(inst);
  return inst;
}

inline Json mapping_to_json(const Mapping& m) {
  Json node_map = Json::object();
  for (const auto& [i, u] : m.node_map) node_map[i] = u;
  Json edge_map = Json::object();
  for (const auto& [e, path] : m.edge_map) {
    Json arr = Json::array();
    for (const auto& se : path) arr.push_back(detail::edge_to_json(se));
    edge_map[edge_key(e)] = std::move(arr);
  }
  Json out;
  out["format_version"] = kFormatVersion;
  out["node_map"] = std::move(node_map);
  out["edge_map"] = std::move(edge_map);
  return out;
}

inline Mapping mapping_from_json(const Json& j) {
  detail::check_version(j, "mapping");
  Mapping m;
  for (const auto& [i, u] : detail::require(j, "node_map", 0, "mapping").items()) {
    if (!u.is_string()) throw Error(ErrorKind::Parse, "node_map values must be node ids");
    m.node_map[i] = u.get<std::string>();
  }
  for (const auto& [key, path] : detail::require(j, "edge_map", 0, "mapping").items()) {
    std::vector<EdgeId> edges;
    for (const auto& e : path) edges.push_back(detail::edge_from_json(e, "edge_map"));
    m.edge_map[detail::edge_from_key(key, "edge_map")] = std::move(edges);
  }
  return m;
}

inline Json formula_to_json(const CnfFormula& f) {
  Json clauses = Json::array();
  for (const auto& c : f.clauses) clauses.push_back(c.literals);
  Json out;
  out["num_literals"] = f.num_literals;
  out["clauses"] = std::move(clauses);
  return out;
}

inline CnfFormula formula_from_json(const Json& j) {
  if (!j.contains("num_literals") || !j.contains("clauses"))
    throw Error(ErrorKind::Parse, "formula: expected num_literals and clauses");
  std::vector<std::vector<int>> clauses;
  for (const auto& c : j["clauses"]) clauses.push_back(c.get<std::vector<int>>());
  return make_formula(j["num_literals"].get<int>(), clauses);
}

// Registry side-file: enough context to decode mappings on a generated
// instance without re-running the construction.
inline Json registry_to_json(const GadgetArtifacts& g) {
  Json params;
  params["lambda"] = rational_to_json(g.parameters.lambda);
  params["epsilon"] =
      g.parameters.epsilon ? rational_to_json(*g.parameters.epsilon) : Json(nullptr);
  params["alpha"] = g.parameters.alpha ? rational_to_json(*g.parameters.alpha) : Json(nullptr);
  params["gamma"] = g.parameters.gamma ? rational_to_json(*g.parameters.gamma) : Json(nullptr);

  Json node_registry = Json::object();
  for (const auto& [id, local] : g.node_registry) {
    Json values = Json::object();
    for (const auto& [var, value] : local.values) values[std::to_string(var)] = value;
    node_registry[id] = Json{{"clause", local.clause_index}, {"values", std::move(values)}};
  }
  Json request_registry = Json::object();
  for (const auto& [id, clause] : g.request_registry) request_registry[id] = clause;

  Json out;
  out["format_version"] = kFormatVersion;
  out["variant"] = variant_code(g.variant);
  out["parameters"] = std::move(params);
  out["formula"] = formula_to_json(g.formula);
  out["node_registry"] = std::move(node_registry);
  out["request_registry"] = std::move(request_registry);
  return out;
}

inline GadgetArtifacts registry_from_json(const Json& j, VnepInstance instance) {
  detail::check_version(j, "registry");
  GadgetArtifacts g;
  g.instance = std::move(instance);
  auto variant =
      gadget_variant_from_code(detail::require(j, "variant", 0, "registry").get<std::string>());
  if (!variant) throw Error(ErrorKind::Parse, "registry: unknown variant code");
  g.variant = *variant;
  g.formula = formula_from_json(detail::require(j, "formula", 0, "registry"));
  const Json& params = detail::require(j, "parameters", 0, "registry");
  g.parameters.lambda = rational_from_json(detail::require(params, "lambda", 0, "parameters"),
                                           "parameters.lambda");
  for (const char* name : {"epsilon", "alpha", "gamma"}) {
    if (!params.contains(name) || params[name].is_null()) continue;
    Rational value = rational_from_json(params[name], std::string("parameters.") + name);
    if (std::string(name) == "epsilon") g.parameters.epsilon = value;
    if (std::string(name) == "alpha") g.parameters.alpha = value;
    if (std::string(name) == "gamma") g.parameters.gamma = value;
  }
  for (const auto& [id, entry] : detail::require(j, "node_registry", 0, "registry").items()) {
    LocalAssignment local;
    local.clause_index = detail::require(entry, "clause", 0, "node_registry").get<int>();
    for (const auto& [var, value] : detail::require(entry, "values", 0, "node_registry").items())
      local.values[std::stoi(var)] = value.get<bool>();
    if (!g.instance.substrate.has_node(id))
      throw Error(ErrorKind::Parse, "registry names unknown substrate node '" + id + "'");
    g.node_registry[id] = std::move(local);
  }
  for (const auto& [id, clause] : detail::require(j, "request_registry", 0, "registry").items()) {
    if (!g.instance.request.has_node(id))
      throw Error(ErrorKind::Parse, "registry names unknown request node '" + id + "'");
    g.request_registry[id] = clause.get<int>();
  }
  return g;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Argument, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Argument, "cannot write '" + path + "'");
  out << content;
}

inline Json parse_json(const std::string& text, const std::string& context) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::Parse, context + ": invalid JSON");
  return j;
}

}  // namespace vnep
