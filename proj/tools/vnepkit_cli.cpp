// Command-line front door: generate instances from CNF formulas, solve and
// validate embeddings, emit IP models, decode mappings back to assignments,
// and cross-check the constructions against the brute-force SAT oracle.
//
// Exit codes: 0 success/feasible, 1 definitive negative answer
// (infeasible/unsat/disagreement), 2 usage or input error, 3 resource limit.
// Every command prints a single JSON report on stdout.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include <vnepkit/vnepkit.hpp>

namespace {

using vnep::Json;

bool log_enabled() {
  const char* env = std::getenv("VNEPKIT_LOG");
  return env != nullptr && *env != '\0';
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[vnepkit] " << msg << "\n";
}

void print_report(const Json& report) { std::cout << report.dump(2) << std::endl; }

int fail(const std::string& command, const std::string& kind, const std::string& message,
         int code = 2) {
  Json report;
  report["command"] = command;
  report["status"] = "error";
  report["error_kind"] = kind;
  report["message"] = message;
  print_report(report);
  return code;
}

const char* kind_name(vnep::ErrorKind k) {
  switch (k) {
    case vnep::ErrorKind::Argument: return "argument";
    case vnep::ErrorKind::Reference: return "reference";
    case vnep::ErrorKind::Model: return "model";
    case vnep::ErrorKind::Mapping: return "mapping";
    case vnep::ErrorKind::Parse: return "parse";
    case vnep::ErrorKind::ClauseSize: return "clause_size";
    case vnep::ErrorKind::Tautology: return "tautology";
    case vnep::ErrorKind::Overflow: return "overflow";
    case vnep::ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

vnep::Rational parse_rational_flag(const std::string& text, const std::string& flag) {
  auto r = vnep::Rational::try_parse(text);
  if (!r) throw vnep::Error(vnep::ErrorKind::Argument, flag + ": malformed rational '" + text + "'");
  return *r;
}

struct ApproxFlags {
  std::string alpha, beta, gamma;        // direct factors
  std::string alpha_eps, gamma_eps;      // factor = 2 - eps parameterization
};

std::optional<vnep::ApproxFactors> resolve_factors(const ApproxFlags& flags) {
  vnep::ApproxFactors f;
  bool any = false;
  if (!flags.alpha.empty() && !flags.alpha_eps.empty())
    throw vnep::Error(vnep::ErrorKind::Argument, "--alpha and --alpha-eps are mutually exclusive");
  if (!flags.gamma.empty() && !flags.gamma_eps.empty())
    throw vnep::Error(vnep::ErrorKind::Argument, "--gamma and --gamma-eps are mutually exclusive");
  if (!flags.alpha.empty()) { f.alpha = parse_rational_flag(flags.alpha, "--alpha"); any = true; }
  if (!flags.beta.empty()) { f.beta = parse_rational_flag(flags.beta, "--beta"); any = true; }
  if (!flags.gamma.empty()) { f.gamma = parse_rational_flag(flags.gamma, "--gamma"); any = true; }
  if (!flags.alpha_eps.empty()) {
    f.alpha = vnep::Rational(2) - parse_rational_flag(flags.alpha_eps, "--alpha-eps");
    any = true;
  }
  if (!flags.gamma_eps.empty()) {
    f.gamma = vnep::Rational(2) - parse_rational_flag(flags.gamma_eps, "--gamma-eps");
    any = true;
  }
  if (!any) return std::nullopt;
  return f;
}

Json factors_to_json(const std::optional<vnep::ApproxFactors>& f) {
  if (!f) return nullptr;
  Json j;
  j["alpha"] = vnep::rational_to_json(f->alpha);
  j["beta"] = vnep::rational_to_json(f->beta);
  j["gamma"] = vnep::rational_to_json(f->gamma);
  return j;
}

std::string registry_path_for(const std::string& out_path, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  const std::string suffix = ".json";
  if (out_path.size() > suffix.size() &&
      out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out_path.substr(0, out_path.size() - suffix.size()) + ".registry.json";
  return out_path + ".registry.json";
}

int cmd_generate(const std::string& cnf_path, const std::string& variant_code,
                 const ApproxFlags& approx_flags, const std::string& lambda_flag,
                 const std::string& out_path, const std::string& registry_flag) {
  auto variant = vnep::gadget_variant_from_code(variant_code);
  if (!variant)
    throw vnep::Error(vnep::ErrorKind::Argument,
                      "unknown variant '" + variant_code + "' (expected ve, en, vr, nr, nl)");
  vnep::CnfFormula formula = vnep::parse_dimacs(vnep::read_text_file(cnf_path));
  const auto occurring = vnep::occurring_variables(formula);
  if (static_cast<int>(occurring.size()) < formula.num_literals)
    log_line("formula declares " + std::to_string(formula.num_literals) + " literals but only " +
             std::to_string(occurring.size()) + " occur; unused indices are dropped");

  vnep::NormalizeResult normalized = vnep::normalize(formula);
  if (normalized.decomposed) {
    Json components = Json::array();
    for (const auto& comp : normalized.components) {
      Json c;
      c["clauses"] = vnep::formula_to_json(comp)["clauses"];
      c["dimacs"] = vnep::write_dimacs(comp);
      components.push_back(std::move(c));
    }
    Json report;
    report["command"] = "generate";
    report["status"] = "error";
    report["error_kind"] = "decomposable";
    report["message"] =
        "formula decomposes into literal-disjoint components; generate each component "
        "separately and combine the answers conjunctively";
    report["components"] = std::move(components);
    print_report(report);
    return 2;
  }

  std::optional<vnep::GadgetApprox> approx;
  if (!approx_flags.alpha_eps.empty() && !approx_flags.gamma_eps.empty())
    throw vnep::Error(vnep::ErrorKind::Argument,
                      "--alpha-eps and --gamma-eps are mutually exclusive");
  if (!approx_flags.alpha_eps.empty())
    approx = vnep::GadgetApprox{vnep::GadgetApprox::Kind::AlphaEps,
                                parse_rational_flag(approx_flags.alpha_eps, "--alpha-eps")};
  if (!approx_flags.gamma_eps.empty())
    approx = vnep::GadgetApprox{vnep::GadgetApprox::Kind::GammaEps,
                                parse_rational_flag(approx_flags.gamma_eps, "--gamma-eps")};
  std::optional<vnep::Rational> lambda;
  if (!lambda_flag.empty()) lambda = parse_rational_flag(lambda_flag, "--lambda");

  vnep::GadgetArtifacts g =
      vnep::instantiate_gadget(normalized.ordered, *variant, approx, lambda);

  const std::string registry_path = registry_path_for(out_path, registry_flag);
  vnep::write_text_file(out_path, vnep::instance_to_json(g.instance).dump(2) + "\n");
  vnep::write_text_file(registry_path, vnep::registry_to_json(g).dump(2) + "\n");

  Json report;
  report["command"] = "generate";
  report["status"] = "ok";
  report["variant"] = variant_code;
  report["substrate_nodes"] = g.instance.substrate.nodes.size();
  report["substrate_edges"] = g.instance.substrate.edges.size();
  report["request_nodes"] = g.instance.request.nodes.size();
  report["request_edges"] = g.instance.request.edges.size();
  report["lambda"] = vnep::rational_to_json(g.parameters.lambda);
  report["epsilon"] =
      g.parameters.epsilon ? vnep::rational_to_json(*g.parameters.epsilon) : Json(nullptr);
  report["alpha"] = g.parameters.alpha ? vnep::rational_to_json(*g.parameters.alpha) : Json(nullptr);
  report["gamma"] = g.parameters.gamma ? vnep::rational_to_json(*g.parameters.gamma) : Json(nullptr);
  report["instance_path"] = out_path;
  report["registry_path"] = registry_path;
  print_report(report);
  return 0;
}

int cmd_solve(const std::string& instance_path, const ApproxFlags& approx_flags,
              std::int64_t max_nodes, double max_time, const std::string& out_path) {
  vnep::VnepInstance inst =
      vnep::instance_from_json(vnep::parse_json(vnep::read_text_file(instance_path), "instance"));
  const auto factors = resolve_factors(approx_flags);
  vnep::SolveLimits limits;
  if (max_nodes > 0) limits.max_search_nodes = max_nodes;
  if (max_time > 0) limits.max_time_seconds = max_time;
  const vnep::SolveResult result = vnep::solve_decision(inst, factors, limits);

  Json report;
  report["command"] = "solve";
  report["status"] = vnep::to_string(result.status);
  report["factors"] = factors_to_json(factors);
  report["nodes_explored"] = result.stats.nodes_explored;
  report["paths_enumerated"] = result.stats.paths_enumerated;
  report["wall_seconds"] = result.stats.wall_seconds;
  if (result.mapping) {
    report["mapping"] = vnep::mapping_to_json(*result.mapping);
    if (!out_path.empty()) {
      vnep::write_text_file(out_path, vnep::mapping_to_json(*result.mapping).dump(2) + "\n");
      report["mapping_path"] = out_path;
    }
  }
  print_report(report);
  switch (result.status) {
    case vnep::SolveStatus::Feasible: return 0;
    case vnep::SolveStatus::Infeasible: return 1;
    case vnep::SolveStatus::ResourceLimit: return 3;
  }
  return 2;
}

int cmd_validate(const std::string& instance_path, const std::string& mapping_path,
                 const ApproxFlags& approx_flags) {
  vnep::VnepInstance inst =
      vnep::instance_from_json(vnep::parse_json(vnep::read_text_file(instance_path), "instance"));
  vnep::Mapping mapping =
      vnep::mapping_from_json(vnep::parse_json(vnep::read_text_file(mapping_path), "mapping"));
  const auto factors = resolve_factors(approx_flags);
  const vnep::CheckReport report = vnep::verify_certificate_report(inst, mapping, factors);

  Json out;
  out["command"] = "validate";
  out["status"] = report.ok ? "feasible" : "infeasible";
  out["ok"] = report.ok;
  out["factors"] = factors_to_json(factors);
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"kind", vnep::to_string(v.kind)},
                              {"element", v.element},
                              {"detail", v.detail}});
  out["violations"] = std::move(violations);
  print_report(out);
  return report.ok ? 0 : 1;
}

int cmd_emit_ip(const std::string& instance_path, const std::string& out_path) {
  vnep::VnepInstance inst =
      vnep::instance_from_json(vnep::parse_json(vnep::read_text_file(instance_path), "instance"));
  const std::string lp = vnep::emit_ip(inst);
  vnep::write_text_file(out_path, lp);

  auto count_rows = [&lp](const std::string& prefix) {
    size_t count = 0, pos = 0;
    const std::string needle = "\n " + prefix;
    while ((pos = lp.find(needle, pos)) != std::string::npos) {
      ++count;
      pos += needle.size();
    }
    return count;
  };
  Json rows;
  rows["c2"] = count_rows("c2_");
  rows["c3"] = count_rows("c3_");
  rows["c4"] = count_rows("c4_");
  rows["c5"] = count_rows("c5_");
  rows["c6"] = count_rows("c6_");
  rows["c7"] = count_rows("c7_");
  rows["c8star"] = count_rows("c8star_");

  Json report;
  report["command"] = "emit_ip";
  report["status"] = "ok";
  report["out_path"] = out_path;
  report["variables"] = 1 + inst.request.nodes.size() * inst.substrate.nodes.size() +
                        inst.request.edges.size() * inst.substrate.edges.size();
  report["rows"] = std::move(rows);
  print_report(report);
  return 0;
}

int cmd_decode(const std::string& instance_path, const std::string& registry_path,
               const std::string& mapping_path) {
  vnep::VnepInstance inst =
      vnep::instance_from_json(vnep::parse_json(vnep::read_text_file(instance_path), "instance"));
  vnep::GadgetArtifacts g = vnep::registry_from_json(
      vnep::parse_json(vnep::read_text_file(registry_path), "registry"), std::move(inst));
  vnep::Mapping mapping =
      vnep::mapping_from_json(vnep::parse_json(vnep::read_text_file(mapping_path), "mapping"));
  const vnep::Assignment alpha = vnep::decode_mapping(g, mapping);

  std::string v_line = "v";
  Json assignment = Json::object();
  for (const auto& [var, value] : alpha) {
    v_line += value ? " " + std::to_string(var) : " -" + std::to_string(var);
    assignment[std::to_string(var)] = value;
  }
  v_line += " 0";
  log_line(v_line);

  Json report;
  report["command"] = "decode";
  report["status"] = "ok";
  report["assignment"] = std::move(assignment);
  report["v_line"] = v_line;
  report["satisfies"] = true;  // decode_mapping rejects non-satisfying results
  print_report(report);
  return 0;
}

int cmd_crosscheck(int n, int m, int samples, std::uint64_t seed,
                   const std::string& variants_flag) {
  std::vector<vnep::GadgetVariant> variants;
  {
    std::string token;
    std::istringstream in(variants_flag);
    while (std::getline(in, token, ',')) {
      auto v = vnep::gadget_variant_from_code(token);
      if (!v) throw vnep::Error(vnep::ErrorKind::Argument, "unknown variant '" + token + "'");
      variants.push_back(*v);
    }
  }
  if (variants.empty())
    throw vnep::Error(vnep::ErrorKind::Argument, "no variants selected");

  Json disagreements = Json::array();
  std::map<std::string, int> agree_count;
  for (const auto v : variants) agree_count[vnep::variant_code(v)] = 0;

  for (int s = 0; s < samples; ++s) {
    const vnep::CnfFormula formula = vnep::random_formula(n, m, seed + static_cast<std::uint64_t>(s));
    const bool satisfiable = vnep::sat_oracle(formula).has_value();
    // Decomposable formulas are handled per component and combined
    // conjunctively, matching how the constructions are meant to be used.
    std::vector<vnep::CnfFormula> parts;
    vnep::NormalizeResult norm = vnep::normalize(formula);
    if (norm.decomposed)
      parts = norm.components;
    else
      parts.push_back(norm.ordered);
    for (const auto variant : variants) {
      bool embedding_exists = true;
      for (const auto& part : parts) {
        const vnep::GadgetArtifacts g = vnep::instantiate_gadget(part, variant);
        const vnep::SolveResult r = vnep::solve_decision(g.instance);
        if (r.status == vnep::SolveStatus::ResourceLimit)
          throw vnep::Error(vnep::ErrorKind::Argument, "resource limit hit during crosscheck");
        embedding_exists = embedding_exists && r.status == vnep::SolveStatus::Feasible;
        if (!embedding_exists) break;
      }
      if (embedding_exists == satisfiable) {
        ++agree_count[vnep::variant_code(variant)];
      } else {
        Json d;
        d["formula_index"] = s;
        d["variant"] = vnep::variant_code(variant);
        d["sat_oracle"] = satisfiable;
        d["solver_feasible"] = embedding_exists;
        d["dimacs"] = vnep::write_dimacs(formula);
        disagreements.push_back(std::move(d));
      }
    }
    if (log_enabled() && (s + 1) % 50 == 0)
      log_line("crosscheck " + std::to_string(s + 1) + "/" + std::to_string(samples));
  }

  Json report;
  report["command"] = "crosscheck";
  report["status"] = disagreements.empty() ? "ok" : "disagreement";
  report["n"] = n;
  report["m"] = m;
  report["samples"] = samples;
  report["seed"] = seed;
  Json agreements = Json::object();
  for (const auto& [code, count] : agree_count) agreements[code] = count;
  report["agreements"] = std::move(agreements);
  report["disagreements"] = disagreements;
  print_report(report);
  return disagreements.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual network embedding toolkit"};
  app.require_subcommand(1);

  std::string cnf_path, instance_path, mapping_path, registry_path, out_path, variant_code;
  std::string lambda_flag, variants_flag = "ve,en,vr,nr,nl";
  ApproxFlags approx;
  std::int64_t max_nodes = 0;
  double max_time = 0.0;
  int n = 5, m = 5, samples = 200;
  std::uint64_t seed = 0;

  auto* generate = app.add_subcommand("generate", "build an instance from a 3-SAT formula");
  generate->add_option("--cnf", cnf_path, "DIMACS CNF input")->required();
  generate->add_option("--variant", variant_code, "one of ve, en, vr, nr, nl")->required();
  generate->add_option("--alpha-eps", approx.alpha_eps, "node-capacity hardness epsilon");
  generate->add_option("--gamma-eps", approx.gamma_eps, "latency hardness epsilon");
  generate->add_option("--lambda", lambda_flag, "override the capacity slack parameter");
  generate->add_option("--out", out_path, "instance JSON output path")->required();
  generate->add_option("--registry", registry_path, "registry side-file path");

  auto* solve = app.add_subcommand("solve", "decide feasibility of an instance");
  solve->add_option("--instance", instance_path, "instance JSON")->required();
  solve->add_option("--alpha", approx.alpha, "node capacity factor (>= 1)");
  solve->add_option("--beta", approx.beta, "edge capacity factor (>= 1)");
  solve->add_option("--gamma", approx.gamma, "latency factor (>= 1)");
  solve->add_option("--alpha-eps", approx.alpha_eps, "use alpha = 2 - eps");
  solve->add_option("--gamma-eps", approx.gamma_eps, "use gamma = 2 - eps");
  solve->add_option("--max-nodes", max_nodes, "search node limit");
  solve->add_option("--max-time", max_time, "time limit in seconds");
  solve->add_option("--out", out_path, "mapping JSON output path");

  auto* validate = app.add_subcommand("validate", "check a mapping against an instance");
  validate->add_option("--instance", instance_path, "instance JSON")->required();
  validate->add_option("--mapping", mapping_path, "mapping JSON")->required();
  validate->add_option("--alpha", approx.alpha, "node capacity factor");
  validate->add_option("--beta", approx.beta, "edge capacity factor");
  validate->add_option("--gamma", approx.gamma, "latency factor");
  validate->add_option("--alpha-eps", approx.alpha_eps, "use alpha = 2 - eps");
  validate->add_option("--gamma-eps", approx.gamma_eps, "use gamma = 2 - eps");

  auto* emit = app.add_subcommand("emit-ip", "write the decision integer program in LP format");
  emit->add_option("--instance", instance_path, "instance JSON")->required();
  emit->add_option("--out", out_path, "LP output path")->required();

  auto* decode = app.add_subcommand("decode", "recover an assignment from a mapping");
  decode->add_option("--instance", instance_path, "instance JSON")->required();
  decode->add_option("--registry", registry_path, "registry side-file")->required();
  decode->add_option("--mapping", mapping_path, "mapping JSON")->required();

  auto* crosscheck =
      app.add_subcommand("crosscheck", "compare the SAT oracle with solver answers on instances");
  crosscheck->add_option("--n", n, "number of literals (default 5)");
  crosscheck->add_option("--m", m, "number of clauses (default 5)");
  crosscheck->add_option("--samples", samples, "number of sampled formulas (default 200)");
  crosscheck->add_option("--seed", seed, "random seed");
  crosscheck->add_option("--variants", variants_flag, "comma-separated variant list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::string command = app.get_subcommands().empty()
                              ? "unknown"
                              : app.get_subcommands().front()->get_name();
    return fail(command, "usage", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (generate->parsed())
      return cmd_generate(cnf_path, variant_code, approx, lambda_flag, out_path, registry_path);
    if (solve->parsed()) return cmd_solve(instance_path, approx, max_nodes, max_time, out_path);
    if (validate->parsed()) return cmd_validate(instance_path, mapping_path, approx);
    if (emit->parsed()) return cmd_emit_ip(instance_path, out_path);
    if (decode->parsed()) return cmd_decode(instance_path, registry_path, mapping_path);
    if (crosscheck->parsed()) return cmd_crosscheck(n, m, samples, seed, variants_flag);
  } catch (const vnep::Error& e) {
    return fail(command, kind_name(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(command, "internal", e.what());
  }
  return 2;
}
