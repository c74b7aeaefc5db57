#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vnepkit/json_io.hpp>

using vnep::Json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;

  Json json() const { return Json::parse(out); }
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(VNEPKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Scratch directory shared by the CLI tests of one run.
const std::filesystem::path& scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("vnepkit_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string path_in_scratch(const std::string& name) { return (scratch_dir() / name).string(); }

const char* kWorkedCnf = "p cnf 4 3\n1 2 3 0\n-1 2 4 0\n2 -3 4 0\n";

}  // namespace

TEST_CASE("generate reports the construction statistics", "[cli]") {
  const auto cnf = write_scratch("worked.cnf", kWorkedCnf);
  const auto out = path_in_scratch("worked_ve.json");
  const auto result = run_cli("generate --cnf " + cnf + " --variant ve --out " + out);
  REQUIRE(result.exit_code == 0);
  const Json report = result.json();
  CHECK(report.at("substrate_nodes") == 21);
  CHECK(report.at("substrate_edges") == 37);
  CHECK(report.at("request_nodes") == 3);
  CHECK(report.at("request_edges") == 3);
  CHECK(report.at("lambda") == "1/6");
  CHECK(std::filesystem::exists(out));
  CHECK(std::filesystem::exists(path_in_scratch("worked_ve.registry.json")));
}

TEST_CASE("generate rejects unknown variants and decomposable formulas", "[cli]") {
  const auto cnf = write_scratch("worked2.cnf", kWorkedCnf);
  SECTION("unknown variant") {
    const auto result =
        run_cli("generate --cnf " + cnf + " --variant zz --out " + path_in_scratch("zz.json"));
    CHECK(result.exit_code == 2);
    CHECK(result.json().at("status") == "error");
  }
  SECTION("decomposable formula lists its components") {
    const auto decomposable = write_scratch("decomp.cnf", "p cnf 4 2\n1 2 0\n3 4 0\n");
    const auto result = run_cli("generate --cnf " + decomposable + " --variant ve --out " +
                                path_in_scratch("decomp.json"));
    CHECK(result.exit_code == 2);
    const Json report = result.json();
    CHECK(report.at("error_kind") == "decomposable");
    CHECK(report.at("components").size() == 2);
  }
}

TEST_CASE("generate solve decode round trip", "[cli]") {
  const auto cnf = write_scratch("roundtrip.cnf", kWorkedCnf);
  const auto instance = path_in_scratch("rt_instance.json");
  const auto mapping = path_in_scratch("rt_mapping.json");
  REQUIRE(run_cli("generate --cnf " + cnf + " --variant ve --out " + instance).exit_code == 0);

  const auto solved = run_cli("solve --instance " + instance + " --out " + mapping);
  REQUIRE(solved.exit_code == 0);
  CHECK(solved.json().at("status") == "feasible");
  REQUIRE(std::filesystem::exists(mapping));

  const auto validated = run_cli("validate --instance " + instance + " --mapping " + mapping);
  CHECK(validated.exit_code == 0);
  CHECK(validated.json().at("ok") == true);

  const auto decoded = run_cli("decode --instance " + instance + " --registry " +
                               path_in_scratch("rt_instance.registry.json") + " --mapping " +
                               mapping);
  REQUIRE(decoded.exit_code == 0);
  const Json report = decoded.json();
  CHECK(report.at("satisfies") == true);
  const std::string v_line = report.at("v_line");
  CHECK(v_line.rfind("v ", 0) == 0);
  CHECK(v_line.find(" 0") == v_line.size() - 2);
  // The decoded assignment satisfies the worked formula.
  const vnep::CnfFormula f = vnep::parse_dimacs(kWorkedCnf);
  vnep::Assignment alpha;
  for (const auto& [var, value] : report.at("assignment").items())
    alpha[std::stoi(var)] = value.get<bool>();
  CHECK(vnep::evaluate(f, alpha));
}

TEST_CASE("solve distinguishes infeasible and resource-limited runs", "[cli]") {
  const auto unsat_cnf = write_scratch("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  const auto instance = path_in_scratch("unsat_instance.json");
  REQUIRE(run_cli("generate --cnf " + unsat_cnf + " --variant ve --out " + instance).exit_code ==
          0);
  SECTION("unsatisfiable formula gives exit 1") {
    const auto result = run_cli("solve --instance " + instance);
    CHECK(result.exit_code == 1);
    CHECK(result.json().at("status") == "infeasible");
  }
  SECTION("tiny node budget gives exit 3") {
    const auto sat_cnf = write_scratch("sat.cnf", kWorkedCnf);
    const auto sat_instance = path_in_scratch("sat_instance.json");
    REQUIRE(run_cli("generate --cnf " + sat_cnf + " --variant ve --out " + sat_instance)
                .exit_code == 0);
    const auto result = run_cli("solve --instance " + sat_instance + " --max-nodes 1");
    CHECK(result.exit_code == 3);
    CHECK(result.json().at("status") == "resource_limit");
  }
}

TEST_CASE("validate flags corrupted mappings", "[cli]") {
  const auto cnf = write_scratch("validate.cnf", kWorkedCnf);
  const auto instance = path_in_scratch("val_instance.json");
  const auto mapping = path_in_scratch("val_mapping.json");
  REQUIRE(run_cli("generate --cnf " + cnf + " --variant ve --out " + instance).exit_code == 0);
  REQUIRE(run_cli("solve --instance " + instance + " --out " + mapping).exit_code == 0);

  Json m = Json::parse(vnep::read_text_file(mapping));
  // Reroute one edge over an empty path although the endpoints differ.
  m["edge_map"]["v1->v2"] = Json::array();
  const auto broken = write_scratch("val_mapping_broken.json", m.dump());
  const auto result = run_cli("validate --instance " + instance + " --mapping " + broken);
  CHECK(result.exit_code == 1);
  const Json report = result.json();
  CHECK(report.at("ok") == false);
  CHECK_FALSE(report.at("violations").empty());
}

TEST_CASE("emit-ip writes the model and reports counts", "[cli]") {
  const auto cnf = write_scratch("emit.cnf", kWorkedCnf);
  const auto instance = path_in_scratch("emit_instance.json");
  const auto lp = path_in_scratch("emit_model.lp");
  REQUIRE(run_cli("generate --cnf " + cnf + " --variant ve --out " + instance).exit_code == 0);
  const auto result = run_cli("emit-ip --instance " + instance + " --out " + lp);
  REQUIRE(result.exit_code == 0);
  const Json report = result.json();
  CHECK(report.at("variables") == 1 + 3 * 21 + 3 * 37);
  CHECK(report.at("rows").at("c2") == 3);
  const std::string text = vnep::read_text_file(lp);
  CHECK(text.rfind("Maximize", 0) == 0);
}

TEST_CASE("crosscheck agrees and is reproducible", "[cli]") {
  const auto a = run_cli("crosscheck --n 4 --m 3 --samples 12 --seed 7");
  REQUIRE(a.exit_code == 0);
  const Json report = a.json();
  CHECK(report.at("status") == "ok");
  CHECK(report.at("agreements").at("ve") == 12);
  CHECK(report.at("disagreements").empty());

  const auto b = run_cli("crosscheck --n 4 --m 3 --samples 12 --seed 7");
  CHECK(b.out == a.out);

  SECTION("zero samples succeed with an empty report") {
    const auto empty = run_cli("crosscheck --samples 0");
    CHECK(empty.exit_code == 0);
    CHECK(empty.json().at("status") == "ok");
  }
}

TEST_CASE("approximation flags flow through generate and solve", "[cli]") {
  const auto cnf = write_scratch("approx.cnf", kWorkedCnf);
  const auto alpha_instance = path_in_scratch("alpha_instance.json");
  const auto generated =
      run_cli("generate --cnf " + cnf + " --variant ve --alpha-eps 1/10 --out " + alpha_instance);
  REQUIRE(generated.exit_code == 0);
  const Json report = generated.json();
  CHECK(report.at("lambda") == "1/120");
  CHECK(report.at("epsilon") == "1/10");
  CHECK(report.at("alpha") == "19/10");

  const auto solved = run_cli("solve --instance " + alpha_instance + " --alpha 19/10");
  REQUIRE(solved.exit_code == 0);
  CHECK(solved.json().at("factors").at("alpha") == "19/10");

  const auto gamma_instance = path_in_scratch("gamma_instance.json");
  const auto gamma =
      run_cli("generate --cnf " + cnf + " --variant nl --gamma-eps 1/10 --out " + gamma_instance);
  REQUIRE(gamma.exit_code == 0);
  CHECK(gamma.json().at("gamma") == "19/10");
  CHECK(run_cli("solve --instance " + gamma_instance + " --gamma-eps 1/10").exit_code == 0);

  SECTION("mutually exclusive factor forms are rejected") {
    const auto conflict =
        run_cli("solve --instance " + alpha_instance + " --alpha 2 --alpha-eps 1/10");
    CHECK(conflict.exit_code == 2);
  }
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
  CHECK(run_cli("solve").exit_code == 2);                     // missing --instance
  CHECK(run_cli("solve --instance /nonexistent").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code != 0);
}
