#include <catch2/catch_amalgamated.hpp>
#include <vnepkit/model.hpp>

using namespace vnep;

namespace {

VnepInstance tiny_instance() {
  VnepInstance inst;
  inst.variant = VariantSpec::ve();
  for (const char* u : {"u0", "u1", "u2"}) {
    inst.substrate.nodes.insert(u);
    inst.substrate.node_capacity[u] = Rational(2);
  }
  EdgeId e{"u0", "u1"};
  inst.substrate.edges.insert(e);
  inst.substrate.edge_capacity[e] = Rational(1);
  inst.substrate.edge_latency[e] = Rational(0);
  inst.request.nodes.insert("i");
  inst.request.node_demand["i"] = Rational(1);
  return inst;
}

}  // namespace

TEST_CASE("variant constants and subset relation", "[model]") {
  CHECK(VariantSpec::ve().display_name() == "<VE|->");
  CHECK(VariantSpec::en().display_name() == "<E|N>");
  CHECK(VariantSpec::vr().display_name() == "<V|R>");
  CHECK(VariantSpec::nr().display_name() == "<-|NR>");
  CHECK(VariantSpec::nl().display_name() == "<-|NL>");
  CHECK(VariantSpec::none().subset_of(VariantSpec::ve()));
  CHECK(VariantSpec::ve().subset_of(VariantSpec::all()));
  CHECK_FALSE(VariantSpec::nl().subset_of(VariantSpec::nr()));
}

TEST_CASE("instance validation accepts the normalized form", "[model]") {
  CHECK_NOTHROW(validate_instance(tiny_instance()));
}

TEST_CASE("instance validation rejects broken graphs", "[model]") {
  SECTION("edge endpoint missing") {
    auto inst = tiny_instance();
    inst.substrate.edges.insert({"u0", "zz"});
    inst.substrate.edge_capacity[{"u0", "zz"}] = Rational(1);
    inst.substrate.edge_latency[{"u0", "zz"}] = Rational(0);
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
  SECTION("self loop") {
    auto inst = tiny_instance();
    inst.substrate.edges.insert({"u0", "u0"});
    inst.substrate.edge_capacity[{"u0", "u0"}] = Rational(1);
    inst.substrate.edge_latency[{"u0", "u0"}] = Rational(0);
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
  SECTION("negative capacity") {
    auto inst = tiny_instance();
    inst.substrate.node_capacity["u0"] = Rational(-1);
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
  SECTION("infinite latency") {
    auto inst = tiny_instance();
    inst.substrate.edge_latency[{"u0", "u1"}] = Rational::infinity();
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
  SECTION("missing capacity entry") {
    auto inst = tiny_instance();
    inst.substrate.node_capacity.erase("u2");
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
  SECTION("node id containing the edge-key separator") {
    auto inst = tiny_instance();
    inst.substrate.nodes.insert("a->b");
    inst.substrate.node_capacity["a->b"] = Rational(1);
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
}

TEST_CASE("instance validation enforces the disabled-flag normalization", "[model]") {
  SECTION("finite capacity with node capacities disabled") {
    auto inst = tiny_instance();
    inst.variant = VariantSpec::en();  // node capacities off
    inst.request.forbidden_nodes["i"] = {};
    CHECK_THROWS_AS(validate_instance(inst), Error);
    for (auto& [u, c] : inst.substrate.node_capacity) c = Rational::infinity();
    CHECK_NOTHROW(validate_instance(inst));
  }
  SECTION("forbidden set with placement disabled") {
    auto inst = tiny_instance();
    inst.request.forbidden_nodes["i"] = {"u0"};
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
  SECTION("finite latency bound with latency disabled") {
    auto inst = tiny_instance();
    inst.request.nodes.insert("j");
    inst.request.node_demand["j"] = Rational(0);
    inst.request.edges.insert({"i", "j"});
    inst.request.edge_demand[{"i", "j"}] = Rational(0);
    inst.request.edge_latency_bound[{"i", "j"}] = Rational(1);
    CHECK_THROWS_AS(validate_instance(inst), Error);
    inst.request.edge_latency_bound[{"i", "j"}] = Rational::infinity();
    CHECK_NOTHROW(validate_instance(inst));
  }
  SECTION("forbidden node outside the substrate") {
    auto inst = tiny_instance();
    inst.variant.node_placement = true;
    inst.request.forbidden_nodes["i"] = {"nope"};
    CHECK_THROWS_AS(validate_instance(inst), Error);
  }
}

TEST_CASE("acyclicity helper", "[model]") {
  std::set<NodeId> nodes{"a", "b", "c"};
  CHECK(is_acyclic(nodes, {{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  CHECK_FALSE(is_acyclic(nodes, {{"a", "b"}, {"b", "c"}, {"c", "a"}}));
  CHECK(is_acyclic({}, {}));
}
