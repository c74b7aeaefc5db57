#include <catch2/catch_amalgamated.hpp>
#include <vnepkit/diredpwc.hpp>
#include <vnepkit/solver.hpp>

#include "support/generators.hpp"
#include "support/naive_oracles.hpp"

using namespace vnep;

namespace {

DirEdpwcInstance diamond(int congestion) {
  DirEdpwcInstance d;
  d.nodes = {"s", "a", "b", "t"};
  d.edges = {{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}};
  d.commodities = {{"s", "t"}, {"s", "t"}};
  d.congestion = congestion;
  return d;
}

DirEdpwcInstance bottleneck(int congestion) {
  DirEdpwcInstance d;
  d.nodes = {"s", "m", "t"};
  d.edges = {{"s", "m"}, {"m", "t"}};
  d.commodities = {{"s", "t"}, {"s", "t"}};
  d.congestion = congestion;
  return d;
}

bool solves(const VnepInstance& inst) {
  const auto result = solve_decision(inst);
  REQUIRE(result.status != SolveStatus::ResourceLimit);
  return result.status == SolveStatus::Feasible;
}

}  // namespace

TEST_CASE("diamond with disjoint paths routes at congestion one", "[diredpwc]") {
  const auto d = diamond(1);
  CHECK(testsupport::naive_diredpwc_routable(d));
  CHECK(solves(reduce_diredpwc_en(d)));
  CHECK(solves(reduce_diredpwc_ve(d)));
}

TEST_CASE("shared bottleneck needs congestion two", "[diredpwc]") {
  const auto tight = bottleneck(1);
  CHECK_FALSE(testsupport::naive_diredpwc_routable(tight));
  CHECK_FALSE(solves(reduce_diredpwc_en(tight)));
  CHECK_FALSE(solves(reduce_diredpwc_ve(tight)));

  const auto loose = bottleneck(2);
  CHECK(testsupport::naive_diredpwc_routable(loose));
  CHECK(solves(reduce_diredpwc_en(loose)));
  CHECK(solves(reduce_diredpwc_ve(loose)));
}

TEST_CASE("source equal to sink routes via the empty path", "[diredpwc]") {
  DirEdpwcInstance d;
  d.nodes = {"s", "t"};
  d.edges = {{"s", "t"}};
  d.commodities = {{"s", "s"}};
  d.congestion = 1;
  CHECK(testsupport::naive_diredpwc_routable(d));
  CHECK(solves(reduce_diredpwc_en(d)));
  CHECK(solves(reduce_diredpwc_ve(d)));
}

TEST_CASE("placement reduction pins endpoints and copies edge capacities", "[diredpwc]") {
  const auto d = diamond(2);
  const auto inst = reduce_diredpwc_en(d);
  CHECK(inst.variant == VariantSpec::en());
  CHECK(inst.substrate.nodes == d.nodes);
  CHECK(inst.substrate.edges == d.edges);
  for (const auto& [e, c] : inst.substrate.edge_capacity) CHECK(c == Rational(2));
  CHECK(inst.request.nodes.size() == 4);
  CHECK(inst.request.edges.size() == 2);
  // i1 may only map on s, j1 only on t.
  CHECK(allowed_nodes(inst, "i1") == std::set<NodeId>{"s"});
  CHECK(allowed_nodes(inst, "j1") == std::set<NodeId>{"t"});
}

TEST_CASE("capacity reduction tallies copies against demands", "[diredpwc]") {
  const auto d = diamond(1);
  const auto inst = reduce_diredpwc_ve(d);
  CHECK(inst.variant == VariantSpec::ve());
  // Copy capacities sum to the total requested node demand.
  Rational copy_capacity(0), original_capacity(0);
  for (const auto& [u, c] : inst.substrate.node_capacity) {
    if (d.nodes.count(u))
      original_capacity += c;
    else
      copy_capacity += c;
  }
  CHECK(original_capacity == Rational(0));
  Rational demand_total(0);
  for (const auto& [i, dem] : inst.request.node_demand) demand_total += dem;
  CHECK(copy_capacity == demand_total);
  // s and t occur twice each; the other nodes get no copies.
  CHECK(inst.substrate.nodes.size() == d.nodes.size() + 4);
  // Copy-incident edges have capacity 1, original edges the congestion value.
  for (const auto& [e, c] : inst.substrate.edge_capacity) {
    if (d.edges.count(e))
      CHECK(c == Rational(1));  // congestion = 1 here
    else
      CHECK(c == Rational(1));
  }
}

TEST_CASE("a demand can only sit on a copy of its own node", "[diredpwc]") {
  DirEdpwcInstance d;
  d.nodes = {"p", "q"};
  d.edges = {{"p", "q"}};
  d.commodities = {{"p", "q"}};
  d.congestion = 1;
  const auto inst = reduce_diredpwc_ve(d);
  const auto result = solve_decision(inst);
  REQUIRE(result.status == SolveStatus::Feasible);
  // U(p) = 1, U(q) = 2: the demand-2 sink only fits on q's copy.
  const NodeId host = result.mapping->node_map.at("j1");
  CHECK(inst.substrate.node_capacity.at(host) == Rational(2));
  CHECK(host.rfind("q", 0) == 0);
}

TEST_CASE("both reductions agree with the naive enumerator on a digraph grid", "[diredpwc]") {
  int cases = 0, mismatches = 0;
  for (int nodes = 2; nodes <= 5; ++nodes) {
    for (int commodities = 1; commodities <= 2; ++commodities) {
      for (int congestion = 1; congestion <= 2; ++congestion) {
        for (std::uint64_t round = 0; round < 6; ++round) {
          const auto d = testsupport::random_digraph_instance(
              nodes, commodities, congestion,
              round * 1000 + static_cast<std::uint64_t>(nodes * 100 + commodities * 10 +
                                                        congestion));
          const bool expected = testsupport::naive_diredpwc_routable(d);
          const bool en = solves(reduce_diredpwc_en(d));
          const bool ve = solves(reduce_diredpwc_ve(d));
          if (en != expected || ve != expected) ++mismatches;
          ++cases;
        }
      }
    }
  }
  CHECK(cases == 96);
  CHECK(mismatches == 0);
}

TEST_CASE("diredpwc validation", "[diredpwc]") {
  DirEdpwcInstance d;
  d.nodes = {"a"};
  d.congestion = 0;
  CHECK_THROWS_AS(validate_diredpwc(d), Error);
  d.congestion = 1;
  d.commodities = {{"a", "zz"}};
  CHECK_THROWS_AS(validate_diredpwc(d), Error);
}
