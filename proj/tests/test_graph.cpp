#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "evoapsp/graph.hpp"

using namespace evoapsp;

namespace {

// out_adj and in_adj must be exact transposes, both agreeing with edges.
void check_adjacency_consistency(const Graph& g) {
  std::set<std::tuple<int, int, std::int64_t>> from_edges, from_out, from_in;
  for (const Edge& e : g.edges) from_edges.insert({e.src, e.dst, e.weight});
  for (int u = 0; u < g.n; ++u)
    for (const auto& [v, w] : g.out_adj[u]) from_out.insert({u, v, w});
  for (int v = 0; v < g.n; ++v)
    for (const auto& [u, w] : g.in_adj[v]) from_in.insert({u, v, w});
  REQUIRE(from_out == from_edges);
  REQUIRE(from_in == from_edges);
}

}  // namespace

TEST_CASE("complete uniform generator forces the degenerate range") {
  const Graph g = generate_complete_uniform(2, 1, 1, 7);
  REQUIRE(g.n == 2);
  REQUIRE(g.edges.size() == 2);
  for (const Edge& e : g.edges) REQUIRE(e.weight == 1);
}

TEST_CASE("complete uniform generator cardinality and range") {
  const Graph g = generate_complete_uniform(4, 1, 10, 42);
  REQUIRE(g.edges.size() == 12);
  for (const Edge& e : g.edges) {
    REQUIRE(e.weight >= 1);
    REQUIRE(e.weight <= 10);
  }
  check_adjacency_consistency(g);
}

TEST_CASE("complete uniform generator is seed-deterministic") {
  REQUIRE(generate_complete_uniform(3, 1, 10, 5) == generate_complete_uniform(3, 1, 10, 5));
  REQUIRE_FALSE(generate_complete_uniform(6, 1, 10, 5) == generate_complete_uniform(6, 1, 10, 6));
}

TEST_CASE("complete uniform generator parameter errors") {
  REQUIRE_THROWS_AS(generate_complete_uniform(1, 1, 10, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(generate_complete_uniform(3, 5, 4, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(generate_complete_uniform(3, 0, 4, 0), std::invalid_argument);
}

TEST_CASE("hard path generator structure") {
  const Graph g = generate_hard_path(5, 5);
  REQUIRE(g.edges.size() == 20);
  for (const Edge& e : g.edges) {
    if (e.dst == e.src + 1)
      REQUIRE(e.weight == 1);
    else
      REQUIRE(e.weight == 25);
  }
  check_adjacency_consistency(g);
}

TEST_CASE("hard path n=2 has the single unit forward edge") {
  const Graph g = generate_hard_path(2, 2);
  REQUIRE(g.weight(0, 1) == 1);
  REQUIRE(g.weight(1, 0) == 4);
}

TEST_CASE("hard path rejects weak heavy weights") {
  REQUIRE_THROWS_AS(generate_hard_path(5, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(generate_hard_path(1, 5), std::invalid_argument);
}

TEST_CASE("parse minimal document") {
  const Graph g = parse_graph("2 1\n0 1 5\n");
  REQUIRE(g.n == 2);
  REQUIRE(g.edges.size() == 1);
  REQUIRE(g.edges[0] == Edge{0, 1, 5});
}

TEST_CASE("parse accepts comments and decimal weights") {
  const Graph g = parse_graph("# generated\n3 2\n0 1 0.5  # half\n1 2 2\n");
  REQUIRE(g.weight_denom == 10);
  REQUIRE(g.weight(0, 1) == 5);
  REQUIRE(g.weight(1, 2) == 20);
}

TEST_CASE("parse errors name the offending line") {
  REQUIRE_THROWS_WITH(parse_graph("2 1\n0 0 5\n"), Catch::Matchers::ContainsSubstring("line 2"));
  REQUIRE_THROWS_WITH(parse_graph("2 2\n0 1 5\n0 1 3\n"),
                      Catch::Matchers::ContainsSubstring("duplicate"));
  REQUIRE_THROWS_WITH(parse_graph("2 1\n0 1 0\n"),
                      Catch::Matchers::ContainsSubstring("non-positive"));
  REQUIRE_THROWS_AS(parse_graph("2 1\n0 1\n"), ParseError);
  REQUIRE_THROWS_AS(parse_graph(""), ParseError);
  REQUIRE_THROWS_AS(parse_graph("2 2\n0 1 5\n"), ParseError);
}

TEST_CASE("round trip identity on generated graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = generate_complete_uniform(5, 1, 50, seed);
    REQUIRE(parse_graph(serialize_graph(g)) == g);
  }
  const Graph h = generate_hard_path(6, 6);
  REQUIRE(parse_graph(serialize_graph(h)) == h);
}

TEST_CASE("round trip identity with fractional weights") {
  const Graph g = parse_graph("3 3\n0 1 0.25\n1 2 3\n2 0 1.5\n");
  REQUIRE(g.weight_denom == 100);
  REQUIRE(parse_graph(serialize_graph(g)) == g);
}

TEST_CASE("serialize emits canonical (src,dst) order") {
  const Graph g = parse_graph("3 3\n2 0 4\n0 1 1\n1 2 2\n");
  REQUIRE(serialize_graph(g) == "3 3\n0 1 1\n1 2 2\n2 0 4\n");
}

TEST_CASE("denominator canonicalization strips common powers of ten") {
  const Graph g = parse_graph("2 2\n0 1 1.50\n1 0 2.10\n");
  REQUIRE(g.weight_denom == 10);
  REQUIRE(g.weight(0, 1) == 15);
  REQUIRE(g.weight(1, 0) == 21);
}
