#include <algorithm>
#include <set>

#include "doctest.h"
#include "kindsim/graph.hpp"
#include "support.hpp"

using namespace kindsim;
using testsupport::error_code_of;

TEST_CASE("complete graph structure") {
  const Graph g = generate(GraphSpec::complete(4), 1);
  CHECK(g.n_vertices() == 4);
  CHECK(g.n_edges() == 6);
  CHECK(g.n_oriented_edges() == 12);
  for (Vertex v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("cycle structure") {
  const Graph g = generate(GraphSpec::cycle(5), 1);
  CHECK(g.n_vertices() == 5);
  CHECK(g.n_edges() == 5);
  for (Vertex v = 0; v < 5; ++v) CHECK(g.degree(v) == 2);
}

TEST_CASE("grid structure") {
  const Graph g = generate(GraphSpec::grid(3, 3), 1);
  CHECK(g.n_vertices() == 9);
  CHECK(g.n_edges() == 12);
}

TEST_CASE("erdos-renyi at p = 1 is the complete graph") {
  const Graph er = generate(GraphSpec::erdos_renyi(10, 1.0), 7);
  const Graph k10 = generate(GraphSpec::complete(10), 7);
  CHECK(er.edges() == k10.edges());
}

TEST_CASE("erdos-renyi is deterministic in the seed") {
  const GraphSpec spec = GraphSpec::erdos_renyi(16, 0.3);
  const Graph a = generate(spec, 42);
  const Graph b = generate(spec, 42);
  const Graph c = generate(spec, 43);
  CHECK(a.edges() == b.edges());
  CHECK(a.n_vertices() == 16);
  // Different seeds almost surely give a different draw at this density.
  CHECK(a.edges() != c.edges());
}

TEST_CASE("oriented edges come in matched pairs") {
  const Graph g = generate(GraphSpec::grid(2, 3), 1);
  CHECK(g.n_oriented_edges() == 2 * g.n_edges());
  for (std::size_t k = 0; k + 1 < g.n_oriented_edges(); k += 2) {
    const auto [a, b] = g.oriented_edge(k);
    const auto [c, d] = g.oriented_edge(k + 1);
    CHECK(a == d);
    CHECK(b == c);
  }
}

TEST_CASE("parse_edge_list accepts a path") {
  const Graph g = parse_edge_list("0 1\n1 2");
  CHECK(g.n_vertices() == 3);
  CHECK(g.n_edges() == 2);
  CHECK(is_connected(g.n_vertices(), g.edges()));
}

TEST_CASE("parse_edge_list error cases") {
  CHECK(error_code_of([] { parse_edge_list("0 1\n2 3"); }) ==
        Errc::disconnected);
  CHECK(error_code_of([] { parse_edge_list("0 0"); }) == Errc::self_loop);
  CHECK(error_code_of([] { parse_edge_list("0 1\n0 1"); }) ==
        Errc::duplicate_edge);
  CHECK(error_code_of([] { parse_edge_list("0 1\n1 0"); }) ==
        Errc::duplicate_edge);
  CHECK(error_code_of([] { parse_edge_list("0 x"); }) == Errc::parse_error);
  CHECK(error_code_of([] { parse_edge_list(""); }) == Errc::empty_graph);
}

TEST_CASE("is_connected on raw edge lists") {
  CHECK(is_connected(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK_FALSE(is_connected(4, {{0, 1}, {2, 3}}));
  CHECK(is_connected(1, {}));
}

TEST_CASE("shortest_path basics") {
  const Graph c4 = generate(GraphSpec::cycle(4), 1);
  const auto path = c4.shortest_path(0, 2);
  CHECK(path.size() == 3);
  CHECK(path.front() == 0);
  CHECK(path.back() == 2);

  CHECK(c4.shortest_path(3, 3) == std::vector<Vertex>{3});

  const Graph line = parse_edge_list("0 1\n1 2");
  CHECK(line.shortest_path(0, 2) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("shortest_path consecutive entries are neighbors") {
  const Graph g = generate(GraphSpec::grid(4, 4), 1);
  const auto path = g.shortest_path(0, 15);
  REQUIRE(path.size() >= 2);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto& nb = g.neighbors(path[i]);
    CHECK(std::find(nb.begin(), nb.end(), path[i + 1]) != nb.end());
  }
}

TEST_CASE("edge list round trip") {
  for (const GraphSpec& spec :
       {GraphSpec::complete(5), GraphSpec::cycle(7), GraphSpec::grid(3, 4),
        GraphSpec::erdos_renyi(9, 0.5)}) {
    const Graph g = generate(spec, 11);
    const Graph round = parse_edge_list(g.to_edge_list());
    CHECK(round.n_vertices() == g.n_vertices());
    CHECK(round.edges() == g.edges());
  }
}

TEST_CASE("invalid specs are rejected") {
  CHECK(error_code_of([] { generate(GraphSpec::complete(1), 1); }) ==
        Errc::empty_graph);
  CHECK(error_code_of([] { GraphSpec::cycle(2).validate(); }) ==
        Errc::invalid_spec);
  CHECK(error_code_of([] { GraphSpec::erdos_renyi(5, 1.5).validate(); }) ==
        Errc::invalid_spec);
  CHECK(error_code_of([] { generate(GraphSpec::grid(1, 1), 1); }) ==
        Errc::invalid_spec);
}

TEST_CASE("from_edges rejects an edgeless graph") {
  CHECK(error_code_of([] { Graph::from_edges(3, {}); }) == Errc::empty_graph);
}

TEST_CASE("neighbors are sorted ascending") {
  const Graph g = generate(GraphSpec::erdos_renyi(12, 0.5), 3);
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    const auto& nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
  }
}
