#include <catch2/catch.hpp>

#include "clawfactor/generators.hpp"
#include "clawfactor/line_graph.hpp"
#include "oracles.hpp"

using namespace clawfactor;

namespace {
Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return Graph::from_edges(n, es);
}
Graph path_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph::from_edges(n, es);
}
Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}
}  // namespace

TEST_CASE("line graphs of named instances") {
  REQUIRE(is_isomorphic(line_graph(parse_graph("4 3\n0 1\n0 2\n0 3")).line, complete_graph(3)));
  for (int n = 3; n <= 7; ++n) REQUIRE(is_isomorphic(line_graph(cycle_graph(n)).line, cycle_graph(n)));
  REQUIRE(is_isomorphic(line_graph(path_graph(4)).line, path_graph(3)));
  REQUIRE_THROWS_AS(line_graph(parse_graph("3 0")), std::invalid_argument);
}

TEST_CASE("root recovery on named instances") {
  REQUIRE(is_isomorphic(root_graph(cycle_graph(5)).root, cycle_graph(5)));
  // K_3 = L(K_3) = L(K_{1,3}); only the star root is triangle-free
  REQUIRE(is_isomorphic(root_graph(complete_graph(3)).root, parse_graph("4 3\n0 1\n0 2\n0 3")));
  REQUIRE_THROWS_AS(root_graph(parse_graph("4 3\n0 1\n0 2\n0 3")), NotALineGraphError);
}

TEST_CASE("root recovery round-trips over the triangle-free corpus") {
  for (const auto& h : enumerate_connected_triangle_free(7)) {
    if (h.edge_count() < 2) continue;
    auto corr = line_graph(h);
    auto rec = root_graph(corr.line);
    REQUIRE(is_triangle_free(rec.root));
    REQUIRE(is_isomorphic(rec.root, h));
    REQUIRE(validate_correspondence(rec).ok);
  }
}

TEST_CASE("degree transport along the bijection") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    Graph h = random_graph(3 + rng.below(6), 300 + rng.below(500), rng);
    if (h.edge_count() == 0) continue;
    auto corr = line_graph(h);
    for (int e = 0; e < h.edge_count(); ++e) {
      auto [u, v] = h.edge(e);
      REQUIRE(corr.line.degree(corr.edge_to_vertex[e]) == h.degree(u) + h.degree(v) - 2);
    }
  }
}

TEST_CASE("root recovery handles disconnected inputs and isolated vertices") {
  // two disjoint triangles plus an isolated vertex: root = two stars + one edge
  Graph g = parse_graph("7 6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5");
  auto corr = root_graph(g);
  REQUIRE(validate_correspondence(corr).ok);
  REQUIRE(is_triangle_free(corr.root));
  // every root vertex covers at least one edge
  for (int v = 0; v < corr.root.vertex_count(); ++v) REQUIRE(corr.root.degree(v) >= 1);
}

TEST_CASE("line graph of a triangle-free root is claw-free") {
  for (const auto& h : enumerate_connected_triangle_free(6)) {
    auto corr = line_graph(h);
    for (int v = 0; v < corr.line.vertex_count(); ++v) {
      const auto& nb = corr.line.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          for (std::size_t l = j + 1; l < nb.size(); ++l) {
            bool independent = !corr.line.adjacent(nb[i], nb[j]) &&
                               !corr.line.adjacent(nb[i], nb[l]) &&
                               !corr.line.adjacent(nb[j], nb[l]);
            REQUIRE_FALSE(independent);
          }
    }
  }
}
