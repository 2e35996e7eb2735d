#include <catch2/catch.hpp>

#include "clawfactor/degree_conditions.hpp"
#include "clawfactor/generators.hpp"
#include "clawfactor/matching.hpp"
#include "oracles.hpp"

using namespace clawfactor;

namespace {
Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return Graph::from_edges(n, es);
}
Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}
Graph petersen() {
  return parse_graph(
      "10 15\n0 1\n1 2\n2 3\n3 4\n0 4\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n5 8\n6 8\n6 9\n7 9");
}
}  // namespace

TEST_CASE("maximum matching on named instances") {
  REQUIRE(max_matching_general(cycle_graph(5)).edge_ids.size() == 2);
  REQUIRE(max_matching_general(petersen()).edge_ids.size() == 5);
  REQUIRE(max_matching_general(parse_graph("4 3\n0 1\n0 2\n0 3")).edge_ids.size() == 1);
}

TEST_CASE("blossom matching equals brute force on small graphs") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + rng.below(10);
    Graph g = random_graph(n, rng.below(1001), rng);
    Matching m = max_matching_general(g);
    REQUIRE(validate_matching(g, m).ok);
    REQUIRE(static_cast<int>(m.edge_ids.size()) == oracles::brute_max_matching(g));
  }
}

TEST_CASE("two-factor on named instances") {
  for (int n = 3; n <= 7; ++n) {
    auto tf = two_factor(cycle_graph(n));
    REQUIRE(tf.has_value());
    REQUIRE(tf->cycles.size() == 1);
  }
  REQUIRE_FALSE(two_factor(parse_graph("4 3\n0 1\n0 2\n0 3")).has_value());
  auto two_triangles = two_factor(parse_graph("6 6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5"));
  REQUIRE(two_triangles.has_value());
  REQUIRE(two_triangles->cycles.size() == 2);
}

TEST_CASE("gadget route agrees with the exhaustive route") {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 3 + rng.below(8);
    Graph g = random_graph(n, 200 + rng.below(700), rng);
    auto fast = two_factor(g);
    Budget budget;
    auto brute = min_cycle_two_factor_bruteforce(g, budget);
    REQUIRE(fast.has_value() == brute.has_value());
    if (fast) {
      REQUIRE(validate_two_factor(g, *fast).ok);
      REQUIRE(validate_two_factor(g, brute->first).ok);
    }
  }
}

TEST_CASE("degree condition implies a 2-factor exists") {
  SplitMix64 rng(63);
  int hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = 3 + rng.below(8);
    Graph g = random_graph(n, 400 + rng.below(600), rng);
    if (!check_degree_condition(g).first) continue;
    ++hits;
    REQUIRE(two_factor(g).has_value());
  }
  REQUIRE(hits > 0);
}

TEST_CASE("exhaustive minimum cycle counts") {
  Budget budget;
  auto g1 = min_cycle_two_factor_bruteforce(build_extremal(1), budget);
  REQUIRE(g1.has_value());
  REQUIRE(g1->second == 2);

  auto k4 = min_cycle_two_factor_bruteforce(complete_graph(4));
  REQUIRE(k4->second == 1);
  auto c6 = min_cycle_two_factor_bruteforce(cycle_graph(6));
  REQUIRE(c6->second == 1);
}

TEST_CASE("early-stop search returns once the bound is met") {
  Budget budget;
  auto res = min_cycle_two_factor_bruteforce(complete_graph(6), budget, 2);
  REQUIRE(res.has_value());
  REQUIRE(static_cast<int>(res->first.cycles.size()) <= 2);
}

TEST_CASE("brute-force budget is enforced") {
  Budget tiny(5);
  REQUIRE_THROWS_AS(min_cycle_two_factor_bruteforce(complete_graph(8), tiny), BudgetExceededError);
}

TEST_CASE("bipartite matching covers the side or exposes a violator") {
  // K_{2,2}: side covered
  Graph k22 = parse_graph("4 4\n0 2\n0 3\n1 2\n1 3");
  auto covered = bipartite_matching_or_violator(k22, {0, 1});
  REQUIRE(covered.matching.has_value());
  REQUIRE(covered.matching->edge_ids.size() == 2);

  // isolated side vertex
  Graph iso = parse_graph("3 1\n1 2");
  auto lone = bipartite_matching_or_violator(iso, {0, 1});
  REQUIRE(lone.violator.has_value());
  REQUIRE(*lone.violator == std::vector<int>{0});

  // three side vertices into two sinks: violator of size 3, no proper
  // subset violating (checked by enumeration)
  Graph three_two = parse_graph("5 6\n0 3\n0 4\n1 3\n1 4\n2 3\n2 4");
  auto crowded = bipartite_matching_or_violator(three_two, {0, 1, 2});
  REQUIRE(crowded.violator.has_value());
  REQUIRE(crowded.violator->size() == 3);
  REQUIRE(oracles::is_inclusion_minimal_violator(three_two, *crowded.violator));
}

TEST_CASE("violators are inclusion-minimal on random bipartite graphs") {
  SplitMix64 rng(64);
  int violators = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int left = 1 + rng.below(6), right = 1 + rng.below(4);
    std::vector<std::pair<int, int>> es;
    for (int x = 0; x < left; ++x)
      for (int t = 0; t < right; ++t)
        if (rng.chance(1, 3)) es.emplace_back(x, left + t);
    Graph f = Graph::from_edges(left + right, es);
    std::vector<int> side(left);
    for (int i = 0; i < left; ++i) side[i] = i;
    auto cert = bipartite_matching_or_violator(f, side);
    if (cert.violator) {
      ++violators;
      REQUIRE(cert.violator->size() <= 6);
      REQUIRE(oracles::is_inclusion_minimal_violator(f, *cert.violator));
    } else {
      REQUIRE(cert.matching->edge_ids.size() == static_cast<std::size_t>(left));
      REQUIRE(validate_matching(f, *cert.matching).ok);
    }
  }
  REQUIRE(violators > 0);
}

TEST_CASE("non-independent side is rejected") {
  Graph bad = parse_graph("3 2\n0 1\n1 2");
  REQUIRE_THROWS_AS(bipartite_matching_or_violator(bad, {0, 1}), std::invalid_argument);
}
