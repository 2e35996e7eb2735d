#include <catch2/catch.hpp>

#include "clawfactor/closure.hpp"
#include "clawfactor/degree_conditions.hpp"
#include "clawfactor/dominating_system.hpp"
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

ClosedTrail whole_cycle_trail(const Graph& g) {
  std::vector<int> ids(g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) ids[i] = i;
  return closed_trail_from_edges(g, ids);
}
}  // namespace

TEST_CASE("system validation on named instances") {
  Graph c5 = cycle_graph(5);
  DominatingSystem ds;
  ds.host = c5;
  ds.trails.push_back(whole_cycle_trail(c5));
  REQUIRE(validate_system(ds).ok);

  Graph claw = parse_graph("4 3\n0 1\n0 2\n0 3");
  DominatingSystem star_sys;
  star_sys.host = claw;
  star_sys.stars.push_back(Star{0, {0, 1, 2}});
  REQUIRE(validate_system(star_sys).ok);

  Graph path = parse_graph("3 2\n0 1\n1 2");
  DominatingSystem two_star;
  two_star.host = path;
  two_star.stars.push_back(Star{1, {0, 1}});
  REQUIRE_FALSE(validate_system(two_star).ok);  // strict needs >= 3 edges
  two_star.mode = SystemMode::kRelaxed;
  REQUIRE(validate_system(two_star).ok);
}

TEST_CASE("system validation flags the violations") {
  Graph c5 = cycle_graph(5);
  DominatingSystem ds;
  ds.host = c5;
  ds.trails.push_back(whole_cycle_trail(c5));
  ds.trails.push_back(whole_cycle_trail(c5));  // edge reuse
  REQUIRE_FALSE(validate_system(ds).ok);

  // undominated edge: star system with a far-away edge
  Graph g = parse_graph("6 4\n0 1\n0 2\n0 3\n4 5");
  DominatingSystem star_only;
  star_only.host = g;
  star_only.stars.push_back(Star{0, {0, 1, 2}});
  auto v = validate_system(star_only);
  REQUIRE_FALSE(v.ok);
  REQUIRE(v.message.find("neither covered nor dominated") != std::string::npos);
}

TEST_CASE("strict conversion: trail and star instances") {
  Graph c5 = cycle_graph(5);
  auto corr5 = line_graph(c5);
  DominatingSystem ds5;
  ds5.host = c5;
  ds5.trails.push_back(whole_cycle_trail(c5));
  auto tf5 = system_to_two_factor(ds5, corr5);
  REQUIRE(tf5.cycles.size() == 1);
  REQUIRE(tf5.cycles[0].vertices.size() == 5);

  Graph claw = parse_graph("4 3\n0 1\n0 2\n0 3");
  auto corr_claw = line_graph(claw);
  DominatingSystem ds_claw;
  ds_claw.host = claw;
  ds_claw.stars.push_back(Star{0, {0, 1, 2}});
  auto tf_claw = system_to_two_factor(ds_claw, corr_claw);
  REQUIRE(tf_claw.cycles.size() == 1);
  REQUIRE(tf_claw.cycles[0].vertices.size() == 3);
}

TEST_CASE("strict conversion splices dominated edges: K_{2,3}") {
  Graph k23 = parse_graph("5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4");
  auto corr = line_graph(k23);
  // 4-cycle 0-2-1-3 as the only trail; edges (0,4) and (1,4) are dominated
  DominatingSystem ds;
  ds.host = k23;
  ClosedTrail t;
  t.anchor = 0;
  t.edge_ids = {k23.edge_id(0, 2), k23.edge_id(2, 1), k23.edge_id(1, 3), k23.edge_id(3, 0)};
  ds.trails.push_back(t);
  REQUIRE(validate_system(ds).ok);
  auto tf = system_to_two_factor(ds, corr);
  REQUIRE(tf.cycles.size() == 1);
  REQUIRE(tf.cycles[0].vertices.size() == 6);  // Hamilton cycle of L(K_{2,3})
  REQUIRE(validate_two_factor(corr.line, tf).ok);
}

TEST_CASE("reverse conversion on named instances") {
  Graph c5 = cycle_graph(5);
  auto corr = line_graph(c5);
  DominatingSystem ds;
  ds.host = c5;
  ds.trails.push_back(whole_cycle_trail(c5));
  auto tf = system_to_two_factor(ds, corr);
  auto back = two_factor_to_system(tf, corr);
  REQUIRE(back.trails.size() == 1);
  REQUIRE(back.stars.empty());
  REQUIRE(back.trails[0].edge_ids.size() == 5);

  Graph claw = parse_graph("4 3\n0 1\n0 2\n0 3");
  auto corr_claw = line_graph(claw);
  TwoFactor triangle{{Cycle{{0, 1, 2}}}};
  auto star_back = two_factor_to_system(triangle, corr_claw);
  REQUIRE(star_back.stars.size() == 1);
  REQUIRE(star_back.stars[0].center == 0);
}

TEST_CASE("reverse conversion handles trails with pendant edges hanging off") {
  // 4-cycle with a pendant at vertex 0: L has a Hamilton cycle whose
  // pullback is the cycle plus the pendant edge (odd degree at 0)
  Graph g = parse_graph("5 5\n0 1\n0 2\n0 4\n1 3\n2 3");
  // edges: (0,1)=0 (0,2)=1 (0,4)=2 (1,3)=3 (2,3)=4; cycle 0-1-3-2-0, pendant (0,4)
  auto corr = line_graph(g);
  auto ham = hamiltonian_cycle(corr.line);
  REQUIRE(ham.has_value());
  TwoFactor tf{{*ham}};
  auto ds = two_factor_to_system(tf, corr);
  REQUIRE(ds.cardinality() == 1);
  REQUIRE(ds.trails.size() == 1);
  REQUIRE(ds.trails[0].edge_ids.size() == 4);
  REQUIRE(validate_system(ds).ok);
}

TEST_CASE("round trip preserves cardinality over the corpus") {
  for (const auto& h : enumerate_connected_triangle_free(8)) {
    auto corr = line_graph(h);
    auto tf = two_factor(corr.line);
    if (!tf) continue;
    auto ds = two_factor_to_system(*tf, corr);
    REQUIRE(ds.cardinality() == static_cast<int>(tf->cycles.size()));
    auto tf2 = system_to_two_factor(ds, corr);
    REQUIRE(tf2.cycles.size() == tf->cycles.size());
    auto ds2 = two_factor_to_system(tf2, corr);
    REQUIRE(ds2.cardinality() == ds.cardinality());
  }
}

TEST_CASE("minimum systems on named instances") {
  auto c5 = min_system_exhaustive(cycle_graph(5), SystemMode::kStrict);
  REQUIRE(c5.has_value());
  REQUIRE(c5->second == 1);

  auto claw = min_system_exhaustive(parse_graph("4 3\n0 1\n0 2\n0 3"), SystemMode::kStrict);
  REQUIRE(claw.has_value());
  REQUIRE(claw->second == 1);

  auto path = min_system_exhaustive(parse_graph("4 3\n0 1\n1 2\n2 3"), SystemMode::kStrict);
  REQUIRE_FALSE(path.has_value());  // no trail, no wide star

  // the closure of the k=1 extremal graph is itself; its root's minimum
  // system matches the minimum 2-factor cycle count, which is 2
  Graph g1 = build_extremal(1);
  auto cl = closure(g1);
  REQUIRE(cl.output == g1);
  auto corr = root_graph(cl.output);
  auto min_sys = min_system_exhaustive(corr.root, SystemMode::kStrict);
  REQUIRE(min_sys.has_value());
  REQUIRE(min_sys->second == 2);
}

TEST_CASE("dominating closed trails on named instances") {
  auto c7 = has_dominating_closed_trail(cycle_graph(7));
  REQUIRE(c7.has_value());
  REQUIRE(c7->edge_ids.size() == 7);

  REQUIRE_FALSE(has_dominating_closed_trail(parse_graph("4 3\n0 1\n1 2\n2 3")).has_value());

  Graph k23 = parse_graph("5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4");
  auto dct = has_dominating_closed_trail(k23);
  REQUIRE(dct.has_value());
  REQUIRE(validate_closed_trail(k23, *dct).ok);
}

TEST_CASE("system/2-factor equivalence over the small corpus") {
  Budget budget(100'000'000);
  for (const auto& h : enumerate_connected_triangle_free(7)) {
    auto corr = line_graph(h);
    auto min_sys = min_system_exhaustive(h, SystemMode::kStrict, budget);
    auto min_tf = min_cycle_two_factor_bruteforce(corr.line, budget);
    REQUIRE(min_sys.has_value() == min_tf.has_value());
    if (min_sys) REQUIRE(min_sys->second == min_tf->second);
  }
}

TEST_CASE("hamiltonicity of the line graph matches trails or wide stars") {
  for (const auto& h : enumerate_connected_triangle_free(7)) {
    auto corr = line_graph(h);
    bool ham = is_hamiltonian(corr.line);
    bool star = h.edge_count() >= 3 && [&] {
      for (int v = 0; v < h.vertex_count(); ++v)
        if (h.degree(v) == h.edge_count()) return true;
      return false;
    }();
    bool dct = has_dominating_closed_trail(h).has_value();
    REQUIRE(ham == (dct || star));
  }
}

TEST_CASE("relaxed systems map to degenerate parts") {
  for (const auto& h : enumerate_connected_triangle_free(6)) {
    auto corr = line_graph(h);
    auto min_sys = min_system_exhaustive(h, SystemMode::kRelaxed);
    REQUIRE(min_sys.has_value());  // single-edge stars always cover
    auto parts = degenerate_parts(min_sys->first, corr);
    REQUIRE(static_cast<int>(parts.size()) == min_sys->second);
    // each part induces K_1, K_2, or a Hamiltonian subgraph of the line graph
    for (const auto& part : parts) {
      if (part.size() == 1) continue;
      if (part.size() == 2) {
        REQUIRE(corr.line.adjacent(part[0], part[1]));
        continue;
      }
      REQUIRE(hamiltonian_cycle_on(corr.line, part).has_value());
    }
  }
}

TEST_CASE("relaxed minimum never exceeds the strict minimum") {
  for (const auto& h : enumerate_connected_triangle_free(6)) {
    auto strict = min_system_exhaustive(h, SystemMode::kStrict);
    auto relaxed = min_system_exhaustive(h, SystemMode::kRelaxed);
    REQUIRE(relaxed.has_value());
    if (strict) REQUIRE(relaxed->second <= strict->second);
  }
}
