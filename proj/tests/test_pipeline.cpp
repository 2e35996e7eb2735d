#include <catch2/catch.hpp>

#include "clawfactor/generators.hpp"
#include "clawfactor/json_io.hpp"
#include "clawfactor/pipeline.hpp"
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
}  // namespace

TEST_CASE("main pipeline on complete graphs") {
  auto cert = run_pipeline(complete_graph(5), 1);
  REQUIRE(cert.closure_two_factor.cycles.size() == 1);
  REQUIRE(cert.system.cardinality() == 1);
  REQUIRE(cert.input_two_factor.has_value());
  REQUIRE(cert.input_two_factor->cycles.size() == 1);
  Budget budget;
  REQUIRE(verify_certificate(cert, budget).ok);
}

TEST_CASE("main pipeline rejects claws and failed hypotheses") {
  REQUIRE_THROWS_AS(run_pipeline(parse_graph("4 3\n0 1\n0 2\n0 3"), 1), NotClawFreeError);

  for (int k = 1; k <= 3; ++k) {
    Graph gk = build_extremal(k);
    try {
      run_pipeline(gk, k);
      FAIL("extremal family must fail the degree-sum hypothesis");
    } catch (const HypothesesFailError& e) {
      REQUIRE(e.report.sigma_value == static_cast<long long>((k + 1) * (k + 2)));
      REQUIRE(e.report.sigma_value == gk.vertex_count() - 1);
      REQUIRE_FALSE(e.report.sigma_ok);
      REQUIRE(e.report.degree_condition_ok);
    }
  }
}

TEST_CASE("main pipeline succeeds on random claw-free graphs meeting the hypotheses") {
  SplitMix64 rng(81);
  Budget budget(1'000'000'000);
  int produced = 0;
  for (int trial = 0; trial < 300 && produced < 12; ++trial) {
    int n = 6 + rng.below(7);
    Graph g = random_claw_free(n, 700 + rng.below(250), rng);
    auto report = evaluate_hypotheses(g, 4, budget);
    if (!report.degree_condition_ok) continue;
    int k = -1;
    for (int cand = 1; cand <= 4; ++cand) {
      auto sigma = sigma_k(g, cand + 1, budget);
      if (!sigma || *sigma >= g.vertex_count()) {
        k = cand;
        break;
      }
    }
    if (k < 0) continue;
    ++produced;
    auto cert = run_pipeline(g, k, budget);
    REQUIRE(static_cast<int>(cert.closure_two_factor.cycles.size()) <= k);
    REQUIRE(verify_certificate(cert, budget).ok);
    // the input itself has a 2-factor with at most k cycles
    REQUIRE(cert.input_two_factor.has_value());
    REQUIRE(static_cast<int>(cert.input_two_factor->cycles.size()) <= k);
  }
  REQUIRE(produced == 12);
}

TEST_CASE("certificates survive a JSON round trip and detect tampering") {
  Budget budget;
  auto cert = run_pipeline(complete_graph(6), 1, budget);
  json j = certificate_to_json(cert);
  auto back = certificate_from_json(j);
  REQUIRE(verify_certificate(back, budget).ok);

  // tamper with the closure 2-factor
  auto tampered = back;
  std::swap(tampered.closure_two_factor.cycles[0].vertices[0],
            tampered.closure_two_factor.cycles[0].vertices[1]);
  REQUIRE_FALSE(verify_certificate(tampered, budget).ok);

  // claim a smaller k than the system supports
  auto wrong_k = back;
  wrong_k.k = 0;
  REQUIRE_FALSE(verify_certificate(wrong_k, budget).ok);
}

TEST_CASE("degenerate partition on cycles and extremal graphs") {
  // sigma_3(C_6) = 6 >= 6, so two parts suffice (one suffices in fact)
  auto dp = run_degenerate_partition(cycle_graph(6), 2);
  REQUIRE(dp.parts.size() <= 2);
  REQUIRE(validate_degenerate_partition(cycle_graph(6), dp).ok);

  // sigma_2(C_6) = 4 < 6: the hypothesis fails for k = 1
  REQUIRE_THROWS_AS(run_degenerate_partition(cycle_graph(6), 1), HypothesesFailError);

  for (int k = 1; k <= 2; ++k) {
    Graph gk = build_extremal(k);
    // sigma_{k+2} is infinite (alpha = k+1), so k+1 parts are guaranteed
    auto parts = run_degenerate_partition(gk, k + 1);
    REQUIRE(static_cast<int>(parts.parts.size()) <= k + 1);
    REQUIRE(validate_degenerate_partition(gk, parts).ok);
    // and the degree-sum sharpness forbids k parts
    REQUIRE_THROWS_AS(run_degenerate_partition(gk, k), HypothesesFailError);
  }
}

TEST_CASE("degenerate partition on random claw-free graphs under the degree-sum condition") {
  SplitMix64 rng(82);
  Budget budget(1'000'000'000);
  int produced = 0;
  for (int trial = 0; trial < 200 && produced < 10; ++trial) {
    int n = 5 + rng.below(7);
    Graph g = random_claw_free(n, 550 + rng.below(400), rng);
    if (g.vertex_count() == 0) continue;
    int k = -1;
    for (int cand = 1; cand <= 4; ++cand) {
      auto sigma = sigma_k(g, cand + 1, budget);
      if (!sigma || *sigma >= g.vertex_count()) {
        k = cand;
        break;
      }
    }
    if (k < 0) continue;
    ++produced;
    auto dp = run_degenerate_partition(g, k, budget);
    REQUIRE(static_cast<int>(dp.parts.size()) <= k);
    REQUIRE(validate_degenerate_partition(g, dp).ok);
  }
  REQUIRE(produced == 10);
}

TEST_CASE("degenerate partition: pendant tails force a two-vertex part") {
  // triangle 0-1-2 with the tail 0-3-4: the only 2-part split is the
  // triangle plus the tail edge {3, 4}
  Graph g = parse_graph("5 5\n0 1\n0 2\n1 2\n0 3\n3 4");
  REQUIRE_FALSE(find_claw(g).has_value());
  REQUIRE_FALSE(sigma_k(g, 3).has_value());  // alpha = 2, so sigma_3 is infinite
  auto dp = run_degenerate_partition(g, 2);
  REQUIRE(dp.parts.size() == 2);
  REQUIRE(validate_degenerate_partition(g, dp).ok);
  bool has_pair_part = false;
  for (const auto& p : dp.parts)
    if (p.size() == 2) has_pair_part = true;
  REQUIRE(has_pair_part);
}

TEST_CASE("pipeline edge cases: empty graph succeeds, single vertex fails") {
  Graph empty = parse_graph("0 0");
  auto cert = run_pipeline(empty, 1);
  REQUIRE(cert.closure_two_factor.cycles.empty());
  Budget budget;
  REQUIRE(verify_certificate(cert, budget).ok);

  // an isolated vertex violates the degree condition (|{v}| > deg - 1)
  REQUIRE_THROWS_AS(run_pipeline(parse_graph("1 0"), 1), HypothesesFailError);
}

TEST_CASE("degenerate partition validator rejects bad partitions") {
  Graph g = cycle_graph(6);
  DegeneratePartition overlap{{{0, 1, 2, 3, 4, 5}, {0}}};
  REQUIRE_FALSE(validate_degenerate_partition(g, overlap).ok);
  DegeneratePartition nonedge{{{0, 2}, {1, 3, 4, 5}}};
  REQUIRE_FALSE(validate_degenerate_partition(g, nonedge).ok);
  DegeneratePartition good{{{0, 1}, {2, 3, 4, 5}}};
  // {2,3,4,5} induces a path, not a Hamiltonian subgraph
  REQUIRE_FALSE(validate_degenerate_partition(g, good).ok);
  DegeneratePartition whole{{{0, 1, 2, 3, 4, 5}}};
  REQUIRE(validate_degenerate_partition(g, whole).ok);
}

TEST_CASE("pipeline success implies the brute-force bound on desk-scale inputs") {
  SplitMix64 rng(83);
  Budget budget(1'000'000'000);
  int produced = 0;
  for (int trial = 0; trial < 150 && produced < 6; ++trial) {
    Graph g = random_claw_free(6 + rng.below(5), 750 + rng.below(200), rng);
    auto report = evaluate_hypotheses(g, 2, budget);
    if (!report.degree_condition_ok || !report.sigma_ok) continue;
    ++produced;
    auto cert = run_pipeline(g, 2, budget);
    auto brute = min_cycle_two_factor_bruteforce(g, budget);
    REQUIRE(brute.has_value());
    REQUIRE(brute->second <= 2);
    REQUIRE(verify_certificate(cert, budget).ok);
  }
  REQUIRE(produced == 6);
}
