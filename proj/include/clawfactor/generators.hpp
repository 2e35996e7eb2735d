#ifndef CLAWFACTOR_GENERATORS_HPP
#define CLAWFACTOR_GENERATORS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clawfactor/closure.hpp"
#include "clawfactor/common.hpp"
#include "clawfactor/graph.hpp"

namespace clawfactor {

namespace detail {

// Lexicographically smallest adjacency-row string over all vertex orderings.
// At each depth only candidates with the minimal row against the placed
// prefix can start the minimum completion, so the rest are skipped; twins
// (vertices interchangeable by a transposition automorphism) are collapsed,
// and subtrees whose prefix already exceeds the incumbent are cut.
class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g), n_(g.vertex_count()) {}

  std::vector<std::uint64_t> run() {
    if (n_ > 64) throw std::invalid_argument("canonical form limited to 64 vertices");
    placed_.clear();
    used_.assign(n_, 0);
    rows_.assign(n_, 0);
    best_.clear();
    rec(0, 0);
    return best_;
  }

 private:
  std::uint64_t row_of(int v, int depth) const {
    std::uint64_t row = 0;
    for (int i = 0; i < depth; ++i)
      if (g_.adjacent(v, placed_[i])) row |= (1ULL << i);
    return row;
  }

  // cmp: -1 when the current prefix is already strictly below the incumbent,
  // 0 when equal so far. Stale flags after incumbent updates can only skip
  // prunes, never prune a true minimum.
  void rec(int depth, int cmp) {
    if (depth == n_) {
      if (best_.empty() || rows_ < best_) best_ = rows_;
      return;
    }
    std::uint64_t min_row = ~0ULL;
    for (int v = 0; v < n_; ++v)
      if (!used_[v]) min_row = std::min(min_row, row_of(v, depth));
    if (!best_.empty() && cmp == 0 && min_row > best_[depth]) return;
    int child_cmp = best_.empty() ? 0 : (cmp == -1 || min_row < best_[depth] ? -1 : 0);

    std::vector<int> tried;
    for (int v = 0; v < n_; ++v) {
      if (used_[v] || row_of(v, depth) != min_row) continue;
      bool twin = false;
      for (int t : tried) {
        bool same = true;
        for (int w = 0; w < n_ && same; ++w) {
          if (w == t || w == v) continue;
          if (g_.adjacent(t, w) != g_.adjacent(v, w)) same = false;
        }
        if (same) {
          twin = true;
          break;
        }
      }
      if (twin) continue;
      tried.push_back(v);
      used_[v] = 1;
      placed_.push_back(v);
      rows_[depth] = min_row;
      rec(depth + 1, child_cmp);
      placed_.pop_back();
      used_[v] = 0;
      rows_[depth] = 0;
    }
  }

  const Graph& g_;
  int n_;
  std::vector<int> placed_;
  std::vector<char> used_;
  std::vector<std::uint64_t> rows_, best_;
};

}  // namespace detail

// Order-prefixed canonical certificate; equal strings iff isomorphic.
inline std::string canonical_certificate(const Graph& g) {
  detail::Canonizer canon(g);
  auto rows = canon.run();
  std::string out = std::to_string(g.vertex_count()) + ":";
  for (auto r : rows)
    for (int nib = 15; nib >= 0; --nib) out.push_back("0123456789abcdef"[(r >> (nib * 4)) & 0xf]);
  return out;
}

inline bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return canonical_certificate(a) == canonical_certificate(b);
}

// Every connected triangle-free graph with 1..max_edges edges, one
// representative per isomorphism class, grouped by edge count and ordered by
// canonical certificate. Level m+1 is reached from level m either by joining
// two existing non-adjacent vertices or by attaching a fresh vertex, which
// reaches every connected graph (trees lose a leaf, cyclic graphs a cycle
// edge).
inline std::vector<Graph> enumerate_connected_triangle_free(int max_edges) {
  std::vector<Graph> out;
  if (max_edges < 1) return out;
  std::map<std::string, Graph> level;
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  level.emplace(canonical_certificate(k2), k2);

  auto emit_level = [&](const std::map<std::string, Graph>& lv) {
    for (const auto& [cert, graph] : lv) out.push_back(graph);
  };
  emit_level(level);

  for (int m = 2; m <= max_edges; ++m) {
    std::map<std::string, Graph> next;
    for (const auto& [cert, g] : level) {
      const int n = g.vertex_count();
      // join two non-adjacent vertices, rejecting triangles
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
          if (g.adjacent(u, v)) continue;
          bool triangle = false;
          for (int w : g.neighbors(u))
            if (g.adjacent(w, v)) {
              triangle = true;
              break;
            }
          if (triangle) continue;
          auto edges = g.edges();
          edges.emplace_back(u, v);
          Graph child = Graph::from_edges(n, std::move(edges));
          next.emplace(canonical_certificate(child), child);
        }
      // attach a fresh vertex
      for (int u = 0; u < n; ++u) {
        auto edges = g.edges();
        edges.emplace_back(u, n);
        Graph child = Graph::from_edges(n + 1, std::move(edges));
        next.emplace(canonical_certificate(child), child);
      }
    }
    emit_level(next);
    level = std::move(next);
  }
  return out;
}

inline Graph random_graph(int n, int density_permille, SplitMix64& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.chance(density_permille, 1000)) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

// Random graph made claw-free by repeatedly deleting one edge of a claw
// witness (the center-to-smallest-leaf edge) until none remains.
inline Graph random_claw_free(int n, int density_permille, SplitMix64& rng) {
  Graph g = random_graph(n, density_permille, rng);
  for (;;) {
    auto claw = find_claw(g);
    if (!claw) return g;
    auto [center, l1, l2, l3] = *claw;
    (void)l2;
    (void)l3;
    auto edges = g.edges();
    edges.erase(std::find(edges.begin(), edges.end(),
                          std::pair<int, int>{std::min(center, l1), std::max(center, l1)}));
    g = Graph::from_edges(n, std::move(edges));
  }
}

// Random graph made triangle-free by deleting one edge per triangle.
inline Graph random_triangle_free(int n, int density_permille, SplitMix64& rng) {
  Graph g = random_graph(n, density_permille, rng);
  for (;;) {
    int hit = -1;
    for (int id = 0; id < g.edge_count() && hit < 0; ++id) {
      auto [u, v] = g.edge(id);
      for (int w : g.neighbors(u))
        if (w != v && g.adjacent(w, v)) {
          hit = id;
          break;
        }
    }
    if (hit < 0) return g;
    auto edges = g.edges();
    edges.erase(edges.begin() + hit);
    g = Graph::from_edges(n, std::move(edges));
  }
}

}  // namespace clawfactor

#endif  // CLAWFACTOR_GENERATORS_HPP
