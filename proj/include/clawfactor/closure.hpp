#ifndef CLAWFACTOR_CLOSURE_HPP
#define CLAWFACTOR_CLOSURE_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "clawfactor/common.hpp"
#include "clawfactor/graph.hpp"

namespace clawfactor {

struct NotClawFreeError : std::runtime_error {
  std::array<int, 4> witness;  // center, three pairwise non-adjacent leaves
  explicit NotClawFreeError(std::array<int, 4> w)
      : std::runtime_error("graph contains an induced claw at vertex " + std::to_string(w[0])),
        witness(w) {}
};

// Smallest induced K_{1,3} witness (center, leaves), or nullopt.
inline std::optional<std::array<int, 4>> find_claw(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& nb = g.neighbors(v);
    const int d = static_cast<int>(nb.size());
    if (d < 3) continue;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        if (g.adjacent(nb[i], nb[j])) continue;
        for (int l = j + 1; l < d; ++l) {
          if (g.adjacent(nb[i], nb[l]) || g.adjacent(nb[j], nb[l])) continue;
          return std::array<int, 4>{v, nb[i], nb[j], nb[l]};
        }
      }
  }
  return std::nullopt;
}

inline bool is_claw_free(const Graph& g) { return !find_claw(g).has_value(); }

namespace detail {

inline bool neighborhood_connected(const std::vector<Bits>& adj, int n, int v) {
  Bits nb = adj[v];
  if (nb.none()) return false;
  int start = first_bit(nb);
  Bits seen;
  seen.set(start);
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    Bits fresh = adj[x] & nb & ~seen;
    for (int w = first_bit(fresh); w < n; w = next_bit(fresh, w)) {
      seen.set(w);
      stack.push_back(w);
    }
  }
  return seen == nb;
}

inline bool neighborhood_is_clique(const std::vector<Bits>& adj, int n, int v) {
  Bits nb = adj[v];
  for (int x = first_bit(nb); x < n; x = next_bit(nb, x)) {
    Bits missing = nb & ~adj[x];
    missing.reset(x);
    if (missing.any()) return false;
  }
  return true;
}

}  // namespace detail

// True iff the subgraph induced on N(v) is connected and non-empty.
inline bool is_locally_connected(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
  if (!g.has_kernel_bits()) throw std::invalid_argument("graph too large for exact search");
  std::vector<Bits> adj(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); ++u) adj[u] = g.adjacency_bits(u);
  return detail::neighborhood_connected(adj, g.vertex_count(), v);
}

struct ClosureStep {
  int vertex = -1;
  std::vector<int> added_edge_ids;  // ids in the output graph's edge index
  bool operator==(const ClosureStep&) const = default;
};

struct ClosureTrace {
  Graph input;
  Graph output;
  std::vector<ClosureStep> steps;
};

// Ryjacek closure: repeatedly complete the neighborhood of a locally
// connected vertex whose neighborhood is not yet a clique, until no such
// vertex remains. `order` optionally reranks the vertex-selection priority
// (used to test order-independence of the fixpoint); by default the
// smallest eligible vertex id moves first.
inline ClosureTrace closure(const Graph& g, const std::vector<int>& order = {}) {
  if (!g.has_kernel_bits()) throw std::invalid_argument("graph too large for exact search");
  if (auto claw = find_claw(g)) throw NotClawFreeError(*claw);
  const int n = g.vertex_count();

  std::vector<int> rank(n);
  if (order.empty()) {
    for (int i = 0; i < n; ++i) rank[i] = i;
  } else {
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("order must list every vertex");
    for (int i = 0; i < n; ++i) rank[order[i]] = i;
  }

  std::vector<Bits> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.adjacency_bits(v);

  auto eligible = [&](int v) {
    return detail::neighborhood_connected(adj, n, v) && !detail::neighborhood_is_clique(adj, n, v);
  };

  std::vector<char> is_eligible(n, 0), dirty(n, 1);
  std::vector<std::pair<int, std::vector<std::pair<int, int>>>> raw_steps;

  for (;;) {
    for (int v = 0; v < n; ++v)
      if (dirty[v]) {
        is_eligible[v] = eligible(v) ? 1 : 0;
        dirty[v] = 0;
      }
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (is_eligible[v] && (pick < 0 || rank[v] < rank[pick])) pick = v;
    if (pick < 0) break;

    Bits nb = adj[pick];
    std::vector<std::pair<int, int>> added;
    for (int a = first_bit(nb); a < n; a = next_bit(nb, a))
      for (int b = next_bit(nb, a); b < n; b = next_bit(nb, b))
        if (!adj[a].test(b)) {
          adj[a].set(b);
          adj[b].set(a);
          added.emplace_back(a, b);
        }
    raw_steps.emplace_back(pick, std::move(added));
    // eligibility can only change where some neighborhood gained an edge
    for (auto [a, b] : raw_steps.back().second) {
      dirty[a] = dirty[b] = 1;
      for (int w = 0; w < n; ++w)
        if (adj[a].test(w) || adj[b].test(w)) dirty[w] = 1;
    }
  }

  std::vector<std::pair<int, int>> out_edges;
  for (int v = 0; v < n; ++v)
    for (int w = next_bit(adj[v], v); w < n; w = next_bit(adj[v], w)) out_edges.emplace_back(v, w);
  ClosureTrace trace;
  trace.input = g;
  trace.output = Graph::from_edges(n, std::move(out_edges));
  for (auto& [v, pairs] : raw_steps) {
    ClosureStep step;
    step.vertex = v;
    for (auto [a, b] : pairs) step.added_edge_ids.push_back(trace.output.edge_id(a, b));
    std::sort(step.added_edge_ids.begin(), step.added_edge_ids.end());
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

// Replays a trace from its input graph, checking that every step completes a
// locally connected vertex with a non-clique neighborhood, that the added
// edges are exactly the missing neighborhood pairs, that the result matches
// the recorded output, and that the output is a fixpoint.
inline Validation validate_closure_trace(const ClosureTrace& trace) {
  const int n = trace.input.vertex_count();
  if (trace.output.vertex_count() != n) return invalid("input/output vertex counts differ");
  if (!trace.input.has_kernel_bits()) return invalid("graph too large for exact search");
  std::vector<Bits> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = trace.input.adjacency_bits(v);

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    if (step.vertex < 0 || step.vertex >= n) return invalid("step vertex out of range");
    if (!detail::neighborhood_connected(adj, n, step.vertex))
      return invalid("step " + std::to_string(i) + " vertex not locally connected");
    if (detail::neighborhood_is_clique(adj, n, step.vertex))
      return invalid("step " + std::to_string(i) + " neighborhood already complete");
    Bits nb = adj[step.vertex];
    std::vector<std::pair<int, int>> missing;
    for (int a = first_bit(nb); a < n; a = next_bit(nb, a))
      for (int b = next_bit(nb, a); b < n; b = next_bit(nb, b))
        if (!adj[a].test(b)) missing.emplace_back(a, b);
    std::vector<std::pair<int, int>> recorded;
    for (int id : step.added_edge_ids) {
      if (id < 0 || id >= trace.output.edge_count()) return invalid("added edge id out of range");
      recorded.push_back(trace.output.edge(id));
    }
    std::sort(recorded.begin(), recorded.end());
    std::sort(missing.begin(), missing.end());
    if (recorded != missing)
      return invalid("step " + std::to_string(i) + " does not complete the neighborhood");
    for (auto [a, b] : missing) {
      adj[a].set(b);
      adj[b].set(a);
    }
  }

  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (adj[v].test(w) != trace.output.adjacent(v, w))
        return invalid("replayed graph differs from recorded output");
  for (int v = 0; v < n; ++v)
    if (detail::neighborhood_connected(adj, n, v) && !detail::neighborhood_is_clique(adj, n, v))
      return invalid("output is not a closure fixpoint (vertex " + std::to_string(v) + ")");
  return valid();
}

}  // namespace clawfactor

#endif  // CLAWFACTOR_CLOSURE_HPP
