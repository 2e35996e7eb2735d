#ifndef CLAWFACTOR_MATCHING_HPP
#define CLAWFACTOR_MATCHING_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "clawfactor/common.hpp"
#include "clawfactor/graph.hpp"

namespace clawfactor {

struct Matching {
  std::vector<int> edge_ids;
};

inline Validation validate_matching(const Graph& g, const Matching& m) {
  std::vector<char> hit(g.vertex_count(), 0);
  for (int id : m.edge_ids) {
    if (id < 0 || id >= g.edge_count()) return invalid("matching edge id out of range");
    auto [a, b] = g.edge(id);
    if (hit[a] || hit[b]) return invalid("matched edges share vertex");
    hit[a] = hit[b] = 1;
  }
  return valid();
}

namespace detail {

// Edmonds' blossom algorithm, plain O(V^3) with explicit base arrays.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const std::vector<std::vector<int>>& adj)
      : adj_(adj), n_(static_cast<int>(adj.size())), match_(n_, -1), parent_(n_), base_(n_) {}

  const std::vector<int>& solve() {
    // greedy seed
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0)
        for (int u : adj_[v])
          if (match_[u] < 0) {
            match_[v] = u;
            match_[u] = v;
            break;
          }
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0) {
        int u = find_path(v);
        if (u >= 0) augment(u);
      }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(n_, 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] < 0) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child, std::vector<char>& in_blossom) {
    while (base_[v] != b) {
      in_blossom[base_[v]] = 1;
      in_blossom[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] >= 0 && parent_[match_[to]] >= 0)) {
          int cur_base = lca(v, to);
          std::vector<char> in_blossom(n_, 0);
          mark_path(v, cur_base, to, in_blossom);
          mark_path(to, cur_base, v, in_blossom);
          for (int i = 0; i < n_; ++i)
            if (in_blossom[base_[i]]) {
              base_[i] = cur_base;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
        } else if (parent_[to] < 0) {
          parent_[to] = v;
          if (match_[to] < 0) return to;
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  void augment(int u) {
    while (u >= 0) {
      int pv = parent_[u];
      int ppv = match_[pv];
      match_[u] = pv;
      match_[pv] = u;
      u = ppv;
    }
  }

  const std::vector<std::vector<int>>& adj_;
  int n_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_;
};

}  // namespace detail

inline Matching max_matching_general(const Graph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v);
  detail::BlossomMatcher matcher(adj);
  const auto& mate = matcher.solve();
  Matching m;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (mate[v] > v) m.edge_ids.push_back(g.edge_id(v, mate[v]));
  std::sort(m.edge_ids.begin(), m.edge_ids.end());
  return m;
}

// ---------------------------------------------------------------------------
// 2-factor via Tutte's gadget.
//
// Each vertex v of degree d gets d external stubs (one per incident edge)
// and d-2 internal fillers, joined completely; each original edge becomes a
// stub-stub edge. A perfect matching of the gadget leaves exactly two stubs
// of each vertex matched across to neighbors, i.e. the crossing edges form a
// 2-regular spanning subgraph; conversely any 2-factor extends to a perfect
// matching by pairing its non-edges' stubs with fillers.
// ---------------------------------------------------------------------------

inline std::optional<TwoFactor> two_factor(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return TwoFactor{};
  for (int v = 0; v < n; ++v)
    if (g.degree(v) < 2) return std::nullopt;

  const int m = g.edge_count();
  // stub ids: per edge, one for each endpoint
  std::vector<int> stub_lo(m), stub_hi(m);
  int next_id = 0;
  std::vector<std::vector<int>> stubs_of(n);
  for (int id = 0; id < m; ++id) {
    auto [u, v] = g.edge(id);
    stub_lo[id] = next_id++;
    stubs_of[u].push_back(stub_lo[id]);
    stub_hi[id] = next_id++;
    stubs_of[v].push_back(stub_hi[id]);
  }
  std::vector<std::vector<int>> fillers_of(n);
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < g.degree(v) - 2; ++j) fillers_of[v].push_back(next_id++);

  std::vector<std::vector<int>> adj(next_id);
  for (int id = 0; id < m; ++id) {
    adj[stub_lo[id]].push_back(stub_hi[id]);
    adj[stub_hi[id]].push_back(stub_lo[id]);
  }
  for (int v = 0; v < n; ++v)
    for (int s : stubs_of[v])
      for (int f : fillers_of[v]) {
        adj[s].push_back(f);
        adj[f].push_back(s);
      }

  detail::BlossomMatcher matcher(adj);
  const auto& mate = matcher.solve();
  for (int x = 0; x < next_id; ++x)
    if (mate[x] < 0) return std::nullopt;

  std::vector<std::vector<int>> chosen(n);
  for (int id = 0; id < m; ++id)
    if (mate[stub_lo[id]] == stub_hi[id]) {
      auto [u, v] = g.edge(id);
      chosen[u].push_back(v);
      chosen[v].push_back(u);
    }
  for (int v = 0; v < n; ++v)
    if (chosen[v].size() != 2) throw std::logic_error("gadget matching is not 2-regular");

  TwoFactor tf;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc{s};
    seen[s] = 1;
    int prev = -1, cur = s;
    for (;;) {
      int nxt = (chosen[cur][0] != prev) ? chosen[cur][0] : chosen[cur][1];
      if (nxt == s) break;
      cyc.push_back(nxt);
      seen[nxt] = 1;
      prev = cur;
      cur = nxt;
    }
    tf.cycles.push_back(canonical_cycle(std::move(cyc)));
  }
  std::sort(tf.cycles.begin(), tf.cycles.end(), [](const Cycle& a, const Cycle& b) {
    return a.vertices.front() < b.vertices.front();
  });
  return tf;
}

// ---------------------------------------------------------------------------
// Exhaustive minimum-cycle 2-factor.
//
// Enumerates every 2-regular spanning subgraph by deciding, vertex by
// vertex, which forward edges complete its degree to exactly two. With
// stop_at set the search returns the first 2-factor met whose cycle count is
// within the bound instead of proving the exact minimum.
// ---------------------------------------------------------------------------

inline std::optional<std::pair<TwoFactor, int>> min_cycle_two_factor_bruteforce(
    const Graph& g, Budget& budget, std::optional<int> stop_at = std::nullopt) {
  const int n = g.vertex_count();
  if (n == 0) return std::pair{TwoFactor{}, 0};
  for (int v = 0; v < n; ++v)
    if (g.degree(v) < 2) return std::nullopt;

  std::vector<std::vector<int>> forward(n);  // neighbors with larger ids
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v))
      if (w > v) forward[v].push_back(w);

  std::vector<int> deg(n, 0);
  std::vector<std::vector<int>> chosen(n);
  std::optional<std::pair<TwoFactor, int>> best;
  bool done = false;

  auto count_cycles = [&]() -> TwoFactor {
    TwoFactor tf;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      std::vector<int> cyc{s};
      seen[s] = 1;
      int prev = -1, cur = s;
      for (;;) {
        int nxt = (chosen[cur][0] != prev) ? chosen[cur][0] : chosen[cur][1];
        if (nxt == s) break;
        cyc.push_back(nxt);
        seen[nxt] = 1;
        prev = cur;
        cur = nxt;
      }
      tf.cycles.push_back(canonical_cycle(std::move(cyc)));
    }
    return tf;
  };

  std::function<void(int)> rec = [&](int v) {
    if (done) return;
    budget.charge();
    if (v == n) {
      TwoFactor tf = count_cycles();
      int cycles = static_cast<int>(tf.cycles.size());
      if (!best || cycles < best->second) best = {std::move(tf), cycles};
      if (stop_at && best->second <= *stop_at) done = true;
      return;
    }
    int need = 2 - deg[v];
    if (need < 0) return;
    std::vector<int> avail;
    for (int w : forward[v])
      if (deg[w] < 2) avail.push_back(w);
    if (static_cast<int>(avail.size()) < need) return;
    // choose `need` of avail
    std::vector<int> pick;
    std::function<void(int)> combos = [&](int idx) {
      if (done) return;
      if (static_cast<int>(pick.size()) == need) {
        for (int w : pick) {
          ++deg[v];
          ++deg[w];
          chosen[v].push_back(w);
          chosen[w].push_back(v);
        }
        rec(v + 1);
        for (int w : pick) {
          --deg[v];
          --deg[w];
          chosen[v].pop_back();
          chosen[w].pop_back();
        }
        return;
      }
      if (idx == static_cast<int>(avail.size())) return;
      if (static_cast<int>(avail.size()) - idx < need - static_cast<int>(pick.size())) return;
      pick.push_back(avail[idx]);
      combos(idx + 1);
      pick.pop_back();
      combos(idx + 1);
    };
    combos(0);
  };
  rec(0);
  if (!best) return std::nullopt;
  std::sort(best->first.cycles.begin(), best->first.cycles.end(),
            [](const Cycle& a, const Cycle& b) { return a.vertices.front() < b.vertices.front(); });
  return best;
}

inline std::optional<std::pair<TwoFactor, int>> min_cycle_two_factor_bruteforce(const Graph& g) {
  Budget b;
  return min_cycle_two_factor_bruteforce(g, b);
}

// ---------------------------------------------------------------------------
// Bipartite matching with Hall-violator extraction.
// ---------------------------------------------------------------------------

struct HallCertificate {
  std::optional<Matching> matching;        // covers the designated side
  std::optional<std::vector<int>> violator;  // S with |N(S)| < |S|, inclusion-minimal
};

// `side` must be independent in f. Either returns a matching covering side,
// or an inclusion-minimal violator: the alternating-reachability set of the
// smallest unmatched side vertex under a maximum matching, then shrunk in
// ascending id order while the deficiency persists (normally a no-op).
inline HallCertificate bipartite_matching_or_violator(const Graph& f,
                                                      const std::vector<int>& side) {
  for (std::size_t i = 0; i < side.size(); ++i)
    for (std::size_t j = i + 1; j < side.size(); ++j)
      if (f.adjacent(side[i], side[j]))
        throw std::invalid_argument("designated side is not independent");

  const int n = f.vertex_count();
  std::vector<char> in_side(n, 0);
  for (int x : side) in_side[x] = 1;
  std::vector<int> mate(n, -1);

  std::vector<char> visited(n, 0);
  std::function<bool(int)> try_augment = [&](int x) -> bool {
    for (int t : f.neighbors(x)) {
      if (in_side[t] || visited[t]) continue;
      visited[t] = 1;
      if (mate[t] < 0 || try_augment(mate[t])) {
        mate[t] = x;
        mate[x] = t;
        return true;
      }
    }
    return false;
  };
  std::vector<int> side_sorted = side;
  std::sort(side_sorted.begin(), side_sorted.end());
  for (int x : side_sorted) {
    std::fill(visited.begin(), visited.end(), 0);
    try_augment(x);
  }

  std::vector<int> unmatched;
  for (int x : side_sorted)
    if (mate[x] < 0) unmatched.push_back(x);
  if (unmatched.empty()) {
    Matching m;
    for (int x : side_sorted) m.edge_ids.push_back(f.edge_id(x, mate[x]));
    std::sort(m.edge_ids.begin(), m.edge_ids.end());
    return {std::move(m), std::nullopt};
  }

  // alternating reachability from the smallest unmatched side vertex
  std::vector<char> reached(n, 0);
  std::vector<int> stack{unmatched.front()};
  reached[unmatched.front()] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int t : f.neighbors(x)) {
      if (reached[t]) continue;
      reached[t] = 1;
      if (mate[t] >= 0 && !reached[mate[t]]) {
        reached[mate[t]] = 1;
        stack.push_back(mate[t]);
      }
    }
  }
  std::vector<int> violator;
  for (int x : side_sorted)
    if (reached[x]) violator.push_back(x);

  auto neighborhood_size = [&](const std::vector<int>& s) {
    std::vector<char> seen(n, 0);
    int count = 0;
    for (int x : s)
      for (int t : f.neighbors(x))
        if (!seen[t]) {
          seen[t] = 1;
          ++count;
        }
    return count;
  };

  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i < violator.size(); ++i) {
      std::vector<int> candidate = violator;
      candidate.erase(candidate.begin() + static_cast<long>(i));
      if (!candidate.empty() &&
          neighborhood_size(candidate) < static_cast<int>(candidate.size())) {
        violator = std::move(candidate);
        shrunk = true;
        break;
      }
    }
  }
  return {std::nullopt, std::move(violator)};
}

}  // namespace clawfactor

#endif  // CLAWFACTOR_MATCHING_HPP
