#ifndef CLAWFACTOR_GRAPH_HPP
#define CLAWFACTOR_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clawfactor/common.hpp"

namespace clawfactor {

// Immutable simple undirected graph. Vertices are dense 0-based ids and
// edge ids are dense ids in lexicographic (u, v) order with u < v, so
// serialized certificates are stable across runs.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(int vertex_count, std::vector<std::pair<int, int>> edge_list) {
    if (vertex_count < 0) throw ParseError("vertex count must be non-negative");
    for (auto& [u, v] : edge_list) {
      if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
      if (u < 0 || v >= vertex_count)
        throw ParseError("vertex id out of range in edge (" + std::to_string(u) + ", " +
                         std::to_string(v) + ")");
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
      throw ParseError("duplicate edge");

    Graph g;
    g.n_ = vertex_count;
    g.edges_ = std::move(edge_list);
    g.adj_.assign(g.n_, {});
    g.incident_.assign(g.n_, {});
    for (int id = 0; id < static_cast<int>(g.edges_.size()); ++id) {
      auto [u, v] = g.edges_[id];
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
      g.incident_[u].push_back(id);
      g.incident_[v].push_back(id);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    if (g.n_ <= kMaxKernelVertices) {
      g.bits_.assign(g.n_, Bits{});
      for (auto [u, v] : g.edges_) {
        g.bits_[u].set(v);
        g.bits_[v].set(u);
      }
    }
    return g;
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool adjacent(int u, int v) const {
    if (u == v) return false;
    if (!bits_.empty()) return bits_[u].test(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::pair<int, int> edge(int id) const { return edges_[id]; }

  // Dense edge id for the unordered pair, or -1 when not an edge.
  int edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto key = std::pair<int, int>{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return static_cast<int>(it - edges_.begin());
  }

  int other_end(int edge_id, int v) const {
    auto [a, b] = edges_[edge_id];
    return a == v ? b : a;
  }

  bool has_kernel_bits() const { return !bits_.empty() || n_ == 0; }

  const Bits& adjacency_bits(int v) const {
    if (bits_.empty()) throw std::logic_error("graph too large for bitset kernels");
    return bits_[v];
  }

  Bits vertex_mask() const {
    Bits all;
    for (int v = 0; v < n_; ++v) all.set(v);
    return all;
  }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> incident_;
  std::vector<Bits> bits_;
};

struct Validation {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

inline Validation valid() { return {true, ""}; }
inline Validation invalid(std::string msg) { return {false, std::move(msg)}; }

// ---------------------------------------------------------------------------
// Parsing and serialization.
//
// Edge-list text: line 1 "n m", then m lines "u v" with 0 <= u < v < n.
// graph6 is accepted when the first byte is a valid graph6 size byte;
// serialization always emits the edge-list format.
// ---------------------------------------------------------------------------

namespace detail {

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  int edges_seen = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0) throw ParseError("malformed header line: " + line);
      std::string extra;
      if (ls >> extra) throw ParseError("trailing tokens on header line: " + line);
      continue;
    }
    int u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) throw ParseError("malformed edge line: " + line);
    std::string extra;
    if (ls >> extra) throw ParseError("trailing tokens on edge line: " + line);
    if (u >= v) throw ParseError("edge endpoints must satisfy u < v: " + line);
    edges.emplace_back(u, v);
    ++edges_seen;
  }
  if (n < 0) throw ParseError("empty input");
  if (edges_seen != m)
    throw ParseError("header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(edges_seen));
  return Graph::from_edges(n, std::move(edges));
}

inline Graph parse_graph6(const std::string& text) {
  std::string s = text;
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s = s.substr(header.size());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  if (s.empty()) throw ParseError("empty graph6 string");

  std::size_t pos = 0;
  auto byte = [&](std::size_t i) -> int {
    if (i >= s.size()) throw ParseError("truncated graph6 string");
    int c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126) throw ParseError("invalid graph6 byte");
    return c - 63;
  };

  long long n;
  if (s[0] != '~') {
    n = byte(0);
    pos = 1;
  } else {
    if (s.size() > 1 && s[1] == '~') throw ParseError("graph6 order too large");
    n = (static_cast<long long>(byte(1)) << 12) | (byte(2) << 6) | byte(3);
    pos = 4;
  }
  if (n > 100000) throw ParseError("graph6 order too large");

  std::vector<std::pair<int, int>> edges;
  int acc = 0, acc_bits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (acc_bits == 0) {
        acc = byte(pos++);
        acc_bits = 6;
      }
      if (acc & (1 << (acc_bits - 1))) edges.emplace_back(i, j);
      --acc_bits;
    }
  }
  if (pos != s.size()) throw ParseError("trailing bytes in graph6 string");
  return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

}  // namespace detail

inline Graph parse_graph(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\r' || text[i] == '\t'))
    ++i;
  if (i == text.size()) throw ParseError("empty input");
  unsigned char c = static_cast<unsigned char>(text[i]);
  if (c == '>' || (c >= 63 && c <= 126 && !(c >= '0' && c <= '9')))
    return detail::parse_graph6(text.substr(i));
  return detail::parse_edge_list(text);
}

inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Basic predicates and decompositions.
// ---------------------------------------------------------------------------

inline bool is_triangle_free(const Graph& g) {
  if (g.has_kernel_bits()) {
    for (auto [u, v] : g.edges())
      if ((g.adjacency_bits(u) & g.adjacency_bits(v)).any()) return false;
    return true;
  }
  for (auto [u, v] : g.edges()) {
    const auto& a = g.neighbors(u);
    const auto& b = g.neighbors(v);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return false;
      (a[i] < b[j]) ? ++i : ++j;
    }
  }
  return true;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.vertex_count(), 0);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// ---------------------------------------------------------------------------
// Cycles, 2-factors, closed trails, edge subgraphs.
// ---------------------------------------------------------------------------

struct Cycle {
  std::vector<int> vertices;
  bool operator==(const Cycle&) const = default;
};

// Canonical form: rotate so the minimum vertex is first, then pick the
// direction with the smaller second vertex.
inline Cycle canonical_cycle(std::vector<int> vs) {
  if (vs.size() < 3) return {std::move(vs)};
  auto mp = std::min_element(vs.begin(), vs.end());
  std::rotate(vs.begin(), mp, vs.end());
  if (vs[1] > vs.back()) std::reverse(vs.begin() + 1, vs.end());
  return {std::move(vs)};
}

inline Validation validate_cycle(const Graph& g, const Cycle& c) {
  const auto& vs = c.vertices;
  if (vs.size() < 3) return invalid("cycle has fewer than 3 vertices");
  std::vector<int> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return invalid("cycle repeats a vertex");
  if (sorted.front() < 0 || sorted.back() >= g.vertex_count())
    return invalid("cycle vertex out of range");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    int a = vs[i], b = vs[(i + 1) % vs.size()];
    if (!g.adjacent(a, b))
      return invalid("cycle uses non-edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  return valid();
}

struct TwoFactor {
  std::vector<Cycle> cycles;
  bool operator==(const TwoFactor&) const = default;
};

inline Validation validate_two_factor(const Graph& g, const TwoFactor& tf) {
  std::vector<char> covered(g.vertex_count(), 0);
  for (const auto& c : tf.cycles) {
    if (auto v = validate_cycle(g, c); !v) return v;
    for (int x : c.vertices) {
      if (covered[x]) return invalid("vertex " + std::to_string(x) + " covered twice");
      covered[x] = 1;
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!covered[v]) return invalid("vertex " + std::to_string(v) + " not covered");
  return valid();
}

struct EdgeSubgraph {
  std::vector<int> edge_ids;
};

inline Validation validate_edge_subgraph(const Graph& g, const EdgeSubgraph& es) {
  std::vector<int> ids = es.edge_ids;
  std::sort(ids.begin(), ids.end());
  if (!ids.empty() && (ids.front() < 0 || ids.back() >= g.edge_count()))
    return invalid("edge id out of range");
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    return invalid("repeated edge id");
  return valid();
}

// Closed walk without edge repetition, stored as the edge sequence from an
// anchor vertex. Vertices may repeat (figure-eight trails are legal).
struct ClosedTrail {
  int anchor = -1;
  std::vector<int> edge_ids;
  bool operator==(const ClosedTrail&) const = default;
};

inline Validation validate_closed_trail(const Graph& g, const ClosedTrail& t) {
  if (t.edge_ids.empty()) return invalid("closed trail has no edges");
  std::vector<int> ids = t.edge_ids;
  std::sort(ids.begin(), ids.end());
  if (ids.front() < 0 || ids.back() >= g.edge_count()) return invalid("trail edge id out of range");
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    return invalid("trail repeats an edge");
  auto [a0, b0] = g.edge(t.edge_ids.front());
  if (t.anchor != a0 && t.anchor != b0) return invalid("anchor not on first trail edge");
  int cur = t.anchor;
  for (int id : t.edge_ids) {
    auto [a, b] = g.edge(id);
    if (cur != a && cur != b) return invalid("trail edges do not chain");
    cur = (cur == a) ? b : a;
  }
  if (cur != t.anchor) return invalid("trail does not return to its anchor");
  return valid();
}

// Walk vertices w[0..r-1] with w[0] = anchor; edge i joins w[i] and w[i+1 mod r].
inline std::vector<int> trail_vertex_walk(const Graph& g, const ClosedTrail& t) {
  std::vector<int> walk;
  walk.reserve(t.edge_ids.size());
  int cur = t.anchor;
  for (int id : t.edge_ids) {
    walk.push_back(cur);
    cur = g.other_end(id, cur);
  }
  return walk;
}

// Equivalent edge-set characterization: nonempty, connected, all degrees even.
inline bool is_closed_trail_edge_set(const Graph& g, const std::vector<int>& edge_ids) {
  if (edge_ids.empty()) return false;
  std::vector<int> deg(g.vertex_count(), 0);
  for (int id : edge_ids) {
    auto [a, b] = g.edge(id);
    ++deg[a];
    ++deg[b];
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (deg[v] % 2) return false;
  // connectivity over the touched vertices
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int id : edge_ids) {
    auto [a, b] = g.edge(id);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  int start = g.edge(edge_ids.front()).first;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (deg[v] > 0 && !seen[v]) return false;
  return true;
}

// Deterministic Hierholzer circuit over a connected even edge set; the anchor
// is the smallest touched vertex and the smallest unused edge is taken first.
inline ClosedTrail closed_trail_from_edges(const Graph& g, std::vector<int> edge_ids) {
  std::sort(edge_ids.begin(), edge_ids.end());
  if (!is_closed_trail_edge_set(g, edge_ids))
    throw std::logic_error("edge set is not a closed trail (connected, even degrees)");
  int anchor = g.vertex_count();
  for (int id : edge_ids) anchor = std::min({anchor, g.edge(id).first, g.edge(id).second});

  std::vector<std::vector<int>> inc(g.vertex_count());
  for (int id : edge_ids) {
    auto [a, b] = g.edge(id);
    inc[a].push_back(id);
    inc[b].push_back(id);
  }
  for (auto& v : inc) std::sort(v.begin(), v.end());
  std::vector<std::size_t> ptr(g.vertex_count(), 0);
  std::vector<char> used(g.edge_count(), 0);

  std::vector<int> vertex_stack{anchor};
  std::vector<int> edge_stack;
  std::vector<int> circuit;  // edge sequence, built in reverse
  while (!vertex_stack.empty()) {
    int v = vertex_stack.back();
    while (ptr[v] < inc[v].size() && used[inc[v][ptr[v]]]) ++ptr[v];
    if (ptr[v] == inc[v].size()) {
      vertex_stack.pop_back();
      if (!edge_stack.empty()) {
        circuit.push_back(edge_stack.back());
        edge_stack.pop_back();
      }
    } else {
      int id = inc[v][ptr[v]];
      used[id] = 1;
      vertex_stack.push_back(g.other_end(id, v));
      edge_stack.push_back(id);
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  ClosedTrail t{anchor, std::move(circuit)};
  return t;
}

// ---------------------------------------------------------------------------
// Cycle enumeration: every cycle of length <= length_cap exactly once up to
// rotation and reflection, in canonical form.
// ---------------------------------------------------------------------------

inline void enumerate_cycles(const Graph& g, int length_cap,
                             const std::function<bool(const Cycle&)>& visit) {
  if (length_cap < 3) throw std::invalid_argument("cycle length cap must be at least 3");
  const int n = g.vertex_count();
  std::vector<int> path;
  std::vector<char> used(n, 0);
  bool stop = false;

  std::function<void(int, int)> dfs = [&](int start, int last) {
    if (stop) return;
    for (int w : g.neighbors(last)) {
      if (stop) return;
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        if (!visit(Cycle{path})) {
          stop = true;
          return;
        }
        continue;
      }
      if (w <= start || used[w]) continue;
      if (static_cast<int>(path.size()) >= length_cap) continue;
      used[w] = 1;
      path.push_back(w);
      dfs(start, w);
      path.pop_back();
      used[w] = 0;
    }
  };

  for (int s = 0; s < n && !stop; ++s) {
    path.assign(1, s);
    std::fill(used.begin(), used.end(), 0);
    used[s] = 1;
    dfs(s, s);
  }
}

inline std::vector<Cycle> enumerate_cycles(const Graph& g, int length_cap) {
  std::vector<Cycle> out;
  enumerate_cycles(g, length_cap, [&](const Cycle& c) {
    out.push_back(c);
    return true;
  });
  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  return out;
}

// Shortest cycle length, or 0 when acyclic.
inline int girth(const Graph& g) {
  int best = 0;
  const int n = g.vertex_count();
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::vector<int> queue{s};
    dist[s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          int len = dist[v] + dist[w] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Hamiltonicity (exact, bitmask DP). Desk-scale: guards at 24 vertices.
// ---------------------------------------------------------------------------

inline std::optional<std::vector<int>> hamiltonian_cycle_on(const Graph& g,
                                                            const std::vector<int>& verts) {
  const int k = static_cast<int>(verts.size());
  if (k < 3) return std::nullopt;
  if (k > 24) throw std::invalid_argument("hamiltonicity check limited to 24 vertices");
  std::vector<std::uint32_t> adj(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && g.adjacent(verts[i], verts[j])) adj[i] |= (1u << j);

  const std::uint32_t full = (1u << k) - 1;
  std::vector<std::uint32_t> reach(static_cast<std::size_t>(1) << k, 0);
  // reach[mask] = set of endpoints v such that a path 0..v covers mask
  reach[1] = 1;
  std::vector<std::vector<std::int8_t>> par(static_cast<std::size_t>(1) << k);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1)) continue;
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    for (int v = 0; v < k; ++v) {
      if (!(ends & (1u << v))) continue;
      std::uint32_t nexts = adj[v] & ~mask;
      while (nexts) {
        int w = __builtin_ctz(nexts);
        nexts &= nexts - 1;
        std::uint32_t nm = mask | (1u << w);
        if (!(reach[nm] & (1u << w))) {
          reach[nm] |= (1u << w);
          if (par[nm].empty()) par[nm].assign(k, -1);
          par[nm][w] = static_cast<std::int8_t>(v);
        }
      }
    }
  }
  std::uint32_t ends = reach[full];
  for (int v = 1; v < k; ++v) {
    if ((ends & (1u << v)) && (adj[v] & 1u)) {
      // reconstruct
      std::vector<int> local;
      std::uint32_t mask = full;
      int cur = v;
      while (cur != -1) {
        local.push_back(cur);
        int p = (mask == 1) ? -1 : par[mask][cur];
        mask &= ~(1u << cur);
        cur = p;
      }
      std::reverse(local.begin(), local.end());
      std::vector<int> out;
      out.reserve(k);
      for (int x : local) out.push_back(verts[x]);
      return out;
    }
  }
  return std::nullopt;
}

inline std::optional<Cycle> hamiltonian_cycle(const Graph& g) {
  std::vector<int> verts(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) verts[i] = i;
  auto got = hamiltonian_cycle_on(g, verts);
  if (!got) return std::nullopt;
  return canonical_cycle(std::move(*got));
}

inline bool is_hamiltonian(const Graph& g) { return hamiltonian_cycle(g).has_value(); }

// Induced subgraph plus the local->global vertex map.
inline std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g,
                                                           std::vector<int> verts) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> local(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) local[verts[i]] = i;
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  return {Graph::from_edges(static_cast<int>(verts.size()), std::move(edges)), verts};
}

}  // namespace clawfactor

#endif  // CLAWFACTOR_GRAPH_HPP
