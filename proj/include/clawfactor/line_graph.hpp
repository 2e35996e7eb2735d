#ifndef CLAWFACTOR_LINE_GRAPH_HPP
#define CLAWFACTOR_LINE_GRAPH_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "clawfactor/common.hpp"
#include "clawfactor/graph.hpp"

namespace clawfactor {

struct NotALineGraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoTriangleFreeRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root graph H together with its line graph and the edge->vertex bijection.
struct RootCorrespondence {
  Graph root;                       // H
  Graph line;                       // L(H)
  std::vector<int> edge_to_vertex;  // root edge id -> line vertex id
};

inline Validation validate_correspondence(const RootCorrespondence& c) {
  if (c.root.edge_count() != c.line.vertex_count())
    return invalid("|E(root)| != |V(line)|");
  std::vector<char> hit(c.line.vertex_count(), 0);
  if (static_cast<int>(c.edge_to_vertex.size()) != c.root.edge_count())
    return invalid("bijection has wrong size");
  for (int v : c.edge_to_vertex) {
    if (v < 0 || v >= c.line.vertex_count()) return invalid("bijection image out of range");
    if (hit[v]) return invalid("bijection not injective");
    hit[v] = 1;
  }
  for (int e = 0; e < c.root.edge_count(); ++e)
    for (int f = e + 1; f < c.root.edge_count(); ++f) {
      auto [a, b] = c.root.edge(e);
      auto [x, y] = c.root.edge(f);
      bool share = (a == x || a == y || b == x || b == y);
      if (share != c.line.adjacent(c.edge_to_vertex[e], c.edge_to_vertex[f]))
        return invalid("adjacency does not transport along the bijection");
    }
  return valid();
}

inline RootCorrespondence line_graph(const Graph& h) {
  if (h.edge_count() == 0) throw std::invalid_argument("line graph of an edgeless graph");
  std::vector<std::pair<int, int>> l_edges;
  for (int v = 0; v < h.vertex_count(); ++v) {
    const auto& inc = h.incident_edges(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) l_edges.emplace_back(inc[i], inc[j]);
  }
  std::sort(l_edges.begin(), l_edges.end());
  l_edges.erase(std::unique(l_edges.begin(), l_edges.end()), l_edges.end());
  RootCorrespondence c;
  c.root = h;
  c.line = Graph::from_edges(h.edge_count(), std::move(l_edges));
  c.edge_to_vertex.resize(h.edge_count());
  for (int e = 0; e < h.edge_count(); ++e) c.edge_to_vertex[e] = e;
  return c;
}

namespace detail {

// Backtracking Krausz partition of one connected component: partition the
// edges into cliques with every vertex in at most two. Cliques grow one
// vertex at a time in edge-id order, so each partition is reached once.
class KrauszSearch {
 public:
  KrauszSearch(const Graph& g, std::vector<int> comp)
      : g_(g), comp_(std::move(comp)), in_comp_(g.vertex_count(), 0) {
    for (int v : comp_) in_comp_[v] = 1;
    for (int id = 0; id < g_.edge_count(); ++id)
      if (in_comp_[g_.edge(id).first]) comp_edges_.push_back(id);
    clique_count_.assign(g_.vertex_count(), 0);
    cliques_of_.assign(g_.vertex_count(), {});
    assigned_.assign(g_.edge_count(), 0);
  }

  // Returns the cliques of a partition whose quotient is triangle-free, or
  // nullopt. found_any reports whether any partition existed at all.
  std::optional<std::vector<std::vector<int>>> run(bool& found_any) {
    found_any = false;
    found_any_ = false;
    std::optional<std::vector<std::vector<int>>> result;
    rec(result);
    found_any = found_any_;
    return result;
  }

 private:
  bool quotient_triangle_free() const {
    const int k = static_cast<int>(cliques_.size());
    // cliques adjacent when they share a vertex; a triangle of cliques is a
    // triangle in the root
    std::vector<std::vector<char>> meet(k, std::vector<char>(k, 0));
    for (int v : comp_)
      if (clique_count_[v] == 2) {
        int a = cliques_of_[v][0], b = cliques_of_[v][1];
        meet[a][b] = meet[b][a] = 1;
      }
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (meet[a][b])
          for (int c = b + 1; c < k; ++c)
            if (meet[a][c] && meet[b][c]) return false;
    return true;
  }

  void rec(std::optional<std::vector<std::vector<int>>>& result) {
    if (result) return;
    int e = -1;
    for (int id : comp_edges_)
      if (!assigned_[id]) {
        e = id;
        break;
      }
    if (e < 0) {
      found_any_ = true;
      if (quotient_triangle_free()) result = cliques_;
      return;
    }
    auto [u, v] = g_.edge(e);
    // extend an existing clique at u by v, or at v by u
    for (int swap = 0; swap < 2 && !result; ++swap) {
      int a = swap ? v : u;
      int b = swap ? u : v;
      for (int ci : cliques_of_[a]) {
        if (result) break;
        if (clique_count_[b] >= 2) continue;
        bool ok = true;
        for (int w : cliques_[ci]) {
          int id = g_.edge_id(w, b);
          if (id < 0 || assigned_[id]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        std::vector<int> touched;
        for (int w : cliques_[ci]) {
          int id = g_.edge_id(w, b);
          assigned_[id] = 1;
          touched.push_back(id);
        }
        cliques_[ci].push_back(b);
        cliques_of_[b].push_back(ci);
        ++clique_count_[b];
        rec(result);
        --clique_count_[b];
        cliques_of_[b].pop_back();
        cliques_[ci].pop_back();
        for (int id : touched) assigned_[id] = 0;
      }
    }
    if (result) return;
    // open a new clique {u, v}
    if (clique_count_[u] < 2 && clique_count_[v] < 2) {
      int ci = static_cast<int>(cliques_.size());
      cliques_.push_back({u, v});
      cliques_of_[u].push_back(ci);
      cliques_of_[v].push_back(ci);
      ++clique_count_[u];
      ++clique_count_[v];
      assigned_[e] = 1;
      rec(result);
      assigned_[e] = 0;
      --clique_count_[u];
      --clique_count_[v];
      cliques_of_[u].pop_back();
      cliques_of_[v].pop_back();
      cliques_.pop_back();
    }
  }

  const Graph& g_;
  std::vector<int> comp_;
  std::vector<char> in_comp_;
  std::vector<int> comp_edges_;
  std::vector<std::vector<int>> cliques_;
  std::vector<std::vector<int>> cliques_of_;
  std::vector<int> clique_count_;
  std::vector<char> assigned_;
  bool found_any_ = false;
};

}  // namespace detail

// Recover the triangle-free root H of a line graph: Krausz clique partition
// per component, each clique a root vertex, each input vertex a root edge
// (with a pendant root vertex when it lies in only one clique). Components
// are rooted independently and united.
inline RootCorrespondence root_graph(const Graph& g) {
  std::vector<std::pair<int, int>> h_edges;       // root edges
  std::vector<int> h_edge_owner;                  // g vertex owning each root edge
  int h_n = 0;
  bool any_partition_everywhere = true;
  bool all_succeeded = true;

  for (const auto& comp : connected_components(g)) {
    if (comp.size() == 1) {
      // isolated vertex = an isolated root edge
      h_edges.emplace_back(h_n, h_n + 1);
      h_edge_owner.push_back(comp[0]);
      h_n += 2;
      continue;
    }
    detail::KrauszSearch search(g, comp);
    bool found_any = false;
    auto cliques = search.run(found_any);
    if (!cliques) {
      all_succeeded = false;
      if (!found_any) any_partition_everywhere = false;
      continue;
    }
    const int base = h_n;
    h_n += static_cast<int>(cliques->size());
    std::vector<std::vector<int>> cliques_of(g.vertex_count());
    for (int ci = 0; ci < static_cast<int>(cliques->size()); ++ci)
      for (int v : (*cliques)[ci]) cliques_of[v].push_back(ci);
    for (int v : comp) {
      auto& cs = cliques_of[v];
      if (cs.size() == 2) {
        h_edges.emplace_back(base + cs[0], base + cs[1]);
      } else if (cs.size() == 1) {
        h_edges.emplace_back(base + cs[0], h_n);
        ++h_n;  // pendant root vertex private to v
      } else {
        throw std::logic_error("component vertex lies in no clique");
      }
      h_edge_owner.push_back(v);
    }
  }

  if (!all_succeeded) {
    if (!any_partition_everywhere)
      throw NotALineGraphError("no clique partition with vertices in at most two cliques");
    throw NoTriangleFreeRootError("every clique partition yields a root with a triangle");
  }

  RootCorrespondence c;
  c.root = Graph::from_edges(h_n, h_edges);
  c.line = g;
  c.edge_to_vertex.assign(c.root.edge_count(), -1);
  for (std::size_t i = 0; i < h_edges.size(); ++i) {
    auto [a, b] = h_edges[i];
    c.edge_to_vertex[c.root.edge_id(a, b)] = h_edge_owner[i];
  }
  if (auto v = validate_correspondence(c); !v)
    throw std::logic_error("root recovery produced an invalid correspondence: " + v.message);
  if (!is_triangle_free(c.root))
    throw std::logic_error("root recovery accepted a root with a triangle");
  return c;
}

}  // namespace clawfactor

#endif  // CLAWFACTOR_LINE_GRAPH_HPP
