#ifndef CLAWFACTOR_DOMINATING_SYSTEM_HPP
#define CLAWFACTOR_DOMINATING_SYSTEM_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "clawfactor/common.hpp"
#include "clawfactor/graph.hpp"
#include "clawfactor/line_graph.hpp"

namespace clawfactor {

struct ReductionFailedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SystemMode { kStrict, kRelaxed };

// Star element: all edges share the center. Strict systems require at least
// three edges; relaxed systems (degenerate cycle partitions) allow one or two.
struct Star {
  int center = -1;
  std::vector<int> leaf_edge_ids;
  bool operator==(const Star&) const = default;
};

inline std::vector<int> star_leaves(const Graph& g, const Star& s) {
  std::vector<int> out;
  for (int id : s.leaf_edge_ids) out.push_back(g.other_end(id, s.center));
  std::sort(out.begin(), out.end());
  return out;
}

// Pairwise edge-disjoint closed trails and stars; every edge outside the
// elements must have an endpoint on some closed trail.
struct DominatingSystem {
  Graph host;
  std::vector<ClosedTrail> trails;
  std::vector<Star> stars;
  SystemMode mode = SystemMode::kStrict;

  int cardinality() const { return static_cast<int>(trails.size() + stars.size()); }

  int covered_edges() const {
    int total = 0;
    for (const auto& t : trails) total += static_cast<int>(t.edge_ids.size());
    for (const auto& s : stars) total += static_cast<int>(s.leaf_edge_ids.size());
    return total;
  }
};

inline std::vector<char> trail_vertex_flags(const Graph& g, const DominatingSystem& ds) {
  std::vector<char> on_trail(g.vertex_count(), 0);
  for (const auto& t : ds.trails)
    for (int id : t.edge_ids) {
      auto [a, b] = g.edge(id);
      on_trail[a] = on_trail[b] = 1;
    }
  return on_trail;
}

inline Validation validate_system(const DominatingSystem& ds) {
  const Graph& g = ds.host;
  std::vector<char> used(g.edge_count(), 0);
  auto claim = [&](int id, const std::string& who) -> Validation {
    if (id < 0 || id >= g.edge_count()) return invalid(who + ": edge id out of range");
    if (used[id]) return invalid(who + ": edge " + std::to_string(id) + " used twice");
    used[id] = 1;
    return valid();
  };
  for (std::size_t i = 0; i < ds.trails.size(); ++i) {
    if (auto v = validate_closed_trail(g, ds.trails[i]); !v)
      return invalid("trail " + std::to_string(i) + ": " + v.message);
    for (int id : ds.trails[i].edge_ids)
      if (auto v = claim(id, "trail " + std::to_string(i)); !v) return v;
  }
  const int min_star = ds.mode == SystemMode::kStrict ? 3 : 1;
  for (std::size_t i = 0; i < ds.stars.size(); ++i) {
    const Star& s = ds.stars[i];
    if (s.center < 0 || s.center >= g.vertex_count())
      return invalid("star " + std::to_string(i) + ": center out of range");
    if (static_cast<int>(s.leaf_edge_ids.size()) < min_star)
      return invalid("star " + std::to_string(i) + ": fewer than " + std::to_string(min_star) +
                     " edges");
    for (int id : s.leaf_edge_ids) {
      if (auto v = claim(id, "star " + std::to_string(i)); !v) return v;
      auto [a, b] = g.edge(id);
      if (a != s.center && b != s.center)
        return invalid("star " + std::to_string(i) + ": edge " + std::to_string(id) +
                       " misses the center");
    }
  }
  auto on_trail = trail_vertex_flags(g, ds);
  for (int id = 0; id < g.edge_count(); ++id) {
    if (used[id]) continue;
    auto [a, b] = g.edge(id);
    if (!on_trail[a] && !on_trail[b])
      return invalid("edge " + std::to_string(id) + " is neither covered nor dominated");
  }
  return valid();
}

// ---------------------------------------------------------------------------
// System -> 2-factor of the line graph.
//
// Each star of m edges becomes the m-cycle through its edge-vertices in
// ascending edge-id order; each closed trail becomes a cycle following its
// traversal with every dominated uncovered edge spliced in at its assigned
// (trail, position) occurrence — the lexicographically smallest one, ties at
// one occurrence resolved in ascending edge id.
// ---------------------------------------------------------------------------

namespace detail {

// splice_at[trail][pos] = dominated edges inserted before that trail edge.
inline std::vector<std::vector<std::vector<int>>> assign_dominated_edges(
    const DominatingSystem& ds) {
  const Graph& g = ds.host;
  std::vector<char> used(g.edge_count(), 0);
  for (const auto& t : ds.trails)
    for (int id : t.edge_ids) used[id] = 1;
  for (const auto& s : ds.stars)
    for (int id : s.leaf_edge_ids) used[id] = 1;

  std::vector<char> assigned(g.edge_count(), 0);
  std::vector<std::vector<std::vector<int>>> splice(ds.trails.size());
  for (std::size_t ti = 0; ti < ds.trails.size(); ++ti) {
    auto walk = trail_vertex_walk(g, ds.trails[ti]);
    splice[ti].assign(walk.size(), {});
    for (std::size_t pos = 0; pos < walk.size(); ++pos) {
      int w = walk[pos];
      for (int id : g.incident_edges(w)) {
        if (used[id] || assigned[id]) continue;
        assigned[id] = 1;
        splice[ti][pos].push_back(id);
      }
    }
  }
  for (int id = 0; id < g.edge_count(); ++id)
    if (!used[id] && !assigned[id])
      throw std::logic_error("dominated edge left unassigned (validation bug)");
  return splice;
}

}  // namespace detail

inline TwoFactor system_to_two_factor(const DominatingSystem& ds, const RootCorrespondence& corr) {
  if (!(corr.root == ds.host)) throw std::invalid_argument("correspondence host mismatch");
  if (ds.mode != SystemMode::kStrict)
    throw std::invalid_argument("mode mismatch: conversion requires a strict system");
  if (auto v = validate_system(ds); !v)
    throw std::invalid_argument("invalid dominating system: " + v.message);

  auto splice = detail::assign_dominated_edges(ds);

  TwoFactor tf;
  for (const auto& s : ds.stars) {
    std::vector<int> ids = s.leaf_edge_ids;
    std::sort(ids.begin(), ids.end());
    std::vector<int> cyc;
    for (int id : ids) cyc.push_back(corr.edge_to_vertex[id]);
    tf.cycles.push_back(canonical_cycle(std::move(cyc)));
  }
  for (std::size_t ti = 0; ti < ds.trails.size(); ++ti) {
    const auto& t = ds.trails[ti];
    std::vector<int> cyc;
    for (std::size_t pos = 0; pos < t.edge_ids.size(); ++pos) {
      std::vector<int> ins = splice[ti][pos];
      std::sort(ins.begin(), ins.end());
      for (int id : ins) cyc.push_back(corr.edge_to_vertex[id]);
      cyc.push_back(corr.edge_to_vertex[t.edge_ids[pos]]);
    }
    tf.cycles.push_back(canonical_cycle(std::move(cyc)));
  }
  std::sort(tf.cycles.begin(), tf.cycles.end(), [](const Cycle& a, const Cycle& b) {
    return a.vertices.front() < b.vertices.front();
  });
  if (auto v = validate_two_factor(corr.line, tf); !v)
    throw std::logic_error("system conversion produced an invalid 2-factor: " + v.message);
  return tf;
}

// ---------------------------------------------------------------------------
// 2-factor of the line graph -> system of the root.
//
// A cycle pulls back to host edges whose consecutive members share one
// vertex. If all shared vertices coincide the pullback is a star; otherwise
// the edges between distinct consecutive shared vertices form a closed trail
// and the remaining pulled-back edges hang off trail vertices, so they are
// left out as dominated. A per-cycle exhaustive fallback covers inputs that
// defeat the direct reduction.
// ---------------------------------------------------------------------------

inline DominatingSystem two_factor_to_system(const TwoFactor& tf, const RootCorrespondence& corr,
                                             SystemMode mode = SystemMode::kStrict) {
  if (auto v = validate_two_factor(corr.line, tf); !v)
    throw std::invalid_argument("invalid 2-factor: " + v.message);
  const Graph& g = corr.root;
  std::vector<int> vertex_to_edge(corr.line.vertex_count(), -1);
  for (int e = 0; e < g.edge_count(); ++e) vertex_to_edge[corr.edge_to_vertex[e]] = e;

  DominatingSystem ds;
  ds.host = g;
  ds.mode = mode;

  auto common_vertex = [&](int e, int f) -> int {
    auto [a, b] = g.edge(e);
    auto [x, y] = g.edge(f);
    if (a == x || a == y) return a;
    if (b == x || b == y) return b;
    return -1;
  };

  for (const auto& cyc : tf.cycles) {
    const int r = static_cast<int>(cyc.vertices.size());
    std::vector<int> eids(r);
    for (int i = 0; i < r; ++i) eids[i] = vertex_to_edge[cyc.vertices[i]];
    std::vector<int> shared(r);
    bool ok = true;
    for (int i = 0; i < r; ++i) {
      shared[i] = common_vertex(eids[i], eids[(i + 1) % r]);
      if (shared[i] < 0) ok = false;
    }
    bool reduced = false;
    if (ok) {
      bool all_same = true;
      for (int i = 1; i < r; ++i)
        if (shared[i] != shared[0]) all_same = false;
      if (all_same) {
        ds.stars.push_back(Star{shared[0], eids});
        std::sort(ds.stars.back().leaf_edge_ids.begin(), ds.stars.back().leaf_edge_ids.end());
        reduced = true;
      } else {
        std::vector<int> trail_edges;
        for (int i = 0; i < r; ++i)
          if (shared[(i + r - 1) % r] != shared[i]) trail_edges.push_back(eids[i]);
        if (is_closed_trail_edge_set(g, trail_edges)) {
          ds.trails.push_back(closed_trail_from_edges(g, trail_edges));
          reduced = true;
        }
      }
    }
    if (!reduced) {
      // exhaustive fallback: largest sub-element of the pulled-back edge set
      // that is a trail (dominating its leftovers) or a star with no leftover
      if (r > 20) throw ReductionFailedError("cycle pullback too large for fallback search");
      std::vector<int> sorted = eids;
      std::sort(sorted.begin(), sorted.end());
      bool found = false;
      for (std::uint32_t mask = (1u << r) - 1; mask > 0 && !found; --mask) {
        std::vector<int> subset;
        for (int i = 0; i < r; ++i)
          if (mask & (1u << i)) subset.push_back(sorted[i]);
        std::vector<int> leftover;
        for (int i = 0; i < r; ++i)
          if (!(mask & (1u << i))) leftover.push_back(sorted[i]);
        if (is_closed_trail_edge_set(g, subset)) {
          std::vector<char> on(g.vertex_count(), 0);
          for (int id : subset) {
            on[g.edge(id).first] = 1;
            on[g.edge(id).second] = 1;
          }
          bool dominated = true;
          for (int id : leftover)
            if (!on[g.edge(id).first] && !on[g.edge(id).second]) dominated = false;
          if (dominated) {
            ds.trails.push_back(closed_trail_from_edges(g, subset));
            found = true;
          }
        } else if (leftover.empty()) {
          int center = common_vertex(subset[0], subset.size() > 1 ? subset[1] : subset[0]);
          if (subset.size() == 1) center = g.edge(subset[0]).first;
          if (center >= 0) {
            bool star_ok = true;
            for (int id : subset) {
              auto [a, b] = g.edge(id);
              if (a != center && b != center) star_ok = false;
            }
            int min_star = mode == SystemMode::kStrict ? 3 : 1;
            if (star_ok && static_cast<int>(subset.size()) >= min_star) {
              ds.stars.push_back(Star{center, subset});
              found = true;
            }
          }
        }
      }
      if (!found) throw ReductionFailedError("cycle pullback admits no trail or star reduction");
    }
  }

  if (auto v = validate_system(ds); !v)
    throw ReductionFailedError("reduced system fails validation: " + v.message);
  if (ds.cardinality() != static_cast<int>(tf.cycles.size()))
    throw std::logic_error("reduction changed the cardinality");
  return ds;
}

// ---------------------------------------------------------------------------
// Exhaustive minimum-cardinality search.
//
// Closed-trail candidates are the connected members of the cycle space
// (XOR combinations of fundamental cycles). For every edge-disjoint trail
// subset, the undominated remainder is partitioned into stars by a memoized
// branch over the lowest remaining edge. Objective: (cardinality asc,
// covered edges desc).
// ---------------------------------------------------------------------------

namespace detail {

struct TrailCandidate {
  std::uint64_t mask;
  Bits verts;
  int size;
};

inline std::vector<TrailCandidate> trail_candidates(const Graph& g, Budget& budget) {
  const int m = g.edge_count();
  if (m > 62) throw std::invalid_argument("exhaustive system search limited to 62 edges");
  // spanning forest -> fundamental cycle masks
  std::vector<int> comp(g.vertex_count(), -1);
  std::vector<char> in_tree(m, 0);
  std::vector<std::vector<std::pair<int, int>>> tree(g.vertex_count());  // (nbr, edge)
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = s;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int id : g.incident_edges(v)) {
        int w = g.other_end(id, v);
        if (comp[w] < 0) {
          comp[w] = s;
          in_tree[id] = 1;
          tree[v].push_back({w, id});
          tree[w].push_back({v, id});
          stack.push_back(w);
        }
      }
    }
  }
  // tree path edge mask between two vertices
  auto path_mask = [&](int a, int b) -> std::uint64_t {
    std::vector<int> par(g.vertex_count(), -2), par_edge(g.vertex_count(), -1);
    std::vector<int> stack{a};
    par[a] = -1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == b) break;
      for (auto [w, id] : tree[v])
        if (par[w] == -2) {
          par[w] = v;
          par_edge[w] = id;
          stack.push_back(w);
        }
    }
    std::uint64_t mask = 0;
    for (int v = b; v != a; v = par[v]) mask |= (1ULL << par_edge[v]);
    return mask;
  };

  std::vector<std::uint64_t> basis;
  for (int id = 0; id < m; ++id)
    if (!in_tree[id]) {
      auto [u, v] = g.edge(id);
      basis.push_back((1ULL << id) | path_mask(u, v));
    }
  const int dim = static_cast<int>(basis.size());
  if (dim > 24) throw BudgetExceededError("cycle space too large for exhaustive system search");
  budget.charge(1LL << dim);

  std::vector<TrailCandidate> out;
  for (std::uint64_t combo = 1; combo < (1ULL << dim); ++combo) {
    std::uint64_t mask = 0;
    for (int i = 0; i < dim; ++i)
      if (combo & (1ULL << i)) mask ^= basis[i];
    if (!mask) continue;
    std::vector<int> ids;
    for (int id = 0; id < m; ++id)
      if (mask & (1ULL << id)) ids.push_back(id);
    if (!is_closed_trail_edge_set(g, ids)) continue;
    TrailCandidate cand;
    cand.mask = mask;
    cand.size = static_cast<int>(ids.size());
    for (int id : ids) {
      cand.verts.set(g.edge(id).first);
      cand.verts.set(g.edge(id).second);
    }
    out.push_back(cand);
  }
  std::sort(out.begin(), out.end(), [](const TrailCandidate& a, const TrailCandidate& b) {
    return std::pair{a.size, a.mask} < std::pair{b.size, b.mask};
  });
  return out;
}

// Minimum star partition of required edges within usable, allowing padding
// from usable; value = (star count, -covered). Choices recorded for rebuild.
class StarCover {
 public:
  StarCover(const Graph& g, std::uint64_t required_all, int min_star, Budget& budget)
      : g_(g), required_all_(required_all), min_star_(min_star), budget_(budget) {}

  static constexpr int kInfeasible = 1 << 20;

  std::pair<int, int> value(std::uint64_t usable) {
    auto it = memo_.find(usable);
    if (it != memo_.end()) return it->second.first;
    budget_.charge();
    std::uint64_t req = usable & required_all_;
    std::pair<int, int> best{kInfeasible, 0};
    std::pair<int, std::uint64_t> choice{-1, 0};
    if (!req) {
      best = {0, 0};
    } else {
      int e = __builtin_ctzll(req);
      auto [u, v] = g_.edge(e);
      for (int center : {std::min(u, v), std::max(u, v)}) {
        std::uint64_t inc = 0;
        for (int id : g_.incident_edges(center)) inc |= (1ULL << id);
        std::uint64_t avail = (inc & usable) & ~(1ULL << e);
        // all submasks of avail, plus e itself
        std::uint64_t sub = avail;
        for (;;) {
          std::uint64_t star_mask = sub | (1ULL << e);
          int sz = __builtin_popcountll(star_mask);
          if (sz >= min_star_) {
            auto rest = value(usable & ~star_mask);
            if (rest.first < kInfeasible) {
              std::pair<int, int> total{rest.first + 1, rest.second - sz};
              if (total < best) {
                best = total;
                choice = {center, star_mask};
              }
            }
          }
          if (sub == 0) break;
          sub = (sub - 1) & avail;
        }
        if (u == v) break;
      }
    }
    memo_[usable] = {best, choice};
    return best;
  }

  // Rebuild the optimal stars for `usable`; value() must have run.
  void rebuild(std::uint64_t usable, std::vector<Star>& out) {
    std::uint64_t req = usable & required_all_;
    if (!req) return;
    auto [val, choice] = memo_.at(usable);
    (void)val;
    auto [center, star_mask] = choice;
    Star s;
    s.center = center;
    for (int id = 0; id < g_.edge_count(); ++id)
      if (star_mask & (1ULL << id)) s.leaf_edge_ids.push_back(id);
    out.push_back(std::move(s));
    rebuild(usable & ~star_mask, out);
  }

 private:
  const Graph& g_;
  std::uint64_t required_all_;
  int min_star_;
  Budget& budget_;
  std::map<std::uint64_t, std::pair<std::pair<int, int>, std::pair<int, std::uint64_t>>> memo_;
};

}  // namespace detail

inline std::optional<std::pair<DominatingSystem, int>> min_system_exhaustive(const Graph& h,
                                                                             SystemMode mode,
                                                                             Budget& budget) {
  const int m = h.edge_count();
  if (m == 0) {
    DominatingSystem empty;
    empty.host = h;
    empty.mode = mode;
    return std::pair{empty, 0};
  }
  auto trails = detail::trail_candidates(h, budget);
  const int min_star = mode == SystemMode::kStrict ? 3 : 1;
  const std::uint64_t all_edges = (m == 62) ? ~0ULL >> 2 : ((1ULL << m) - 1);

  std::optional<std::pair<int, int>> best_value;  // (cardinality, -covered)
  DominatingSystem best_system;

  std::vector<int> chosen;
  std::function<void(std::size_t, std::uint64_t, Bits, int)> rec =
      [&](std::size_t idx, std::uint64_t used, Bits verts, int covered) {
        budget.charge();
        // evaluate the current trail subset with an optimal star completion
        std::uint64_t required = 0;
        for (int id = 0; id < m; ++id) {
          if (used & (1ULL << id)) continue;
          auto [a, b] = h.edge(id);
          if (!verts.test(a) && !verts.test(b)) required |= (1ULL << id);
        }
        detail::StarCover cover(h, required, min_star, budget);
        auto star_val = cover.value(all_edges & ~used);
        if (star_val.first < detail::StarCover::kInfeasible) {
          std::pair<int, int> total{static_cast<int>(chosen.size()) + star_val.first,
                                    -covered + star_val.second};
          if (!best_value || total < *best_value) {
            best_value = total;
            best_system = DominatingSystem{};
            best_system.host = h;
            best_system.mode = mode;
            for (int ti : chosen) {
              std::vector<int> ids;
              for (int id = 0; id < m; ++id)
                if (trails[ti].mask & (1ULL << id)) ids.push_back(id);
              best_system.trails.push_back(closed_trail_from_edges(h, ids));
            }
            cover.rebuild(all_edges & ~used, best_system.stars);
          }
        }
        for (std::size_t next = idx; next < trails.size(); ++next) {
          if (trails[next].mask & used) continue;
          if (best_value && static_cast<int>(chosen.size()) + 1 > best_value->first) return;
          chosen.push_back(static_cast<int>(next));
          rec(next + 1, used | trails[next].mask, verts | trails[next].verts,
              covered + trails[next].size);
          chosen.pop_back();
        }
      };
  rec(0, 0, Bits{}, 0);

  if (!best_value) return std::nullopt;
  if (auto v = validate_system(best_system); !v)
    throw std::logic_error("exhaustive search produced an invalid system: " + v.message);
  return std::pair{best_system, best_value->first};
}

inline std::optional<std::pair<DominatingSystem, int>> min_system_exhaustive(const Graph& h,
                                                                             SystemMode mode) {
  Budget b;
  return min_system_exhaustive(h, mode, b);
}

// Closed trail dominating every edge, or nullopt. Single-vertex trails are
// not admitted; the star case of line-graph hamiltonicity is handled by the
// caller.
inline std::optional<ClosedTrail> has_dominating_closed_trail(const Graph& h) {
  for (int v = 0; v < h.vertex_count(); ++v)
    if (h.degree(v) == 0) throw std::invalid_argument("host has an isolated vertex");
  Budget budget;
  auto cands = detail::trail_candidates(h, budget);
  for (const auto& cand : cands) {
    bool dominating = true;
    for (int id = 0; id < h.edge_count() && dominating; ++id) {
      if (cand.mask & (1ULL << id)) continue;
      auto [a, b] = h.edge(id);
      if (!cand.verts.test(a) && !cand.verts.test(b)) dominating = false;
    }
    if (!dominating) continue;
    std::vector<int> ids;
    for (int id = 0; id < h.edge_count(); ++id)
      if (cand.mask & (1ULL << id)) ids.push_back(id);
    return closed_trail_from_edges(h, ids);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Degenerate partition of the line graph's vertices from a (typically
// relaxed) system: a 1-edge star yields a singleton part, a 2-edge star a
// pair part, and trails / larger stars yield the cycle parts of the strict
// conversion.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<int>> degenerate_parts(const DominatingSystem& ds,
                                                      const RootCorrespondence& corr) {
  if (!(corr.root == ds.host)) throw std::invalid_argument("correspondence host mismatch");
  if (auto v = validate_system(ds); !v)
    throw std::invalid_argument("invalid dominating system: " + v.message);
  auto splice = detail::assign_dominated_edges(ds);

  std::vector<std::vector<int>> parts;
  for (const auto& s : ds.stars) {
    std::vector<int> part;
    for (int id : s.leaf_edge_ids) part.push_back(corr.edge_to_vertex[id]);
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  for (std::size_t ti = 0; ti < ds.trails.size(); ++ti) {
    const auto& t = ds.trails[ti];
    std::vector<int> part;
    for (std::size_t pos = 0; pos < t.edge_ids.size(); ++pos) {
      for (int id : splice[ti][pos]) part.push_back(corr.edge_to_vertex[id]);
      part.push_back(corr.edge_to_vertex[t.edge_ids[pos]]);
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  std::sort(parts.begin(), parts.end());
  std::vector<char> seen(corr.line.vertex_count(), 0);
  for (const auto& p : parts)
    for (int v : p) {
      if (seen[v]) throw std::logic_error("degenerate parts overlap");
      seen[v] = 1;
    }
  for (int v = 0; v < corr.line.vertex_count(); ++v)
    if (!seen[v]) throw std::logic_error("degenerate parts miss a vertex");
  return parts;
}

}  // namespace clawfactor

#endif  // CLAWFACTOR_DOMINATING_SYSTEM_HPP
