#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "gpaley/errors.hpp"
#include "gpaley/graph.hpp"

namespace gpaley {

namespace detail {

// All-pairs BFS distances; unreachable = 0xffff.
inline std::vector<std::vector<std::uint16_t>> distance_matrix(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<std::uint16_t>> d(n, std::vector<std::uint16_t>(n, 0xffff));
  std::vector<int> q;
  for (int s = 0; s < n; ++s) {
    q.clear();
    q.push_back(s);
    d[s][s] = 0;
    for (std::size_t h = 0; h < q.size(); ++h) {
      int u = q[h];
      for (int v : g.neighbors(u))
        if (d[s][v] == 0xffff) {
          d[s][v] = d[s][u] + 1;
          q.push_back(v);
        }
    }
  }
  return d;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Search state for a pair of graphs (the same graph twice for automorphisms).
struct IsoContext {
  const Graph& a;
  const Graph& b;
  std::vector<std::vector<std::uint16_t>> da;
  std::vector<std::vector<std::uint16_t>> db;

  IsoContext(const Graph& ga, const Graph& gb)
      : a(ga), b(gb), da(distance_matrix(ga)), db(distance_matrix(gb)) {}
};

// One refinement pass: the signature of v is the multiset of
// (distance to u, color of u) over all vertices u.  Signatures are hashed;
// a collision can only coarsen the partition, never mismatch it, and leaf
// maps are verified edge-exactly anyway.
inline void refine_side(const Graph& g, const std::vector<std::vector<std::uint16_t>>& dist,
                        const std::vector<int>& colors, std::vector<std::uint64_t>& sig) {
  const int n = g.vertex_count();
  sig.resize(n);
  std::vector<std::uint64_t> row;
  for (int v = 0; v < n; ++v) {
    row.clear();
    row.reserve(n);
    for (int u = 0; u < n; ++u)
      if (u != v) row.push_back((std::uint64_t{dist[v][u]} << 32) | static_cast<std::uint32_t>(colors[u]));
    std::sort(row.begin(), row.end());
    std::uint64_t h = mix64(static_cast<std::uint64_t>(colors[v]));
    for (std::uint64_t x : row) h = mix64(h ^ x);
    sig[v] = h;
  }
}

// Refine both colorings in lockstep until stable.  Returns false when the
// color-class multisets of the two sides diverge (no isomorphism can respect
// the current individualization).
inline bool refine(const IsoContext& ctx, std::vector<int>& ca, std::vector<int>& cb) {
  const int n = ctx.a.vertex_count();
  std::vector<std::uint64_t> sa, sb;
  int color_count = 0;
  for (int v = 0; v < n; ++v) color_count = std::max(color_count, ca[v] + 1);
  for (;;) {
    refine_side(ctx.a, ctx.da, ca, sa);
    refine_side(ctx.b, ctx.db, cb, sb);
    // renumber signatures to dense ids shared by both sides
    std::map<std::uint64_t, int> ids;
    for (std::uint64_t h : sa) ids.emplace(h, 0);
    for (std::uint64_t h : sb) ids.emplace(h, 0);
    int next = 0;
    for (auto& [h, id] : ids) id = next++;
    std::vector<int> count_a(next, 0), count_b(next, 0);
    for (int v = 0; v < n; ++v) {
      ca[v] = ids[sa[v]];
      cb[v] = ids[sb[v]];
      ++count_a[ca[v]];
      ++count_b[cb[v]];
    }
    if (count_a != count_b) return false;
    if (next == color_count) return true;
    color_count = next;
  }
}

inline int pick_branch_color(const std::vector<int>& colors) {
  std::map<int, int> size;
  for (int c : colors) ++size[c];
  int best = -1, best_size = 0;
  for (auto [c, s] : size)
    if (s > 1 && (best == -1 || s < best_size)) {
      best = c;
      best_size = s;
    }
  return best;
}

inline std::optional<VertexMap> extract_and_verify(const IsoContext& ctx,
                                                   const std::vector<int>& ca,
                                                   const std::vector<int>& cb) {
  const int n = ctx.a.vertex_count();
  std::vector<int> where_b(n, -1);
  for (int v = 0; v < n; ++v) where_b[cb[v]] = v;
  VertexMap map(n, -1);
  for (int v = 0; v < n; ++v) {
    if (ca[v] >= n || where_b[ca[v]] < 0) return std::nullopt;
    map[v] = where_b[ca[v]];
  }
  // edge-exact check, both directions (edge counts are equal)
  if (ctx.a.edge_count() != ctx.b.edge_count()) return std::nullopt;
  for (auto [u, v] : ctx.a.edges())
    if (!ctx.b.has_edge(map[u], map[v])) return std::nullopt;
  return map;
}

inline std::optional<VertexMap> iso_search(const IsoContext& ctx, std::vector<int> ca,
                                           std::vector<int> cb) {
  if (!refine(ctx, ca, cb)) return std::nullopt;
  const int n = ctx.a.vertex_count();
  int branch = pick_branch_color(ca);
  if (branch < 0) return extract_and_verify(ctx, ca, cb);
  int v = -1;
  for (int u = 0; u < n; ++u)
    if (ca[u] == branch) {
      v = u;
      break;
    }
  for (int w = 0; w < n; ++w) {
    if (cb[w] != branch) continue;
    auto ca2 = ca;
    auto cb2 = cb;
    ca2[v] = n + 1;  // fresh color on both sides
    cb2[w] = n + 1;
    if (auto r = iso_search(ctx, std::move(ca2), std::move(cb2))) return r;
  }
  return std::nullopt;
}

}  // namespace detail

// A witness isomorphism g -> h, or nullopt.  Deterministic backtracking over
// distance-profile refinement classes; any returned map is verified
// edge-exact before being handed back.
inline std::optional<VertexMap> are_isomorphic(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  if (g.vertex_count() == 0) return VertexMap{};
  detail::IsoContext ctx(g, h);
  std::vector<int> ca(g.vertex_count(), 0), cb(h.vertex_count(), 0);
  return detail::iso_search(ctx, std::move(ca), std::move(cb));
}

namespace detail {

inline std::uint64_t aut_order_rec(const IsoContext& ctx, std::vector<int> colors) {
  {
    auto cb = colors;
    if (!refine(ctx, colors, cb)) throw verification_error("aut: self-refinement diverged");
  }
  const int n = ctx.a.vertex_count();
  int branch = pick_branch_color(colors);
  if (branch < 0) return 1;
  int v = -1;
  std::vector<int> cell;
  for (int u = 0; u < n; ++u)
    if (colors[u] == branch) {
      if (v < 0) v = u;
      cell.push_back(u);
    }
  // orbit-stabilizer at the first branching cell: count the images of v
  // under the stabilizer of the current individualization
  std::uint64_t orbit = 0;
  for (int w : cell) {
    if (w == v) {
      ++orbit;
      continue;
    }
    auto ca2 = colors;
    auto cb2 = colors;
    ca2[v] = n + 1;
    cb2[w] = n + 1;
    if (iso_search(ctx, std::move(ca2), std::move(cb2))) ++orbit;
  }
  auto fixed = colors;
  fixed[v] = n + 1;
  return orbit * aut_order_rec(ctx, std::move(fixed));
}

}  // namespace detail

// Exact order of Aut(g), by refinement-guided backtracking with
// orbit-stabilizer counting.
inline std::uint64_t automorphism_count(const Graph& g, int max_vertices = 2048) {
  if (g.vertex_count() > max_vertices)
    throw bound_error("automorphism_count: vertex bound exceeded");
  if (g.vertex_count() == 0) return 1;
  detail::IsoContext ctx(g, g);
  return detail::aut_order_rec(ctx, std::vector<int>(g.vertex_count(), 0));
}

}  // namespace gpaley
