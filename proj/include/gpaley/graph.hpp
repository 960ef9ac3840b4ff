#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gpaley/errors.hpp"
#include "gpaley/numtheory.hpp"

namespace gpaley {

// Finite simple undirected graph on vertices [0, n).  Adjacency is kept both
// as sorted neighbor lists (for iteration) and per-vertex bit rows (for O(1)
// pair queries).
class Graph {
 public:
  Graph() = default;

  explicit Graph(int vertex_count) : n_(vertex_count), adj_(vertex_count) {
    if (vertex_count < 0) throw std::invalid_argument("Graph: negative vertex count");
    bits_.assign(n_, std::vector<std::uint64_t>((n_ + 63) / 64, 0));
  }

  static Graph from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    Graph g(vertex_count);
    for (auto [u, v] : edges) g.add_edge(u, v);
    g.finish();
    return g;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    g.finish();
    return g;
  }

  static Graph cycle(int n) {
    Graph g(n);
    if (n == 2) {
      g.add_edge(0, 1);
    } else if (n >= 3) {
      for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    }
    g.finish();
    return g;
  }

  // Cayley graph of an abelian group written additively: vertices [0, order),
  // edge {x, x+s} for s in S.  Requires 0 not in S and S closed under
  // negation, so the adjacency is symmetric.
  static Graph cayley(int64 order, const std::function<int64(int64, int64)>& plus,
                      const std::vector<int64>& S) {
    std::unordered_set<int64> sset(S.begin(), S.end());
    if (sset.count(0)) throw std::invalid_argument("cayley: 0 in connection set");
    for (int64 s : S) {
      // -s is the t with s + t = 0
      bool found = false;
      for (int64 t : S)
        if (plus(s, t) == 0) {
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("cayley: connection set not inverse-closed");
    }
    Graph g(static_cast<int>(order));
    for (int64 x = 0; x < order; ++x)
      for (int64 s : S) {
        int64 y = plus(x, s);
        if (x < y) g.add_edge(static_cast<int>(x), static_cast<int>(y));
      }
    g.finish();
    return g;
  }

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }

  bool has_edge(int u, int v) const {
    return (bits_[u][v >> 6] >> (v & 63)) & 1;
  }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<std::uint64_t>& bit_row(int v) const { return bits_[v]; }

  // All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::invalid_argument("Graph: endpoint out of range");
    if (u == v) throw std::invalid_argument("Graph: loop edge");
    if (has_edge(u, v)) return;
    bits_[u][v >> 6] |= std::uint64_t{1} << (v & 63);
    bits_[v][u >> 6] |= std::uint64_t{1} << (u & 63);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edge_count_;
  }

  void finish() {
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<std::uint64_t>> bits_;

  friend struct GraphBuilderAccess;
};

// Escape hatch for modules that assemble graphs edge by edge.
struct GraphBuilderAccess {
  static void add_edge(Graph& g, int u, int v) { g.add_edge(u, v); }
  static void finish(Graph& g) { g.finish(); }
};

// A bijection on vertex indices; forward[v] is the image of v.
using VertexMap = std::vector<int>;

// One part of the induced Cartesian edge partition: the copy of factor
// `factor` at fixed context coordinates (all coordinates except `factor`).
struct EdgePart {
  int factor = 0;
  std::vector<int> context;
  std::vector<std::pair<int, int>> edges;
};

struct CartesianEdgePartition {
  std::vector<EdgePart> parts;
};

struct ProductResult {
  Graph graph;
  CartesianEdgePartition partition;
};

// Cartesian product with mixed-radix vertex labels, factor 1 most
// significant.  Also returns the induced Cartesian edge partition.
inline ProductResult cartesian_product(const std::vector<Graph>& factors) {
  if (factors.empty()) throw std::invalid_argument("cartesian_product: no factors");
  const int b = static_cast<int>(factors.size());
  std::vector<int64> radix(b);
  int64 total = 1;
  for (int i = 0; i < b; ++i) {
    if (factors[i].vertex_count() == 0)
      throw std::invalid_argument("cartesian_product: empty factor");
    radix[i] = factors[i].vertex_count();
    total *= radix[i];
    if (total > (int64{1} << 26)) throw bound_error("cartesian_product: too many vertices");
  }
  // place value of coordinate i
  std::vector<int64> place(b, 1);
  for (int i = b - 2; i >= 0; --i) place[i] = place[i + 1] * radix[i + 1];

  Graph g(static_cast<int>(total));
  CartesianEdgePartition partition;
  for (int i = 0; i < b; ++i) {
    auto fedges = factors[i].edges();
    int64 contexts = total / radix[i];
    for (int64 ctx = 0; ctx < contexts; ++ctx) {
      // decode ctx into the coordinates of the other factors
      EdgePart part;
      part.factor = i;
      int64 rem = ctx;
      int64 base = 0;
      for (int j = b - 1; j >= 0; --j) {
        if (j == i) continue;
        int64 cj = rem % radix[j];
        rem /= radix[j];
        part.context.push_back(static_cast<int>(cj));
        base += cj * place[j];
      }
      std::reverse(part.context.begin(), part.context.end());
      for (auto [x, y] : fedges) {
        int u = static_cast<int>(base + x * place[i]);
        int v = static_cast<int>(base + y * place[i]);
        GraphBuilderAccess::add_edge(g, u, v);
        part.edges.emplace_back(std::min(u, v), std::max(u, v));
      }
      partition.parts.push_back(std::move(part));
    }
  }
  GraphBuilderAccess::finish(g);
  return {std::move(g), std::move(partition)};
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() <= 1) return true;
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
  }
  return count == g.vertex_count();
}

// --- text formats ---------------------------------------------------------

// First line "V E", then one "u v" line per edge with u < v.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
  int n;
  std::size_t m;
  if (!(is >> n >> m)) throw std::invalid_argument("read_edge_list: bad header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    int u, v;
    if (!(is >> u >> v)) throw std::invalid_argument("read_edge_list: bad edge line");
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

inline void write_dot(std::ostream& os, const Graph& g) {
  os << "graph g {\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) os << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
}

}  // namespace gpaley
