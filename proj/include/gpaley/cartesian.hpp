#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gpaley/errors.hpp"
#include "gpaley/field.hpp"
#include "gpaley/graph.hpp"
#include "gpaley/isomorphism.hpp"
#include "gpaley/numtheory.hpp"
#include "gpaley/paley.hpp"

namespace gpaley {

// A factorization k = b * c with b > 1, b | n, and c a primitive divisor of
// p^(n/b) - 1.
struct DecompPair {
  int64 b;
  int64 c;
  bool operator==(const DecompPair& o) const { return b == o.b && c == o.c; }
};

// The full constructive content of the decomposition: the order-c subgroup
// C, its cosets S_i = C * xi^(d*i), the basis B = (xi^d, ..., xi^(d*b)), the
// factor graph on the subfield of order p^(n/b), and the explicit vertex
// bijection phi from the b-fold product of the factor onto the graph.
struct DecompositionWitness {
  DecompPair pair;
  std::vector<int64> C;
  std::vector<std::vector<int64>> cosets;      // S_1 .. S_b
  std::vector<int64> basis;                    // xi^(d*1) .. xi^(d*b)
  std::vector<int64> factor_vertex_encodings;  // subfield elements, ascending
  Graph factor;                                // on [0, p^(n/b)), labels = positions above
  VertexMap phi;                               // product vertex -> graph vertex
};

// All (b, c) pairs witnessing parameter-level decomposability, ascending in b.
// Empty means Cartesian-prime.  Requires a connected instance.
inline std::vector<DecompPair> decomposable_params(const GPaleyParams& params) {
  if (!params.connected)
    throw disconnected_error("decomposable_params: instance is disconnected");
  std::vector<DecompPair> out;
  for (int64 b : divisors(params.n)) {
    if (b <= 1 || params.k % b != 0) continue;
    int64 c = params.k / b;
    if (is_primitive_divisor(c, params.p, static_cast<int>(params.n / b)))
      out.push_back({b, c});
  }
  return out;
}

// Hamming case: the factor is complete, i.e. c = p^(n/b) - 1.
inline bool is_hamming(const GPaleyParams& params, const DecompPair& pair) {
  return pair.c == ipow_checked(params.p, static_cast<int>(params.n / pair.b)) - 1;
}

inline DecompositionWitness construct_decomposition(const GPaleyParams& params,
                                                    const DecompPair& pair) {
  auto pairs = decomposable_params(params);
  if (std::find(pairs.begin(), pairs.end(), pair) == pairs.end())
    throw std::invalid_argument("construct_decomposition: pair is not valid for these parameters");
  if (params.p % 2 == 1 && pair.c % 2 == 1)
    throw param_error(param_error_code::odd_factor_valency,
                      "construct_decomposition: factor valency c is odd with p odd");

  const Field& f = params.field;
  const int64 b = pair.b, c = pair.c;
  const int sub_degree = static_cast<int>(params.n / b);

  DecompositionWitness w;
  w.pair = pair;
  w.C = f.power_subgroup(c);
  for (int64 i = 1; i <= b; ++i) {
    int64 rep = f.pow(f.xi(), params.d * i);
    w.basis.push_back(rep);
    std::vector<int64> coset;
    coset.reserve(c);
    for (int64 x : w.C) coset.push_back(f.mul(x, rep));
    w.cosets.push_back(std::move(coset));
  }

  w.factor_vertex_encodings = f.subfield_elements(sub_degree);
  const int64 m = static_cast<int64>(w.factor_vertex_encodings.size());
  std::unordered_map<int64, int> sub_index;
  for (int64 i = 0; i < m; ++i) sub_index.emplace(w.factor_vertex_encodings[i], static_cast<int>(i));
  for (int64 x : w.C)
    if (!sub_index.count(x))
      throw verification_error("construct_decomposition: C not inside the subfield");

  // factor graph on subfield labels, connection set C
  std::vector<int64> c_as_labels;
  for (int64 x : w.C) c_as_labels.push_back(sub_index.at(x));
  w.factor = Graph::cayley(
      m,
      [&](int64 i, int64 j) {
        return static_cast<int64>(
            sub_index.at(f.add(w.factor_vertex_encodings[i], w.factor_vertex_encodings[j])));
      },
      c_as_labels);

  // phi: (a_1, ..., a_b) -> sum a_i * xi^(d*i), mixed radix with factor 1
  // most significant
  int64 total = 1;
  for (int64 i = 0; i < b; ++i) total *= m;
  if (total != f.order())
    throw verification_error("construct_decomposition: size mismatch");
  w.phi.assign(total, -1);
  for (int64 t = 0; t < total; ++t) {
    int64 rem = t;
    int64 image = 0;
    for (int64 i = b; i-- > 0;) {  // least significant coordinate is factor b
      int64 a = w.factor_vertex_encodings[rem % m];
      rem /= m;
      image = f.add(image, f.mul(a, w.basis[i]));
    }
    w.phi[t] = static_cast<int>(image);
  }

  // verify: phi bijective, edge-exact in both directions
  {
    std::vector<char> hit(f.order(), 0);
    for (int img : w.phi) {
      if (hit[img]) throw verification_error("construct_decomposition: phi not bijective");
      hit[img] = 1;
    }
    Graph gamma = build(params);
    std::vector<Graph> copies(b, w.factor);
    ProductResult prod = cartesian_product(copies);
    if (prod.graph.edge_count() != gamma.edge_count())
      throw verification_error("construct_decomposition: edge count mismatch");
    for (auto [u, v] : prod.graph.edges())
      if (!gamma.has_edge(w.phi[u], w.phi[v]))
        throw verification_error("construct_decomposition: phi does not map edges to edges");
    VertexMap inv(f.order());
    for (int t = 0; t < static_cast<int>(w.phi.size()); ++t) inv[w.phi[t]] = t;
    for (auto [u, v] : gamma.edges())
      if (!prod.graph.has_edge(inv[u], inv[v]))
        throw verification_error("construct_decomposition: phi inverse does not map edges to edges");
  }
  return w;
}

// Independent re-check of a witness.  Returns false on any failure instead
// of throwing.
inline bool verify_decomposition(const GPaleyParams& params, const DecompositionWitness& w) {
  try {
    const int64 b = w.pair.b, c = w.pair.c;
    if (b <= 1 || params.n % b != 0 || b * c != params.k) return false;
    const int64 m = static_cast<int64>(w.factor_vertex_encodings.size());
    if (m != ipow_checked(params.p, static_cast<int>(params.n / b))) return false;
    if (w.factor.vertex_count() != m) return false;

    const Field& fld = params.field;
    // C must be a multiplicative subgroup of order c
    if (static_cast<int64>(w.C.size()) != c) return false;
    std::unordered_set<int64> c_set(w.C.begin(), w.C.end());
    if (c_set.size() != w.C.size() || !c_set.count(1) || c_set.count(0)) return false;
    for (int64 x : w.C)
      for (int64 y : w.C)
        if (!c_set.count(fld.mul(x, y))) return false;
    // each coset must really be C times its basis element
    if (static_cast<int64>(w.basis.size()) != b || static_cast<int64>(w.cosets.size()) != b)
      return false;
    for (int64 i = 0; i < b; ++i) {
      if (w.basis[i] == 0 || static_cast<int64>(w.cosets[i].size()) != c) return false;
      std::unordered_set<int64> coset(w.cosets[i].begin(), w.cosets[i].end());
      for (int64 x : w.C)
        if (!coset.count(fld.mul(x, w.basis[i]))) return false;
    }
    // phi must be the coordinatewise linear-combination map over the basis
    for (std::size_t t = 0; t < w.phi.size(); ++t) {
      std::size_t rem = t;
      int64 image = 0;
      for (int64 i = b; i-- > 0;) {
        int64 a = w.factor_vertex_encodings[rem % m];
        rem /= m;
        image = fld.add(image, fld.mul(a, w.basis[i]));
      }
      if (w.phi[t] != image) return false;
    }

    // the cosets must partition S
    std::unordered_set<int64> s_set(params.S.begin(), params.S.end());
    std::size_t covered = 0;
    std::unordered_set<int64> seen;
    for (const auto& coset : w.cosets)
      for (int64 x : coset) {
        if (!s_set.count(x) || seen.count(x)) return false;
        seen.insert(x);
        ++covered;
      }
    if (covered != s_set.size()) return false;

    std::vector<Graph> copies(b, w.factor);
    ProductResult prod = cartesian_product(copies);
    Graph gamma = build(params);
    if (prod.graph.vertex_count() != gamma.vertex_count()) return false;
    if (prod.graph.edge_count() != gamma.edge_count()) return false;
    if (static_cast<int>(w.phi.size()) != prod.graph.vertex_count()) return false;
    std::vector<char> hit(gamma.vertex_count(), 0);
    for (int img : w.phi) {
      if (img < 0 || img >= gamma.vertex_count() || hit[img]) return false;
      hit[img] = 1;
    }
    for (auto [u, v] : prod.graph.edges())
      if (!gamma.has_edge(w.phi[u], w.phi[v])) return false;
    VertexMap inv(gamma.vertex_count());
    for (int t = 0; t < static_cast<int>(w.phi.size()); ++t) inv[w.phi[t]] = t;
    for (auto [u, v] : gamma.edges())
      if (!prod.graph.has_edge(inv[u], inv[v])) return false;

    // the factor must be the smaller generalised Paley graph
    GPaleyParams sub = validate_params(params.p, static_cast<int>(params.n / b), c);
    if (!are_isomorphic(w.factor, build(sub))) return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// The canonical choice: the pair with maximal b (minimal c).  The chain
// property of valid pairs guarantees the resulting factor admits no further
// parameter-level decomposition.
inline std::optional<std::pair<DecompPair, DecompositionWitness>> canonical_decomposition(
    const GPaleyParams& params) {
  auto pairs = decomposable_params(params);
  if (pairs.empty()) return std::nullopt;
  DecompPair best = pairs.back();
  return std::make_pair(best, construct_decomposition(params, best));
}

// Edge coloring + prime factors + reconstruction certificate produced by the
// graph-level factorization oracle.
struct FactorizationResult {
  std::vector<int> edge_class;   // parallel to g.edges(), class ids 0..r-1
  std::vector<Graph> factors;    // prime factors, read off through vertex 0
  VertexMap reconstruction;      // product-of-factors -> input graph
};

namespace detail {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// The unique prime factorization of a connected graph, by the Feder edge
// relation: edges {x,y}, {u,v} are related when the distance sums
// d(x,u)+d(y,v) and d(x,v)+d(y,u) differ (Djokovic-Winkler), and incident
// edges are related when their outer endpoints have a unique common
// neighbor.  The transitive closure's classes, read off through vertex 0,
// give the factors.  The result is verified by recomposition + isomorphism
// and each factor is certified prime recursively; any inconsistency is a
// hard error.
inline FactorizationResult prime_factorize(const Graph& g, int max_vertices = 256) {
  const int n = g.vertex_count();
  if (n > max_vertices) throw bound_error("prime_factorize: vertex bound exceeded");
  if (n == 0) throw std::invalid_argument("prime_factorize: empty graph");
  if (!is_connected(g)) throw disconnected_error("prime_factorize: graph is disconnected");

  auto edge_list = g.edges();
  const int m = static_cast<int>(edge_list.size());
  if (n == 1 || m == 0) {
    // K1 only (connected and edgeless)
    FactorizationResult r;
    r.factors.push_back(g);
    r.reconstruction = identity_perm(n);
    return r;
  }

  std::unordered_map<std::int64_t, int> edge_id;
  edge_id.reserve(m * 2);
  for (int i = 0; i < m; ++i)
    edge_id.emplace(static_cast<std::int64_t>(edge_list[i].first) * n + edge_list[i].second, i);
  auto eid = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    return edge_id.at(static_cast<std::int64_t>(u) * n + v);
  };

  detail::Dsu dsu(m);
  // tau: incident edges uv, uw with u the only common neighbor of v and w
  const int words = (n + 63) / 64;
  std::vector<std::uint64_t> common(words);
  for (int u = 0; u < n; ++u) {
    const auto& nb = g.neighbors(u);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t bidx = a + 1; bidx < nb.size(); ++bidx) {
        int v = nb[a], w = nb[bidx];
        int count = 0;
        for (int t = 0; t < words; ++t) {
          common[t] = g.bit_row(v)[t] & g.bit_row(w)[t];
          count += __builtin_popcountll(common[t]);
        }
        if (count == 1) dsu.unite(eid(u, v), eid(u, w));
      }
  }
  // Djokovic-Winkler: unite edge pairs whose endpoint distance sums disagree
  auto dist = detail::distance_matrix(g);
  for (int e = 0; e < m; ++e) {
    auto [x, y] = edge_list[e];
    for (int f = e + 1; f < m; ++f) {
      if (dsu.find(e) == dsu.find(f)) continue;
      auto [u, v] = edge_list[f];
      if (dist[x][u] + dist[y][v] != dist[x][v] + dist[y][u]) dsu.unite(e, f);
    }
  }

  // dense class ids, ordered by smallest edge id
  std::vector<int> edge_class(m, -1);
  std::unordered_map<int, int> root_to_class;
  int classes = 0;
  for (int i = 0; i < m; ++i) {
    int r = dsu.find(i);
    auto it = root_to_class.find(r);
    if (it == root_to_class.end()) it = root_to_class.emplace(r, classes++).first;
    edge_class[i] = it->second;
  }

  FactorizationResult result;
  result.edge_class = edge_class;
  if (classes == 1) {
    result.factors.push_back(g);
    result.reconstruction = identity_perm(n);
    return result;
  }

  // layers through vertex 0: the component of 0 in each color class
  std::int64_t layer_product = 1;
  for (int cls = 0; cls < classes; ++cls) {
    std::vector<int> layer;
    std::vector<int> index_of(n, -1);
    layer.push_back(0);
    index_of[0] = 0;
    for (std::size_t h = 0; h < layer.size(); ++h) {
      int u = layer[h];
      for (int v : g.neighbors(u))
        if (edge_class[eid(u, v)] == cls && index_of[v] < 0) {
          index_of[v] = static_cast<int>(layer.size());
          layer.push_back(v);
        }
    }
    // relabel ascending by original vertex id
    std::vector<int> sorted_layer = layer;
    std::sort(sorted_layer.begin(), sorted_layer.end());
    for (std::size_t i = 0; i < sorted_layer.size(); ++i) index_of[sorted_layer[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> fedges;
    for (int u : sorted_layer)
      for (int v : g.neighbors(u))
        if (u < v && index_of[v] >= 0 && edge_class[eid(u, v)] == cls)
          fedges.emplace_back(index_of[u], index_of[v]);
    layer_product *= static_cast<std::int64_t>(sorted_layer.size());
    result.factors.push_back(Graph::from_edges(static_cast<int>(sorted_layer.size()), fedges));
  }
  if (layer_product != n)
    throw verification_error("prime_factorize: layer sizes do not multiply to the vertex count");

  // certify each factor prime by recursion
  for (const Graph& factor : result.factors) {
    FactorizationResult sub = prime_factorize(factor, max_vertices);
    if (sub.factors.size() != 1)
      throw verification_error("prime_factorize: produced a non-prime factor");
  }

  // recomposition certificate
  ProductResult prod = cartesian_product(result.factors);
  auto iso = are_isomorphic(prod.graph, g);
  if (!iso) throw verification_error("prime_factorize: recomposition is not isomorphic to the input");
  result.reconstruction = *iso;
  return result;
}

// True iff g has more than one vertex and admits no Cartesian decomposition.
inline bool is_cartesian_prime(const Graph& g, int max_vertices = 256) {
  if (g.vertex_count() <= 1) return false;
  return prime_factorize(g, max_vertices).factors.size() == 1;
}

}  // namespace gpaley
