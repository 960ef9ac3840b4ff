#pragma once

#include <cstdint>
#include <vector>

#include "gpaley/errors.hpp"
#include "gpaley/field.hpp"
#include "gpaley/graph.hpp"
#include "gpaley/numtheory.hpp"
#include "gpaley/permutation.hpp"

namespace gpaley {

// Validated parameter triple (p, n, k) together with its field model and
// connection set S = <xi^d>, d = (p^n-1)/k.
struct GPaleyParams {
  int64 p;
  int n;
  int64 k;
  int64 d;
  Field field;
  std::vector<int64> S;
  bool connected;  // k is a primitive divisor of p^n - 1
};

inline GPaleyParams validate_params(int64 p, int n, int64 k) {
  if (!is_prime(p)) throw param_error(param_error_code::not_prime, "p is not prime");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  int64 q = ipow_checked(p, n);  // may throw bound_error on 63-bit overflow
  if (q > Field::kOrderBound)
    throw param_error(param_error_code::order_bound, "p^n exceeds the order bound");
  if (p % 2 == 1 && k % 2 == 1)
    throw param_error(param_error_code::odd_k_odd_p, "k must be even when p is odd");
  if ((q - 1) % k != 0)
    throw param_error(param_error_code::k_does_not_divide, "k does not divide p^n - 1");
  Field field(p, n);
  std::vector<int64> S = field.power_subgroup(k);
  bool connected = is_primitive_divisor(k, p, n);
  return GPaleyParams{p, n, k, (q - 1) / k, std::move(field), std::move(S), connected};
}

// The graph on p^n vertices (vertex index = element encoding) with an edge
// {x, y} whenever x - y is in S.
inline Graph build(const GPaleyParams& params) {
  const Field& f = params.field;
  return Graph::cayley(
      f.order(), [&f](int64 a, int64 b) { return f.add(a, b); }, params.S);
}

// Sweep property: BFS connectivity must agree with the primitive-divisor
// predicate.
inline bool connectivity_consistency(const GPaleyParams& params) {
  return is_connected(build(params)) == params.connected;
}

// Generators of the affine subgroup G(p^n, k) as explicit vertex
// permutations: translations by 1, xi, ..., xi^(n-1) (an additive generating
// set), the multiplication x -> x * xi^d, and the Frobenius x -> x^p.
// Every generator is checked to preserve the edge set.
inline std::vector<Permutation> affine_generators(const GPaleyParams& params) {
  const Field& f = params.field;
  const int64 q = f.order();
  std::vector<Permutation> gens;
  for (int j = 0; j < params.n; ++j) {
    int64 u = f.pow(f.xi(), j);
    Permutation t(q);
    for (int64 x = 0; x < q; ++x) t[x] = static_cast<int>(f.add(x, u));
    gens.push_back(std::move(t));
  }
  {
    int64 m = f.pow(f.xi(), params.d);
    Permutation s(q);
    for (int64 x = 0; x < q; ++x) s[x] = static_cast<int>(f.mul(x, m));
    gens.push_back(std::move(s));
  }
  {
    Permutation fr(q);
    for (int64 x = 0; x < q; ++x) fr[x] = static_cast<int>(f.pow(x, f.p()));
    gens.push_back(std::move(fr));
  }
  Graph g = build(params);
  for (const Permutation& perm : gens)
    for (auto [u, v] : g.edges())
      if (!g.has_edge(perm[u], perm[v]))
        throw verification_error("affine_generators: generator does not preserve edges");
  return gens;
}

}  // namespace gpaley
