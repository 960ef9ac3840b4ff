#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "gpaley/errors.hpp"

namespace gpaley {

// A bijection on [0, degree), stored as its image array.
using Permutation = std::vector<int>;

inline Permutation identity_perm(int degree) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  return p;
}

inline bool is_identity(const Permutation& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

// apply a, then b
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Permutation inverse(const Permutation& a) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = i;
  return r;
}

inline bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

namespace detail {

// Stabilizer chain built by sifting (Schreier-Sims).  gens_[i] generates the
// pointwise stabilizer of base_[0..i-1]; orbits are breadth-first closures
// under those generators, and the group order is the product of the orbit
// sizes once every Schreier generator of every level sifts to the identity.
class StabilizerChain {
 public:
  explicit StabilizerChain(int degree, std::uint64_t bound)
      : degree_(degree), bound_(bound) {}

  void insert(const Permutation& g) {
    if (static_cast<int>(g.size()) != degree_)
      throw std::invalid_argument("group closure: degree mismatch");
    if (!is_permutation(g))
      throw std::invalid_argument("group closure: not a permutation");
    if (is_identity(g)) return;
    std::size_t fixed = 0;
    while (fixed < base_.size() && g[base_[fixed]] == base_[fixed]) ++fixed;
    if (fixed == base_.size()) add_base_point(min_moved(g));
    for (std::size_t l = 0; l <= fixed; ++l) gens_[l].push_back(g);
    for (int l = static_cast<int>(fixed); l >= 0; --l) process_level(l);
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& t : transversal_) o *= t.size();
    return o;
  }

 private:
  static int min_moved(const Permutation& g) {
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
      if (g[i] != i) return i;
    return -1;
  }

  void add_base_point(int pt) {
    base_.push_back(pt);
    gens_.emplace_back();
    transversal_.emplace_back();
    orbit_order_.emplace_back();
  }

  // Strip g through levels from..end; returns the level where it got stuck
  // (base_.size() when it passed everything).  g becomes the residue.
  int sift(Permutation& g, int from) const {
    for (int i = from; i < static_cast<int>(base_.size()); ++i) {
      if (is_identity(g)) return i;
      int x = g[base_[i]];
      auto it = transversal_[i].find(x);
      if (it == transversal_[i].end()) return i;
      g = compose(g, inverse(it->second));
    }
    return static_cast<int>(base_.size());
  }

  // Re-establish the chain property at level i: every Schreier generator of
  // the level must sift to the identity through the deeper levels.  Residues
  // are new generators of the deeper stabilizers.
  void process_level(int i) {
    rebuild_orbit(i);
    if (order() > bound_) throw bound_error("group closure: order bound exceeded");
    // residues land strictly deeper, so this snapshot stays complete
    for (std::size_t h = 0; h < orbit_order_[i].size(); ++h) {
      int x = orbit_order_[i][h];
      for (std::size_t gi = 0; gi < gens_[i].size(); ++gi) {
        Permutation r = compose(transversal_[i].at(x), gens_[i][gi]);
        int j = sift(r, i);
        if (is_identity(r)) continue;
        if (j == static_cast<int>(base_.size())) add_base_point(min_moved(r));
        for (int l = i + 1; l <= j; ++l) gens_[l].push_back(r);
        for (int l = j; l >= i + 1; --l) process_level(l);
      }
    }
  }

  void rebuild_orbit(int i) {
    transversal_[i].clear();
    orbit_order_[i].clear();
    transversal_[i][base_[i]] = identity_perm(degree_);
    orbit_order_[i].push_back(base_[i]);
    for (std::size_t h = 0; h < orbit_order_[i].size(); ++h) {
      int x = orbit_order_[i][h];
      for (const Permutation& g : gens_[i]) {
        int y = g[x];
        if (!transversal_[i].count(y)) {
          transversal_[i][y] = compose(transversal_[i].at(x), g);
          orbit_order_[i].push_back(y);
        }
      }
    }
  }

  int degree_;
  std::uint64_t bound_;
  std::vector<int> base_;
  std::vector<std::vector<Permutation>> gens_;
  std::vector<std::map<int, Permutation>> transversal_;
  std::vector<std::vector<int>> orbit_order_;
};

}  // namespace detail

// Exact order of the permutation group generated by gens.
inline std::uint64_t group_closure_order(const std::vector<Permutation>& gens,
                                         std::uint64_t bound = 10'000'000) {
  if (gens.empty()) return 1;
  detail::StabilizerChain chain(static_cast<int>(gens[0].size()), bound);
  for (const Permutation& g : gens) chain.insert(g);
  return chain.order();
}

}  // namespace gpaley
