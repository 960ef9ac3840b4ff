#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gpaley/errors.hpp"

namespace gpaley {

using int64 = std::int64_t;

// Canonical prime factorization, primes ascending.
struct Factorization {
  int64 value = 1;
  std::vector<std::pair<int64, int>> factors;
};

inline Factorization factorize(int64 m) {
  if (m < 1) throw std::invalid_argument("factorize: m must be positive");
  Factorization f;
  f.value = m;
  for (int64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (m > 1) f.factors.emplace_back(m, 1);
  return f;
}

inline bool is_prime(int64 m) {
  if (m < 2) return false;
  for (int64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2))
    if (m % p == 0) return false;
  return true;
}

// All divisors of m, ascending.
inline std::vector<int64> divisors(int64 m) {
  Factorization f = factorize(m);
  std::vector<int64> out{1};
  for (auto [p, e] : f.factors) {
    std::size_t old = out.size();
    int64 pe = 1;
    for (int i = 0; i < e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < old; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// base^exp over int64 with overflow detection.
inline int64 ipow_checked(int64 base, int exp) {
  if (base < 0 || exp < 0) throw std::invalid_argument("ipow_checked: negative input");
  int64 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<int64>::max() / base)
      throw bound_error("ipow_checked: 63-bit overflow");
    r *= base;
  }
  return r;
}

inline int64 mul_mod(int64 a, int64 b, int64 m) {
  return static_cast<int64>(static_cast<__int128>(a) * b % m);
}

inline int64 pow_mod(int64 a, int64 e, int64 m) {
  a %= m;
  if (a < 0) a += m;
  int64 r = 1 % m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Least e >= 1 with g^e = 1 (mod m).
inline int64 multiplicative_order(int64 g, int64 m) {
  if (m < 2) throw std::invalid_argument("multiplicative_order: m must be >= 2");
  if (std::gcd(((g % m) + m) % m, m) != 1)
    throw std::invalid_argument("multiplicative_order: gcd(g, m) != 1");
  int64 x = ((g % m) + m) % m;
  int64 acc = x;
  for (int64 e = 1; e <= m; ++e) {
    if (acc == 1) return e;
    acc = mul_mod(acc, x, m);
  }
  throw std::logic_error("multiplicative_order: no order found");  // unreachable
}

// True iff k | p^n - 1 and k does not divide p^a - 1 for any a < n.
// Checking only proper divisors a of n is enough because
// gcd(p^a - 1, p^n - 1) = p^gcd(a,n) - 1.
inline bool is_primitive_divisor(int64 k, int64 p, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("is_primitive_divisor: bad input");
  int64 q = ipow_checked(p, n);
  if ((q - 1) % k != 0) return false;
  for (int64 a : divisors(n)) {
    if (a == n) continue;
    if ((ipow_checked(p, static_cast<int>(a)) - 1) % k == 0) return false;
  }
  return true;
}

}  // namespace gpaley
