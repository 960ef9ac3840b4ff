#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpaley/errors.hpp"
#include "gpaley/numtheory.hpp"

namespace gpaley {

// Coefficients mod p, lowest degree first, trailing zeros trimmed.
struct Polynomial {
  int64 p = 2;
  std::vector<int64> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool operator==(const Polynomial& o) const {
    return p == o.p && coeffs == o.coeffs;
  }
};

namespace detail {

// Remainder of a mod b over GF(p); b must be nonzero.
inline std::vector<int64> poly_mod(std::vector<int64> a, const std::vector<int64>& b, int64 p) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    int da = static_cast<int>(a.size()) - 1;
    // b is monic in all our uses; divide defensively anyway
    int64 lead_inv = 1;
    if (b[db] != 1) lead_inv = pow_mod(b[db], p - 2, p);
    int64 factor = mul_mod(a[da], lead_inv, p);
    for (int i = 0; i <= db; ++i) {
      int64& c = a[da - db + i];
      c = ((c - factor * b[i]) % p + p) % p;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  return a;
}

inline std::vector<int64> poly_mul_mod(const std::vector<int64>& a, const std::vector<int64>& b,
                                       const std::vector<int64>& mod, int64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int64> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(c), mod, p);
}

}  // namespace detail

// The monic degree-n polynomial over GF(p), irreducible, whose non-leading
// coefficients have the smallest base-p encoding.  For n = 1 this is x.
inline Polynomial find_irreducible(int64 p, int n) {
  if (n == 1) return Polynomial{p, {0, 1}};
  int64 limit = ipow_checked(p, n);
  for (int64 t = 0; t < limit; ++t) {
    std::vector<int64> f(n + 1, 0);
    int64 v = t;
    for (int i = 0; i < n; ++i) {
      f[i] = v % p;
      v /= p;
    }
    f[n] = 1;
    bool reducible = false;
    for (int e = 1; 2 * e <= n && !reducible; ++e) {
      int64 glim = ipow_checked(p, e);
      for (int64 u = 0; u < glim; ++u) {
        std::vector<int64> g(e + 1, 0);
        int64 w = u;
        for (int i = 0; i < e; ++i) {
          g[i] = w % p;
          w /= p;
        }
        g[e] = 1;
        if (detail::poly_mod(f, g, p).empty()) {
          reducible = true;
          break;
        }
      }
    }
    if (!reducible) return Polynomial{p, f};
  }
  throw std::logic_error("find_irreducible: none found");  // unreachable
}

// Exact arithmetic in GF(p^n).  Elements are integer encodings in [0, p^n):
// the base-p packing of the coefficient vector, constant term least
// significant.  The modulus is the canonical smallest irreducible and xi the
// smallest-encoding primitive element, so every derived labeling is
// reproducible across runs.
class Field {
 public:
  // Largest supported field order; exp/log tables are materialized.
  static constexpr int64 kOrderBound = int64{1} << 20;

  Field(int64 p, int n) : p_(p), n_(n), modulus_(make_modulus(p, n)) {
    q_ = ipow_checked(p, n);
    xi_ = find_primitive();
    build_tables();
  }

  int64 p() const { return p_; }
  int n() const { return n_; }
  int64 order() const { return q_; }
  const Polynomial& modulus() const { return modulus_; }
  int64 xi() const { return xi_; }

  int64 add(int64 a, int64 b) const {
    check(a);
    check(b);
    int64 r = 0, place = 1;
    for (int i = 0; i < n_; ++i) {
      r += (a % p_ + b % p_) % p_ * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return r;
  }

  int64 neg(int64 a) const {
    check(a);
    int64 r = 0, place = 1;
    for (int i = 0; i < n_; ++i) {
      r += (p_ - a % p_) % p_ * place;
      a /= p_;
      place *= p_;
    }
    return r;
  }

  int64 sub(int64 a, int64 b) const { return add(a, neg(b)); }

  int64 mul(int64 a, int64 b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }

  int64 inv(int64 a) const {
    check(a);
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  int64 pow(int64 a, int64 e) const {
    check(a);
    if (a == 0) return e == 0 ? 1 : 0;
    if (e < 0) throw std::invalid_argument("Field::pow: negative exponent");
    return exp_[static_cast<int64>(log_[a] % (q_ - 1) * static_cast<__int128>(e % (q_ - 1)) % (q_ - 1))];
  }

  // e^(p^i), the i-th power of the Frobenius automorphism.
  int64 frobenius(int64 e, int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("Field::frobenius: need 0 <= i < n");
    return pow(e, ipow_checked(p_, i));
  }

  // The p^m elements fixed by the m-th Frobenius power, ascending.
  std::vector<int64> subfield_elements(int m) const {
    if (m < 1 || n_ % m != 0)
      throw std::invalid_argument("Field::subfield_elements: m must divide n");
    int64 pm = ipow_checked(p_, m);
    std::vector<int64> out;
    out.reserve(pm);
    for (int64 a = 0; a < q_; ++a)
      if (pow(a, pm) == a) out.push_back(a);
    return out;
  }

  // The cyclic subgroup <xi^d> of order k, d = (q-1)/k, listed as
  // xi^d, xi^2d, ..., xi^kd = 1.
  std::vector<int64> power_subgroup(int64 k) const {
    if (k < 1 || (q_ - 1) % k != 0)
      throw std::invalid_argument("Field::power_subgroup: k must divide q-1");
    int64 d = (q_ - 1) / k;
    std::vector<int64> out;
    out.reserve(k);
    for (int64 i = 1; i <= k; ++i) out.push_back(exp_[d * i % (q_ - 1)]);
    return out;
  }

  int64 element_order(int64 a) const {
    check(a);
    if (a == 0) throw std::domain_error("Field::element_order: zero");
    return (q_ - 1) / std::gcd(q_ - 1, log_[a] == 0 ? q_ - 1 : log_[a]);
  }

 private:
  static Polynomial make_modulus(int64 p, int n) {
    if (!is_prime(p)) throw param_error(param_error_code::not_prime, "Field: p not prime");
    if (n < 1) throw std::invalid_argument("Field: n must be >= 1");
    if (ipow_checked(p, n) > kOrderBound)
      throw param_error(param_error_code::order_bound, "Field: order exceeds bound");
    return find_irreducible(p, n);
  }

  void check(int64 a) const {
    if (a < 0 || a >= q_) throw std::out_of_range("Field: encoding out of range");
  }

  std::vector<int64> decode(int64 a) const {
    std::vector<int64> c(n_, 0);
    for (int i = 0; i < n_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
  }

  int64 encode(const std::vector<int64>& c) const {
    int64 r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * p_ + c[i];
    return r;
  }

  int64 raw_mul(int64 a, int64 b) const {
    return encode(detail::poly_mul_mod(decode(a), decode(b), modulus_.coeffs, p_));
  }

  int64 raw_pow(int64 a, int64 e) const {
    int64 r = 1;
    while (e > 0) {
      if (e & 1) r = raw_mul(r, a);
      a = raw_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  int64 find_primitive() const {
    auto fac = factorize(q_ - 1);
    for (int64 e = 1; e < q_; ++e) {
      bool ok = true;
      for (auto [r, _] : fac.factors)
        if (raw_pow(e, (q_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) return e;
    }
    throw std::logic_error("Field: no primitive element");  // unreachable
  }

  void build_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, -1);
    int64 acc = 1;
    for (int64 i = 0; i < q_ - 1; ++i) {
      exp_[i] = acc;
      log_[acc] = i;
      acc = raw_mul(acc, xi_);
    }
    if (acc != 1) throw std::logic_error("Field: xi is not primitive");
  }

  int64 p_;
  int n_;
  Polynomial modulus_;
  int64 q_ = 0;
  int64 xi_ = 0;
  std::vector<int64> exp_;
  std::vector<int64> log_;
};

}  // namespace gpaley
