#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "gpaley/numtheory.hpp"

using namespace gpaley;

namespace {

// Definitional oracle: check every a in [1, n), not just divisors of n.
bool primitive_divisor_all_a(int64 k, int64 p, int n) {
  if ((ipow_checked(p, n) - 1) % k != 0) return false;
  for (int a = 1; a < n; ++a)
    if ((ipow_checked(p, a) - 1) % k == 0) return false;
  return true;
}

std::vector<int64> primes_up_to(int64 limit) {
  std::vector<int64> out;
  for (int64 p = 2; p <= limit; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("factorize examples") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(80).factors == std::vector<std::pair<int64, int>>{{2, 4}, {5, 1}});
  CHECK(factorize(6560).factors == std::vector<std::pair<int64, int>>{{2, 5}, {5, 1}, {41, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize recomposes and divisor counts match") {
  for (int64 m = 1; m <= 3000; ++m) {
    auto f = factorize(m);
    int64 prod = 1;
    int64 last_prime = 0;
    std::size_t dcount = 1;
    for (auto [p, e] : f.factors) {
      CHECK(p > last_prime);
      last_prime = p;
      CHECK(e >= 1);
      CHECK(is_prime(p));
      for (int i = 0; i < e; ++i) prod *= p;
      dcount *= e + 1;
    }
    CHECK(prod == m);
    CHECK(divisors(m).size() == dcount);
  }
}

TEST_CASE("divisors examples") {
  CHECK(divisors(1) == std::vector<int64>{1});
  CHECK(divisors(4) == std::vector<int64>{1, 2, 4});
  CHECK(divisors(80) == std::vector<int64>{1, 2, 4, 5, 8, 10, 16, 20, 40, 80});
}

TEST_CASE("multiplicative_order") {
  CHECK(multiplicative_order(1, 7) == 1);
  CHECK(multiplicative_order(3, 7) == 6);
  CHECK(multiplicative_order(5, 13) == 4);
  CHECK_THROWS_AS(multiplicative_order(6, 9), std::invalid_argument);
  // direct powering oracle
  for (int64 m = 2; m <= 200; ++m)
    for (int64 g = 1; g < m; ++g) {
      if (std::gcd(g, m) != 1) continue;
      int64 e = multiplicative_order(g, m);
      CHECK(pow_mod(g, e, m) == 1);
      for (int64 i = 1; i < e; ++i) CHECK(pow_mod(g, i, m) != 1);
    }
}

TEST_CASE("is_primitive_divisor examples") {
  CHECK(is_primitive_divisor(20, 3, 4));
  CHECK_FALSE(is_primitive_divisor(8, 3, 4));  // 8 divides 3^2 - 1
  CHECK(is_primitive_divisor(1, 2, 1));
  CHECK(is_primitive_divisor(1, 13, 1));
  CHECK(is_primitive_divisor(4, 7, 2));
}

TEST_CASE("gcd of p^a-1 and p^n-1") {
  for (int64 p : {2, 3, 5, 7, 11, 13})
    for (int a = 1; a <= 12; ++a)
      for (int n = 1; n <= 12; ++n) {
        if (ipow_checked(p, std::max(a, n)) > (int64{1} << 42)) continue;
        int64 lhs = std::gcd(ipow_checked(p, a) - 1, ipow_checked(p, n) - 1);
        CHECK(lhs == ipow_checked(p, std::gcd(a, n)) - 1);
      }
}

TEST_CASE("restricted primitive-divisor check equals the definitional loop") {
  for (int64 p : primes_up_to(997)) {
    for (int n = 1;; ++n) {
      int64 q;
      try {
        q = ipow_checked(p, n);
      } catch (const bound_error&) {
        break;
      }
      if (q > 1'000'000) break;
      for (int64 k : divisors(q - 1))
        CHECK(is_primitive_divisor(k, p, n) == primitive_divisor_all_a(k, p, n));
    }
  }
}

TEST_CASE("ipow_checked overflow") {
  CHECK(ipow_checked(2, 62) == int64{1} << 62);
  CHECK_THROWS_AS(ipow_checked(2, 64), bound_error);
  CHECK_THROWS_AS(ipow_checked(10, 19), bound_error);
}
