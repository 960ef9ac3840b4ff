#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#define DOCTEST_CONFIG_SUPER_FAST_ASSERTS
#include <doctest.h>

#include <set>
#include <unordered_set>

#include "gpaley/field.hpp"

using namespace gpaley;

namespace {

// every (p, n) with p^n <= limit and n >= 1
std::vector<std::pair<int64, int>> field_shapes(int64 limit) {
  std::vector<std::pair<int64, int>> out;
  for (int64 p = 2; p <= limit; ++p) {
    if (!is_prime(p)) continue;
    int64 q = p;
    int n = 1;
    while (q <= limit) {
      out.push_back({p, n});
      if (q > limit / p) break;
      q *= p;
      ++n;
    }
  }
  return out;
}

// additive closure of a set, together with 0
std::set<int64> additive_closure(const Field& f, const std::vector<int64>& gens) {
  std::set<int64> closed(gens.begin(), gens.end());
  closed.insert(0);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int64> cur(closed.begin(), closed.end());
    for (int64 a : cur)
      for (int64 b : cur)
        if (closed.insert(f.add(a, b)).second) grew = true;
  }
  return closed;
}

}  // namespace

TEST_CASE("find_irreducible canonical moduli") {
  CHECK(find_irreducible(2, 2).coeffs == std::vector<int64>{1, 1, 1});  // x^2+x+1
  CHECK(find_irreducible(3, 2).coeffs == std::vector<int64>{1, 0, 1});  // x^2+1
  CHECK(find_irreducible(2, 4).coeffs == std::vector<int64>{1, 1, 0, 0, 1});  // x^4+x+1
  CHECK(find_irreducible(5, 1).coeffs == std::vector<int64>{0, 1});  // x
}

TEST_CASE("field arithmetic examples") {
  Field gf4(2, 2);
  CHECK(gf4.mul(2, 2) == 3);  // x * x = x + 1
  CHECK(gf4.add(3, 0) == 3);

  Field gf9(3, 2);
  CHECK(gf9.modulus().coeffs == std::vector<int64>{1, 0, 1});
  CHECK(gf9.mul(4, 4) == 6);  // (x+1)^2 = 2x
  CHECK_THROWS_AS(gf9.inv(0), std::domain_error);
}

TEST_CASE("find_primitive canonical xi") {
  CHECK(Field(2, 2).xi() == 2);  // x
  CHECK(Field(3, 2).xi() == 4);  // x + 1
  CHECK(Field(7, 1).xi() == 3);
}

TEST_CASE("frobenius") {
  Field gf4(2, 2);
  CHECK(gf4.frobenius(2, 0) == 2);
  CHECK(gf4.frobenius(2, 1) == 3);  // x^2 = x + 1
  Field gf9(3, 2);
  for (int64 a = 0; a < 9; ++a) CHECK(gf9.frobenius(gf9.frobenius(a, 1), 1) == a);
}

TEST_CASE("subfield_elements") {
  Field gf9(3, 2);
  CHECK(gf9.subfield_elements(1) == std::vector<int64>{0, 1, 2});
  CHECK(gf9.subfield_elements(2).size() == 9);
  Field gf16(2, 4);
  auto sub = gf16.subfield_elements(2);
  REQUIRE(sub.size() == 4);
  CHECK(sub[0] == 0);
  CHECK(sub[1] == 1);
  std::set<int64> s(sub.begin(), sub.end());
  for (int64 a : sub)
    for (int64 b : sub) {
      CHECK(s.count(gf16.add(a, b)));
      CHECK(s.count(gf16.mul(a, b)));
    }
  CHECK_THROWS_AS(gf16.subfield_elements(3), std::invalid_argument);
}

TEST_CASE("power_subgroup examples") {
  Field gf9(3, 2);
  CHECK(gf9.power_subgroup(8).size() == 8);
  CHECK(gf9.power_subgroup(4) == std::vector<int64>{6, 2, 3, 1});
  Field gf7(7, 1);
  CHECK(gf7.power_subgroup(2) == std::vector<int64>{6, 1});
  CHECK_THROWS_AS(gf7.power_subgroup(4), std::invalid_argument);
}

TEST_CASE("field axioms, exhaustive up to order 256") {
  for (auto [p, n] : field_shapes(256)) {
    Field f(p, n);
    const int64 q = f.order();
    CAPTURE(p);
    CAPTURE(n);
    // xi has full order
    CHECK(f.element_order(f.xi()) == q - 1);
    for (int64 a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int64 b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int64 c = 0; c < q; c += (q > 32 ? 7 : 1)) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("frobenius is a field homomorphism") {
  for (auto [p, n] : field_shapes(128)) {
    Field f(p, n);
    for (int i = 0; i < n; ++i)
      for (int64 a = 0; a < f.order(); ++a)
        for (int64 b = 0; b < f.order(); ++b) {
          CHECK(f.frobenius(f.add(a, b), i) == f.add(f.frobenius(a, i), f.frobenius(b, i)));
          CHECK(f.frobenius(f.mul(a, b), i) == f.mul(f.frobenius(a, i), f.frobenius(b, i)));
        }
  }
}

TEST_CASE("power subgroups are multiplication- and Frobenius-stable") {
  for (auto [p, n] : field_shapes(243)) {
    Field f(p, n);
    for (int64 k : divisors(f.order() - 1)) {
      auto sub = f.power_subgroup(k);
      CHECK(static_cast<int64>(sub.size()) == k);
      std::unordered_set<int64> s(sub.begin(), sub.end());
      CHECK(s.size() == sub.size());
      for (int64 a : sub) {
        for (int64 b : sub) CHECK(s.count(f.mul(a, b)));
        for (int i = 0; i < n; ++i) CHECK(s.count(f.frobenius(a, i)));
      }
    }
  }
}

TEST_CASE("additive closure of a multiplicative subgroup is a subfield") {
  // sweep limited here; the full p^n <= 729 sweep runs in the acceptance suite
  for (auto [p, n] : field_shapes(128)) {
    Field f(p, n);
    for (int64 k : divisors(f.order() - 1)) {
      auto closed = additive_closure(f, f.power_subgroup(k));
      // size is p^m for some m | n, and the set is multiplicatively closed
      int64 size = static_cast<int64>(closed.size());
      int m = 0;
      int64 pm = 1;
      while (pm < size) {
        pm *= p;
        ++m;
      }
      CHECK(pm == size);
      CHECK(m >= 1);
      CHECK(n % m == 0);
      for (int64 a : closed)
        for (int64 b : closed) CHECK(closed.count(f.mul(a, b)));
    }
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Field(4, 2), param_error);
  CHECK_THROWS_AS(Field(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(Field(2, 40), param_error);
}
