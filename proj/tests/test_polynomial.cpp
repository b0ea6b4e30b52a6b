#include <doctest.h>

#include <random>
#include <set>

#include "q8curves/errors.hpp"
#include "q8curves/polynomial.hpp"

using namespace q8curves;

namespace {

Poly random_poly(const PrimeContext& F, std::size_t max_degree, std::mt19937_64& rng) {
  std::vector<Fp> c(rng() % (max_degree + 1) + 1);
  for (auto& x : c) x = F.from_uint(rng());
  return Poly(std::move(c));
}

// Every monic polynomial of degree 1..max_degree over F_p dividing both f and g.
std::vector<Poly> common_monic_divisors(const PrimeContext& F, const Poly& f, const Poly& g,
                                        std::size_t max_degree) {
  std::vector<Poly> out;
  const u64 p = F.modulus();
  for (std::size_t d = 1; d <= max_degree; ++d) {
    std::vector<u64> digits(d, 0);
    for (;;) {
      std::vector<Fp> c(d + 1);
      for (std::size_t i = 0; i < d; ++i) c[i] = Fp{digits[i]};
      c[d] = F.one();
      Poly h(std::move(c));
      if (divides(F, h, f) && divides(F, h, g)) out.push_back(h);
      std::size_t i = 0;
      while (i < d && ++digits[i] == p) digits[i++] = 0;
      if (i == d) break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Poly normalizes trailing zeros; zero has no degree") {
  CHECK(Poly(std::vector<Fp>{Fp{1}, Fp{0}, Fp{0}}).size() == 1);
  CHECK(Poly().is_zero());
  CHECK_FALSE(Poly().degree().has_value());
  CHECK(Poly(std::vector<Fp>{Fp{0}}).is_zero());
  CHECK(Poly::monomial(Fp{3}, 4).degree() == 4u);
}

TEST_CASE("poly_mul examples") {
  const PrimeContext F(7);
  const Poly am1 = Poly::from_ints(F, {-1, 1}), ap1 = Poly::from_ints(F, {1, 1});
  CHECK(mul(F, ap1, am1) == Poly::from_ints(F, {-1, 0, 1}));
  const Poly f = Poly::from_ints(F, {3, 0, 5, 1});
  CHECK(mul(F, Poly::constant(F.one()), f) == f);
  CHECK(mul(F, Poly(), f).is_zero());
}

TEST_CASE("Karatsuba and schoolbook products are identical") {
  const PrimeContext F(101);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Poly f = random_poly(F, 64, rng), g = random_poly(F, 64, rng);
    CHECK(mul_karatsuba(F, f, g) == mul_schoolbook(F, f, g));
  }
  // Large and unbalanced operands cross the recursion threshold several times.
  const PrimeContext G(1000000007);
  for (std::size_t n : {49u, 97u, 200u, 513u}) {
    std::vector<Fp> a(n), b(n / 3 + 50);
    for (auto& x : a) x = G.from_uint(rng());
    for (auto& x : b) x = G.from_uint(rng());
    const Poly f(a), g(b);
    CHECK(mul_karatsuba(G, f, g) == mul_schoolbook(G, f, g));
    CHECK(mul_karatsuba(G, f, f) == mul_schoolbook(G, f, f));
  }
}

TEST_CASE("poly_mul is commutative and associative") {
  const PrimeContext F(101);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Poly f = random_poly(F, 32, rng), g = random_poly(F, 32, rng), h = random_poly(F, 32, rng);
    CHECK(mul(F, f, g) == mul(F, g, f));
    CHECK(mul(F, mul(F, f, g), h) == mul(F, f, mul(F, g, h)));
    if (!f.is_zero() && !g.is_zero()) CHECK(*mul(F, f, g).degree() == *f.degree() + *g.degree());
  }
}

TEST_CASE("divrem reconstructs the dividend") {
  const PrimeContext F(97);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Poly f = random_poly(F, 40, rng), g = random_poly(F, 15, rng);
    if (g.is_zero()) continue;
    auto [q, r] = divrem(F, f, g);
    CHECK(add(F, mul(F, q, g), r) == f);
    CHECK((r.is_zero() || *r.degree() < *g.degree()));
  }
  CHECK_THROWS_AS(divrem(F, Poly::constant(F.one()), Poly()), ZeroInput);
}

TEST_CASE("exact division with a remainder is an internal error") {
  const PrimeContext F(7);
  CHECK_THROWS_AS(exact_div(F, Poly::from_ints(F, {1, 0, 1}), Poly::from_ints(F, {-1, 1})), InternalError);
  CHECK(exact_div(F, Poly::from_ints(F, {-1, 0, 1}), Poly::from_ints(F, {-1, 1})) == Poly::from_ints(F, {1, 1}));
}

TEST_CASE("poly_gcd examples") {
  const PrimeContext F(7);
  CHECK(gcd(F, Poly::from_ints(F, {-1, 0, 1}), Poly::from_ints(F, {-1, 1})) == Poly::from_ints(F, {-1, 1}));
  const Poly f = Poly::from_ints(F, {2, 3, 4});
  CHECK(gcd(F, f, Poly()) == monic(F, f));
  CHECK(gcd(F, Poly(), f) == monic(F, f));
  CHECK_THROWS_AS(gcd(F, Poly(), Poly()), BothZero);
}

TEST_CASE("poly_gcd of g*u and g*v with coprime u, v is monic(g)") {
  // Coprimality of u, v and the gcd itself are confirmed against an
  // exhaustive search over monic divisors of degree <= 4 over F_7.
  const PrimeContext F(7);
  std::mt19937_64 rng(14);
  int checked = 0;
  while (checked < 40) {
    const Poly g = random_poly(F, 2, rng), u = random_poly(F, 3, rng), v = random_poly(F, 3, rng);
    if (g.is_zero() || u.is_zero() || v.is_zero()) continue;
    if (!common_monic_divisors(F, u, v, 3).empty()) continue;
    const Poly gu = mul(F, g, u), gv = mul(F, g, v);
    const Poly d = gcd(F, gu, gv);
    CHECK(d == monic(F, g));
    // Every common divisor found by brute force divides the computed gcd.
    for (const Poly& h : common_monic_divisors(F, gu, gv, 4)) CHECK(divides(F, h, d));
    ++checked;
  }
}

TEST_CASE("poly_gcd divides both inputs") {
  const PrimeContext F(101);
  std::mt19937_64 rng(15);
  for (int i = 0; i < 300; ++i) {
    const Poly c = random_poly(F, 5, rng);
    const Poly f = mul(F, c, random_poly(F, 20, rng)), g = mul(F, c, random_poly(F, 20, rng));
    if (f.is_zero() && g.is_zero()) continue;
    const Poly d = gcd(F, f, g);
    CHECK(d.leading() == F.one());
    CHECK(rem(F, f, d).is_zero());
    CHECK(rem(F, g, d).is_zero());
    if (!c.is_zero() && !f.is_zero() && !g.is_zero()) CHECK(divides(F, c, d));
  }
}

TEST_CASE("poly_eval examples") {
  const PrimeContext F23(23), F13(13);
  CHECK(eval(F23, Poly::from_ints(F23, {12, 0, 1}), F23.embed(Fp{0})) == F23.embed(Fp{12}));
  CHECK(eval(F13, Poly::from_ints(F13, {12, 0, 1}), F13.embed(Fp{1})).is_zero());
  CHECK(eval(F13, Poly(), Fp2{Fp{3}, Fp{4}}).is_zero());
  // F_p and F_p^2 evaluation agree on F_p.
  const Poly f = Poly::from_ints(F13, {5, 7, 0, 11, 2});
  for (u64 x = 0; x < 13; ++x) CHECK(eval(F13, f, F13.embed(Fp{x})) == F13.embed(eval(F13, f, Fp{x})));
}

TEST_CASE("is_squarefree examples") {
  const PrimeContext F(7);
  CHECK(is_squarefree(F, Poly::from_ints(F, {-1, 0, 1})));
  CHECK_FALSE(is_squarefree(F, Poly::from_ints(F, {1, -2, 1})));
  CHECK(is_squarefree(F, Poly::from_ints(F, {0, -1, 0, 0, 0, 0, 0, 1})));  // a^7 - a
  CHECK(is_squarefree(F, Poly::constant(Fp{3})));
  CHECK_FALSE(is_squarefree(F, Poly::from_ints(F, {1, 0, 0, 0, 0, 0, 0, 1})));  // (a+1)^7
  CHECK_THROWS_AS(is_squarefree(F, Poly()), ZeroInput);
}

TEST_CASE("factor reproduces its input") {
  std::mt19937_64 rng(16);
  for (u64 p : {7ull, 11ull, 101ull}) {
    const PrimeContext F(p);
    for (int i = 0; i < 60; ++i) {
      Poly f = random_poly(F, 12, rng);
      if (f.is_zero()) continue;
      // Force some repeated factors.
      if (i % 3 == 0) f = mul(F, f, mul(F, f, random_poly(F, 3, rng)));
      if (f.is_zero()) continue;
      const FactorList fl = factor(F, f, 99 + i);
      CHECK(expand(F, fl) == f);
      std::set<std::vector<Fp>> seen;
      for (const auto& [g, m] : fl.factors) {
        CHECK(g.leading() == F.one());
        CHECK(m >= 1);
        CHECK(seen.insert(g.coeffs()).second);
        // Irreducible: exactly one distinct-degree block of full degree.
        const auto dd = distinct_degree(F, g);
        REQUIRE(dd.size() == 1);
        CHECK(dd[0].first == *g.degree());
      }
    }
  }
}

TEST_CASE("factor handles p-th powers") {
  const PrimeContext F(7);
  // (a^2 + 1)^7 (a - 3): the seventh power has zero derivative.
  Poly base = Poly::from_ints(F, {1, 0, 1});
  Poly f = Poly::from_ints(F, {-3, 1});
  for (int i = 0; i < 7; ++i) f = mul(F, f, base);
  const FactorList fl = factor(F, f);
  REQUIRE(fl.factors.size() == 2);
  CHECK(expand(F, fl) == f);
  CHECK(fl.factors[0].first == Poly::from_ints(F, {-3, 1}));
  CHECK(fl.factors[1].first == base);  // -1 is a nonresidue mod 7
  CHECK(fl.factors[1].second == 7u);
}

TEST_CASE("factor is deterministic for a fixed seed") {
  const PrimeContext F(1000003);
  std::mt19937_64 rng(17);
  const Poly f = mul(F, random_poly(F, 20, rng), random_poly(F, 20, rng));
  const FactorList a = factor(F, f, 5), b = factor(F, f, 5);
  REQUIRE(a.factors.size() == b.factors.size());
  for (std::size_t i = 0; i < a.factors.size(); ++i) CHECK(a.factors[i].first == b.factors[i].first);
}

TEST_CASE("roots_in_fp2 examples") {
  const PrimeContext F41(41);
  // a(a^2 - 36)
  const auto r = roots_in_fp2(F41, Poly::from_ints(F41, {0, -36, 0, 1}));
  CHECK(r.roots == std::vector<Fp2>{F41.embed(Fp{0}), F41.embed(Fp{6}), F41.embed(Fp{35})});
  CHECK(r.residual_degrees.empty());

  const PrimeContext F23(23);
  const Poly s = Poly::from_ints(F23, {12, 0, 1});
  const auto q = roots_in_fp2(F23, s);
  REQUIRE(q.roots.size() == 2);
  for (const Fp2& x : q.roots) {
    CHECK_FALSE(x.in_base_field());
    CHECK(eval(F23, s, x).is_zero());
  }
  CHECK(q.roots[0] == F23.neg(q.roots[1]));

  CHECK_THROWS_AS(roots_in_fp2(F23, Poly::from_ints(F23, {1, 2, 1})), NotSquarefree);
  CHECK_THROWS_AS(roots_in_fp2(F23, Poly()), ZeroInput);
  CHECK(roots_in_fp2(F23, Poly::constant(Fp{5})).roots.empty());
}

TEST_CASE("roots_in_fp2 of a^3 - 2 over F_7 matches exhaustive evaluation on F_49") {
  const PrimeContext F(7);
  const Poly f = Poly::from_ints(F, {-2, 0, 0, 1});
  std::vector<Fp2> brute;
  for (u64 a = 0; a < 7; ++a) {
    for (u64 b = 0; b < 7; ++b) {
      const Fp2 x{Fp{a}, Fp{b}};
      if (eval(F, f, x).is_zero()) brute.push_back(x);
    }
  }
  const auto r = roots_in_fp2(F, f);
  CHECK(r.roots == brute);
  // 2 is not a cube mod 7 and cubic extensions do not embed in F_49.
  CHECK(brute.empty());
  CHECK(r.residual_degrees == std::vector<std::size_t>{3});
}

TEST_CASE("roots_in_fp2 degree accounting on random squarefree inputs") {
  std::mt19937_64 rng(18);
  for (u64 p : {7ull, 13ull, 31ull}) {
    const PrimeContext F(p);
    for (int i = 0; i < 40; ++i) {
      const Poly f = random_poly(F, 14, rng);
      if (f.is_zero() || f.degree() == 0 || !is_squarefree(F, f)) continue;
      const auto r = roots_in_fp2(F, f, 7 + i);
      std::size_t base = 0, conj = 0, residual = 0;
      for (const Fp2& x : r.roots) {
        CHECK(eval(F, f, x).is_zero());
        (x.in_base_field() ? base : conj)++;
      }
      for (auto d : r.residual_degrees) residual += d;
      CHECK(conj % 2 == 0);
      CHECK(2 * (conj / 2) + base + residual == *f.degree());
      // Brute force over F_{p^2} finds the same set.
      std::vector<Fp2> brute;
      for (u64 a = 0; a < p; ++a) {
        for (u64 b = 0; b < p; ++b) {
          if (eval(F, f, Fp2{Fp{a}, Fp{b}}).is_zero()) brute.push_back(Fp2{Fp{a}, Fp{b}});
        }
      }
      CHECK(r.roots == brute);
    }
  }
}

TEST_CASE("to_string") {
  const PrimeContext F(23);
  CHECK(to_string(Poly::from_ints(F, {12, 0, 1})) == "a^2 + 12");
  CHECK(to_string(Poly::constant(F.one())) == "1");
  CHECK(to_string(Poly()) == "0");
  CHECK(to_string(Poly::from_ints(F, {0, 3, 0, 1})) == "a^3 + 3*a");
}
