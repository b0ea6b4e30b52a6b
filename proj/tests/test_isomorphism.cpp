#include <doctest.h>

#include <random>
#include <set>

#include "q8curves/cartier.hpp"
#include "q8curves/errors.hpp"
#include "q8curves/isomorphism.hpp"
#include "q8curves/polynomial.hpp"

using namespace q8curves;

namespace {

// Orbit as the closure of {a} under a -> -a and a -> (2a - 12)/(a + 2),
// written as Moebius maps instead of the closed list.
std::set<Fp2> closure(const PrimeContext& F, Fp2 a) {
  auto moebius = [&](Fp2 x, std::int64_t m00, std::int64_t m01, std::int64_t m10, std::int64_t m11) {
    const Fp2 num = F.add(F.mul(x, F.from_int(m00)), F.embed(F.from_int(m01)));
    const Fp2 den = F.add(F.mul(x, F.from_int(m10)), F.embed(F.from_int(m11)));
    return F.div(num, den);
  };
  std::set<Fp2> seen{a};
  std::vector<Fp2> todo{a};
  while (!todo.empty()) {
    const Fp2 x = todo.back();
    todo.pop_back();
    for (Fp2 y : {F.neg(x), moebius(x, 2, -12, 1, 2)}) {
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

bool singular(const PrimeContext& F, Fp2 a) { return a == F.embed(Fp{2}) || a == F.embed(F.from_int(-2)); }

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  for (u64 q = 7; q <= n; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

std::size_t expected_size(AutClass c) {
  switch (c) {
    case AutClass::SL2F3: return 2;
    case AutClass::C16xC2: return 3;
    case AutClass::Q8: return 6;
  }
  return 0;
}

Orbit orbit_of(const PrimeContext& F, std::initializer_list<u64> xs) {
  Orbit o;
  for (u64 x : xs) o.members.push_back(F.embed(Fp{x}));
  return o;
}

}  // namespace

TEST_CASE("aut_class examples") {
  const PrimeContext F11(11), F13(13), F41(41);
  CHECK(aut_class(F41, F41.embed(Fp{6})) == AutClass::C16xC2);
  CHECK(aut_class(F41, F41.embed(Fp{35})) == AutClass::C16xC2);
  CHECK(aut_class(F41, Fp2{}) == AutClass::C16xC2);
  CHECK(aut_class(F13, F13.embed(Fp{1})) == AutClass::SL2F3);
  CHECK(aut_class(F11, F11.embed(Fp{3})) == AutClass::Q8);
  CHECK(to_string(AutClass::SL2F3) == "SL2F3");
  CHECK(to_string(AutClass::C16xC2) == "C16xC2");
  CHECK(to_string(AutClass::Q8) == "Q8");
  CHECK_THROWS_AS(aut_class(F11, F11.embed(Fp{2})), SingularCurve);
}

TEST_CASE("orbit examples") {
  const PrimeContext F11(11), F13(13);
  CHECK(orbit(F13, Fp2{}) == orbit_of(F13, {0, 6, 7}));
  CHECK(orbit(F13, F13.embed(Fp{1})) == orbit_of(F13, {1, 12}));
  const Orbit o = orbit(F11, F11.embed(Fp{3}));
  CHECK(o == orbit_of(F11, {1, 3, 4, 7, 8, 10}));
  CHECK(o.canonical() == F11.embed(Fp{1}));
  CHECK(o.contains(F11.embed(Fp{8})));
  CHECK_FALSE(o.contains(F11.embed(Fp{5})));
  CHECK_THROWS_AS(orbit(F11, F11.embed(Fp{9})), SingularCurve);
}

TEST_CASE("isomorphic examples") {
  const PrimeContext F11(11), F13(13);
  CHECK(isomorphic(F11, F11.embed(Fp{3}), F11.embed(Fp{4})));
  CHECK(isomorphic(F11, F11.embed(Fp{4}), F11.embed(Fp{3})));
  CHECK_FALSE(isomorphic(F13, Fp2{}, F13.embed(Fp{1})));
  CHECK_THROWS_AS(isomorphic(F13, Fp2{}, F13.embed(Fp{11})), SingularCurve);
}

TEST_CASE("orbits over F_p equal the Moebius closure and obey the size law") {
  for (u64 p : primes_up_to(53)) {
    const PrimeContext F(p);
    for (u64 x = 0; x < p; ++x) {
      const Fp2 a = F.embed(Fp{x});
      if (singular(F, a)) continue;
      const Orbit o = orbit(F, a);
      const std::set<Fp2> c = closure(F, a);
      CHECK_MESSAGE(std::vector<Fp2>(c.begin(), c.end()) == o.members, "p=" << p << " a=" << x);
      CHECK(o.size() == expected_size(aut_class(F, a)));
      CHECK(std::is_sorted(o.members.begin(), o.members.end()));
      for (Fp2 b : o.members) {
        CHECK_FALSE(singular(F, b));
        // Orbits partition: every member has the same orbit and class.
        CHECK(orbit(F, b) == o);
        CHECK(aut_class(F, b) == aut_class(F, a));
        CHECK(isomorphic(F, a, b));
        CHECK(isomorphic(F, b, a));
      }
    }
  }
}

TEST_CASE("orbits over F_{p^2} on sampled parameters") {
  std::mt19937_64 rng(31);
  for (u64 p : {7ull, 13ull, 23ull, 41ull, 89ull, 97ull, 1000003ull}) {
    const PrimeContext F(p);
    for (int i = 0; i < 200; ++i) {
      const Fp2 a{Fp{rng() % p}, Fp{rng() % p}};
      if (singular(F, a)) continue;
      const Orbit o = orbit(F, a);
      const std::set<Fp2> c = closure(F, a);
      CHECK(std::vector<Fp2>(c.begin(), c.end()) == o.members);
      CHECK(o.size() == expected_size(aut_class(F, a)));
      const Fp2 b = o.members[rng() % o.size()];
      CHECK(orbit(F, b) == o);
    }
  }
}

TEST_CASE("SL2F3 parameters are the square roots of -12") {
  for (u64 p : primes_up_to(60)) {
    const PrimeContext F(p);
    const auto r = F.sqrt(F.embed(F.from_int(-12)));
    REQUIRE(r.has_value());
    CHECK(aut_class(F, *r) == AutClass::SL2F3);
    CHECK(orbit(F, *r).members.size() == 2);
    CHECK(orbit(F, *r).contains(F.neg(*r)));
  }
}

TEST_CASE("gcdall roots form unions of orbits for p < 200") {
  for (u64 p : primes_up_to(200)) {
    const CartierContext c(p);
    const PrimeContext& F = c.field();
    const auto g = gcdall_poly(c);
    REQUIRE(g.star_ok);
    const auto roots = roots_in_fp2(F, g.poly, 7);
    const std::set<Fp2> rs(roots.roots.begin(), roots.roots.end());
    for (Fp2 a : roots.roots) {
      for (Fp2 b : orbit(F, a).members) CHECK_MESSAGE(rs.count(b) == 1, "p=" << p);
    }
  }
}
