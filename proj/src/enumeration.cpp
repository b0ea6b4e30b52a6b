#include "q8curves/enumeration.hpp"

#include <chrono>
#include <set>

#include "q8curves/errors.hpp"

namespace q8curves {

ExpectedCounts expected_counts(u64 p) {
  ExpectedCounts x;
  const u64 m8 = p % 8;
  x.q8 = (m8 == 1 || m8 == 7) ? p / 48 : 0;
  x.g24 = p % 24 == 17 || p % 24 == 23;
  x.g32 = p % 16 == 9 || p % 16 == 15;
  return x;
}

EnumerationRecord classify(const CartierContext& cctx, const GcdAllResult& g, u64 seed) {
  const PrimeContext& F = cctx.field();
  const u64 p = cctx.p();
  EnumerationRecord rec;
  rec.p = p;
  rec.p_mod8 = static_cast<unsigned>(p % 8);
  rec.p_mod16 = static_cast<unsigned>(p % 16);
  rec.p_mod24 = static_cast<unsigned>(p % 24);
  rec.e = cctx.e();
  rec.seed = seed;
  rec.deg_gcdall = g.poly.degree().value_or(0);
  rec.star_ok = g.star_ok;
  rec.star = g.star;

  const Poly sl2_factor = Poly::from_ints(F, {12, 0, 1});     // a^2 + 12
  const Poly c16_factor = Poly::from_ints(F, {0, -36, 0, 1});  // a(a^2 - 36)
  rec.g24_superspecial = divides(F, sl2_factor, g.poly);
  rec.g32_superspecial = divides(F, c16_factor, g.poly);

  const ExpectedCounts want = expected_counts(p);
  rec.matches_g24_rule = rec.g24_superspecial == want.g24;
  rec.matches_g32_rule = rec.g32_superspecial == want.g32;
  if (!g.star_ok) return rec;

  // Under the star condition the two detections agree with evaluating at the
  // class representatives 2*sqrt(-3) and 0.
  const bool zero_root = eval(F, g.poly, F.zero()).is_zero();
  Q8_ENSURE(zero_root == rec.g32_superspecial, "a(a^2-36) divisibility disagrees with gcdall(0)");
  const auto sqrt_m3 = F.sqrt(F.embed(F.from_int(-3)));
  Q8_ENSURE(sqrt_m3.has_value(), "-3 has no square root in F_p^2");
  const Fp2 sl2_rep = F.mul(*sqrt_m3, F.from_uint(2));
  const bool sl2_root = eval(F, g.poly, sl2_rep).is_zero();
  Q8_ENSURE(sl2_root == rec.g24_superspecial, "a^2+12 divisibility disagrees with gcdall(2 sqrt(-3))");

  u64 d = rec.deg_gcdall;
  if (rec.g24_superspecial) d -= 2;
  if (rec.g32_superspecial) d -= 3;
  Q8_ENSURE(d % 6 == 0, "adjusted gcdall degree " + std::to_string(d) + " not divisible by 6 at p = " +
                            std::to_string(p));
  rec.q8_count = d / 6;
  rec.matches_q8_formula = *rec.q8_count == want.q8;
  return rec;
}

EnumerationRecord enumerate_prime(u64 p, u64 seed) {
  const auto start = std::chrono::steady_clock::now();
  const CartierContext cctx(p);
  EnumerationRecord rec = classify(cctx, gcdall_poly(cctx), seed);
  rec.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<ClassRepresentative> group_into_orbits(const PrimeContext& ctx, std::vector<Fp2> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::set<Fp2> unassigned(values.begin(), values.end());
  std::vector<ClassRepresentative> out;
  while (!unassigned.empty()) {
    const Fp2 a = *unassigned.begin();
    Orbit o = orbit(ctx, a);
    for (const Fp2& b : o.members) {
      Q8_ENSURE(unassigned.erase(b) == 1,
                "orbit of " + ctx.format(a) + " leaves the set at " + ctx.format(b));
    }
    out.push_back({std::move(o), aut_class(ctx, a)});
  }
  return out;
}

RepresentativeSet representatives(const CartierContext& cctx, const GcdAllResult& g, u64 seed) {
  if (!g.star_ok) throw StarViolated("star condition fails at p = " + std::to_string(cctx.p()) + ": " +
                                     g.star.describe());
  RepresentativeSet rs;
  if (g.poly.degree() == 0) return rs;
  Fp2Roots roots = roots_in_fp2(cctx.field(), g.poly, seed);
  rs.residual_degrees = std::move(roots.residual_degrees);
  rs.classes = group_into_orbits(cctx.field(), std::move(roots.roots));
  return rs;
}

RepresentativeSet representatives(u64 p, u64 seed) {
  const CartierContext cctx(p);
  return representatives(cctx, gcdall_poly(cctx), seed);
}

OracleCensus exhaustive_census(const CartierContext& cctx) {
  const PrimeContext& F = cctx.field();
  const u64 p = cctx.p();
  OracleCensus c;
  const Fp2 plus2 = F.embed(F.from_uint(2)), minus2 = F.embed(F.from_int(-2));
  for (u64 x0 = 0; x0 < p; ++x0) {
    for (u64 x1 = 0; x1 < p; ++x1) {
      const Fp2 a{Fp{x0}, Fp{x1}};
      if (a == plus2 || a == minus2) continue;
      if (is_superspecial(cctx, a)) c.superspecial.push_back(a);
    }
  }
  c.classes = group_into_orbits(F, c.superspecial);
  for (const auto& cls : c.classes) {
    switch (cls.aut) {
      case AutClass::Q8: ++c.q8_classes; break;
      case AutClass::SL2F3: c.g24 = true; break;
      case AutClass::C16xC2: c.g32 = true; break;
    }
  }
  return c;
}

std::vector<std::string> verify_spot(const CartierContext& cctx, const GcdAllResult& g, u64 seed) {
  const PrimeContext& F = cctx.field();
  const u64 p = cctx.p();
  std::vector<std::string> failures;
  std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ull));
  const Fp2 plus2 = F.embed(F.from_uint(2)), minus2 = F.embed(F.from_int(-2));

  if (g.star_ok && g.poly.degree() > 0) {
    const Fp2Roots roots = roots_in_fp2(F, g.poly, seed);
    if (!roots.roots.empty()) {
      const Fp2 r = roots.roots[rng() % roots.roots.size()];
      if (!is_superspecial(cctx, r)) {
        failures.push_back("p=" + std::to_string(p) + ": root " + F.format(r) + " of gcdall is not superspecial");
      }
    }
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Fp2 a{F.from_uint(rng()), F.from_uint(rng())};
    if (a == plus2 || a == minus2 || eval(F, g.poly, a).is_zero()) continue;
    if (is_superspecial(cctx, a)) {
      failures.push_back("p=" + std::to_string(p) + ": non-root " + F.format(a) + " is superspecial");
    }
    break;
  }
  return failures;
}

std::vector<std::string> verify_full(const CartierContext& cctx, const GcdAllResult& g,
                                     const EnumerationRecord& rec) {
  const PrimeContext& F = cctx.field();
  const std::string tag = "p=" + std::to_string(cctx.p()) + ": ";
  std::vector<std::string> failures;
  const OracleCensus census = exhaustive_census(cctx);
  for (const Fp2& a : census.superspecial) {
    if (!eval(F, g.poly, a).is_zero()) failures.push_back(tag + "superspecial " + F.format(a) + " is not a gcdall root");
  }
  if (g.star_ok && census.superspecial.size() != rec.deg_gcdall) {
    failures.push_back(tag + "oracle finds " + std::to_string(census.superspecial.size()) +
                       " superspecial parameters, gcdall degree is " + std::to_string(rec.deg_gcdall));
  }
  if (rec.q8_count && *rec.q8_count != census.q8_classes) {
    failures.push_back(tag + "oracle Q8 class count " + std::to_string(census.q8_classes) + " != " +
                       std::to_string(*rec.q8_count));
  }
  if (census.g24 != rec.g24_superspecial) failures.push_back(tag + "oracle disagrees on SL2F3 class");
  if (census.g32 != rec.g32_superspecial) failures.push_back(tag + "oracle disagrees on C16xC2 class");
  return failures;
}

std::vector<u64> primes_in_range(u64 from, u64 to) {
  std::vector<u64> out;
  for (u64 q = std::max<u64>(from, 7); q < to; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

}  // namespace q8curves
