#include "q8curves/isomorphism.hpp"

#include <algorithm>

#include "q8curves/cartier.hpp"
#include "q8curves/errors.hpp"

namespace q8curves {

std::string_view to_string(AutClass c) {
  switch (c) {
    case AutClass::Q8: return "Q8";
    case AutClass::SL2F3: return "SL2F3";
    case AutClass::C16xC2: return "C16xC2";
  }
  return "?";
}

bool Orbit::contains(Fp2 b) const { return std::binary_search(members.begin(), members.end(), b); }

AutClass aut_class(const PrimeContext& ctx, Fp2 a) {
  require_nonsingular(ctx, a);
  const bool sl2 = ctx.square(a) == ctx.embed(ctx.from_int(-12));
  const bool c16 = a.is_zero() || a == ctx.embed(ctx.from_uint(6)) || a == ctx.embed(ctx.from_int(-6));
  // 36 = -12 forces p | 48.
  Q8_ENSURE(!(sl2 && c16), "a^2 = -12 and a in {0, +-6} at once");
  if (sl2) return AutClass::SL2F3;
  if (c16) return AutClass::C16xC2;
  return AutClass::Q8;
}

Orbit orbit(const PrimeContext& ctx, Fp2 a) {
  require_nonsingular(ctx, a);
  const Fp2 two = ctx.embed(ctx.from_uint(2));
  const Fp2 sixteen = ctx.embed(ctx.from_uint(16));
  const Fp2 b1 = ctx.sub(two, ctx.div(sixteen, ctx.add(a, two)));
  const Fp2 b2 = ctx.add(two, ctx.div(sixteen, ctx.sub(a, two)));

  Orbit o;
  o.members = {a, ctx.neg(a), b1, ctx.neg(b1), b2, ctx.neg(b2)};
  std::sort(o.members.begin(), o.members.end());
  o.members.erase(std::unique(o.members.begin(), o.members.end()), o.members.end());
  return o;
}

bool isomorphic(const PrimeContext& ctx, Fp2 a, Fp2 b) {
  require_nonsingular(ctx, b);
  return orbit(ctx, a).contains(b);
}

}  // namespace q8curves
