#include "q8curves/cartier.hpp"

#include <algorithm>

#include "q8curves/errors.hpp"

namespace q8curves {

namespace {

std::array<u64, 4> targets_for(u64 p) {
  if (p % 4 == 1) return {(p - 1) / 4, (p - 5) / 4, (3 * p - 3) / 4, (3 * p - 7) / 4};
  return {(p - 3) / 4, (p - 7) / 4, (3 * p - 1) / 4, (3 * p - 5) / 4};
}

// Recurrence weights for step k, each already multiplied by k^{-1}:
//   delta_k = a*w1*delta_{k-1} + a*w3*delta_{k-3} + w4*delta_{k-4}
struct StepWeights {
  Fp w1, w3, w4;
};

StepWeights weights(const CartierContext& cctx, u64 k) {
  const PrimeContext& F = cctx.field();
  const Fp kk = F.from_uint(k);
  const Fp e = F.from_uint(cctx.e());
  const Fp inv_k = cctx.inverse_of(k);
  const Fp e3 = F.mul(F.from_uint(3), e);
  const Fp e4 = F.mul(F.from_uint(4), e);
  Fp w1 = F.neg(F.sub(F.sub(kk, F.one()), e));           // -(k-1-e)
  Fp w3 = F.sub(F.sub(kk, F.from_uint(3)), e3);          // k-3-3e
  Fp w4 = F.sub(F.sub(kk, F.from_uint(4)), e4);          // k-4-4e
  return {F.mul(w1, inv_k), F.mul(w3, inv_k), F.mul(w4, inv_k)};
}

Fp sign_of_delta0(const CartierContext& cctx) {
  return cctx.e() % 2 == 0 ? cctx.field().one() : cctx.field().neg(cctx.field().one());
}

}  // namespace

CartierContext::CartierContext(u64 p) : CartierContext(PrimeContext(p)) {}

CartierContext::CartierContext(const PrimeContext& field)
    : field_(field), e_((field.modulus() - 1) / 2), targets_(targets_for(field.modulus())) {
  max_target_ = *std::max_element(targets_.begin(), targets_.end());
  // Every division in the recurrence is by some k <= max_target.
  Q8_ENSURE(max_target_ < field_.modulus(), "delta target index overflows p");
  inverses_.resize(max_target_ + 1);
  if (max_target_ >= 1) inverses_[1] = field_.one();
  const u64 p = field_.modulus();
  for (u64 k = 2; k <= max_target_; ++k) {
    // k^{-1} = -(p / k) * (p mod k)^{-1}
    inverses_[k] = field_.neg(field_.mul(field_.from_uint(p / k), inverses_[p % k]));
  }
}

DeltaTargets delta_series(const CartierContext& cctx) {
  const PrimeContext& F = cctx.field();
  const u64 e = cctx.e();
  const u64 kmax = cctx.max_target();
  const auto& targets = cctx.target_indices();

  // Slot k mod 4 holds delta_k, shifted by one so index 0 is a permanent zero
  // standing in for the coefficient of a^{-1}.
  std::array<std::vector<Fp>, 4> win;
  for (auto& w : win) w.assign(e + 2, Fp{});
  win[0][1] = sign_of_delta0(cctx);

  DeltaTargets out;
  auto capture = [&](u64 k) {
    for (std::size_t t = 0; t < 4; ++t) {
      if (targets[t] != k) continue;
      const auto& buf = win[k % 4];
      const std::size_t len = std::min<u64>(k, e) + 1;
      out.delta[t] = Poly(std::vector<Fp>(buf.begin() + 1, buf.begin() + 1 + len));
    }
  };
  capture(0);

  for (u64 k = 1; k <= kmax; ++k) {
    const StepWeights w = weights(cctx, k);
    const u64 l1 = F.lift(w.w1), l3 = F.lift(w.w3), l4 = F.lift(w.w4);
    const Fp* d1 = win[(k - 1) % 4].data();
    const Fp* d3 = win[(k + 1) % 4].data();  // k-3
    Fp* d4 = win[k % 4].data();              // k-4, overwritten by delta_k
    const u64 top = std::min(k, e);
    // F_{-a}(-X) = F_a(X), so delta_k only has monomials a^j with j = k mod 2.
    for (u64 j = k % 2; j <= top; j += 2) {
      d4[j + 1] = F.dot3(d1[j], l1, d3[j], l3, d4[j + 1], l4);
    }
    capture(k);
  }
  return out;
}

namespace {

using BiPoly = std::vector<Poly>;  // index = power of X

BiPoly bi_mul(const PrimeContext& F, const BiPoly& f, const BiPoly& g) {
  if (f.empty() || g.empty()) return {};
  BiPoly out(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j].is_zero()) continue;
      out[i + j] = add(F, out[i + j], mul(F, f[i], g[j]));
    }
  }
  return out;
}

}  // namespace

std::vector<Poly> delta_power_expansion(const CartierContext& cctx) {
  const PrimeContext& F = cctx.field();
  const Poly a = Poly::monomial(F.one(), 1);
  const Poly one = Poly::constant(F.one());
  // X^4 + a X^3 - a X - 1
  BiPoly base{scale(F, one, F.neg(F.one())), scale(F, a, F.neg(F.one())), Poly{}, a, one};
  BiPoly result{one};
  for (u64 k = cctx.e(); k; k >>= 1) {
    if (k & 1) result = bi_mul(F, result, base);
    if (k > 1) base = bi_mul(F, base, base);
  }
  result.resize(4 * cctx.e() + 1);
  return result;
}

DeltaTargets delta_series_by_power(const CartierContext& cctx) {
  const auto all = delta_power_expansion(cctx);
  DeltaTargets out;
  for (std::size_t t = 0; t < 4; ++t) out.delta[t] = all[cctx.target_indices()[t]];
  return out;
}

std::array<Fp2, 4> delta_targets_at(const CartierContext& cctx, Fp2 a0) {
  const PrimeContext& F = cctx.field();
  const auto& targets = cctx.target_indices();
  std::array<Fp2, 4> win{};
  win[0] = F.embed(sign_of_delta0(cctx));
  std::array<Fp2, 4> out{};
  auto capture = [&](u64 k) {
    for (std::size_t t = 0; t < 4; ++t) {
      if (targets[t] == k) out[t] = win[k % 4];
    }
  };
  capture(0);
  for (u64 k = 1; k <= cctx.max_target(); ++k) {
    const StepWeights w = weights(cctx, k);
    const Fp2 d1 = win[(k - 1) % 4], d3 = win[(k + 1) % 4], d4 = win[k % 4];
    const Fp2 lin{F.add(F.mul(d1.c0, w.w1), F.mul(d3.c0, w.w3)),
                  F.add(F.mul(d1.c1, w.w1), F.mul(d3.c1, w.w3))};
    win[k % 4] = F.add(F.mul(a0, lin), F.mul(d4, w.w4));
    capture(k);
  }
  return out;
}

std::string StarDiagnostics::describe() const {
  if (ok()) return "ok";
  std::string s;
  auto append = [&](const char* what) {
    if (!s.empty()) s += "; ";
    s += what;
  };
  if (root_at_plus_two) append("gcdall(2) = 0");
  if (root_at_minus_two) append("gcdall(-2) = 0");
  if (repeated_root) append("gcdall not squarefree");
  return s;
}

GcdAllResult gcdall_from_targets(const CartierContext& cctx, const DeltaTargets& targets) {
  const PrimeContext& F = cctx.field();
  std::array<const Poly*, 4> order{};
  for (std::size_t t = 0; t < 4; ++t) order[t] = &targets.delta[t];
  // Low degrees first so later reductions work against a small divisor.
  std::sort(order.begin(), order.end(), [](const Poly* x, const Poly* y) {
    if (x->is_zero() != y->is_zero()) return y->is_zero();
    return x->size() < y->size();
  });
  Q8_ENSURE(!order[0]->is_zero(), "all four delta targets vanish identically");

  GcdAllResult r;
  r.poly = monic(F, *order[0]);
  for (std::size_t t = 1; t < 4 && r.poly.degree() > 0; ++t) r.poly = gcd(F, r.poly, *order[t]);

  r.star.root_at_plus_two = eval(F, r.poly, F.from_uint(2)).is_zero();
  r.star.root_at_minus_two = eval(F, r.poly, F.from_int(-2)).is_zero();
  r.star.repeated_root = !is_squarefree(F, r.poly);
  r.star_ok = r.star.ok();
  return r;
}

GcdAllResult gcdall_poly(const CartierContext& cctx) {
  return gcdall_from_targets(cctx, delta_series(cctx));
}

bool CartierManinMatrix::is_zero() const {
  for (const auto& row : m) {
    for (const auto& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

void require_nonsingular(const PrimeContext& ctx, Fp2 a) {
  if (a == ctx.embed(ctx.from_uint(2)) || a == ctx.embed(ctx.from_int(-2))) throw SingularCurve();
}

CartierManinMatrix cartier_matrix(const CartierContext& cctx, Fp2 a0) {
  const PrimeContext& F = cctx.field();
  require_nonsingular(F, a0);
  const auto t = delta_targets_at(cctx, a0);
  const Fp2 z{};
  CartierManinMatrix M;
  if (cctx.p() % 4 == 1) {
    // t = (gamma_{p-1}, gamma_{p-3}, gamma_{2p-2}, gamma_{2p-4})
    M.m = {{{t[0], z, t[1], z},
            {z, t[2], z, t[3]},
            {t[3], z, t[2], z},
            {z, t[1], z, t[0]}}};
  } else {
    // t = (gamma_{p-2}, gamma_{p-4}, gamma_{2p-1}, gamma_{2p-3})
    M.m = {{{z, t[0], z, t[1]},
            {t[2], z, t[3], z},
            {z, F.neg(t[3]), z, F.neg(t[2])},
            {F.neg(t[1]), z, F.neg(t[0]), z}}};
  }
  return M;
}

bool is_superspecial(const CartierContext& cctx, Fp2 a0) {
  return cartier_matrix(cctx, a0).is_zero();
}

}  // namespace q8curves
