#include "q8curves/polynomial.hpp"

#include <algorithm>
#include <span>

#include "q8curves/errors.hpp"

namespace q8curves {

Poly::Poly(std::vector<Fp> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(Fp c, std::size_t k) {
  std::vector<Fp> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::from_ints(const PrimeContext& ctx, std::initializer_list<std::int64_t> ascending) {
  std::vector<Fp> v;
  v.reserve(ascending.size());
  for (auto x : ascending) v.push_back(ctx.from_int(x));
  return Poly(std::move(v));
}

Poly add(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  std::vector<Fp> out(std::max(f.size(), g.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.add(f[i], g[i]);
  return Poly(std::move(out));
}

Poly sub(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  std::vector<Fp> out(std::max(f.size(), g.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.sub(f[i], g[i]);
  return Poly(std::move(out));
}

Poly scale(const PrimeContext& ctx, const Poly& f, Fp s) {
  const u64 sl = ctx.lift(s);
  std::vector<Fp> out(f.coeffs());
  for (auto& c : out) c = ctx.mul_lifted(c, sl);
  return Poly(std::move(out));
}

namespace {

// out[0 .. a.size()+b.size()-1) += a*b
void school_accumulate(const PrimeContext& ctx, std::span<const Fp> a, std::span<const Fp> b,
                       std::span<Fp> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    const u64 ai = ctx.lift(a[i]);
    Fp* row = out.data() + i;
    for (std::size_t j = 0; j < b.size(); ++j) row[j] = ctx.add(row[j], ctx.mul_lifted(b[j], ai));
  }
}

// out (size 2n-1, zeroed) = a*b with a.size() == b.size() == n.
void karatsuba_rec(const PrimeContext& ctx, std::span<const Fp> a, std::span<const Fp> b,
                   std::span<Fp> out) {
  const std::size_t n = a.size();
  if (n <= kKaratsubaThreshold) {
    school_accumulate(ctx, a, b, out);
    return;
  }
  const std::size_t lo = n / 2, hi = n - lo;
  auto a0 = a.first(lo), a1 = a.subspan(lo);
  auto b0 = b.first(lo), b1 = b.subspan(lo);

  std::vector<Fp> z0(2 * lo - 1), z2(2 * hi - 1), z1(2 * hi - 1);
  karatsuba_rec(ctx, a0, b0, z0);
  karatsuba_rec(ctx, a1, b1, z2);

  std::vector<Fp> sa(hi), sb(hi);
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = ctx.add(a1[i], i < lo ? a0[i] : Fp{});
    sb[i] = ctx.add(b1[i], i < lo ? b0[i] : Fp{});
  }
  karatsuba_rec(ctx, sa, sb, z1);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = ctx.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = ctx.sub(z1[i], z2[i]);

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = ctx.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + lo] = ctx.add(out[i + lo], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * lo] = ctx.add(out[i + 2 * lo], z2[i]);
}

}  // namespace

Poly mul_schoolbook(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<Fp> out(f.size() + g.size() - 1);
  school_accumulate(ctx, f.coeffs(), g.coeffs(), out);
  return Poly(std::move(out));
}

Poly mul_karatsuba(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const Poly& big = f.size() >= g.size() ? f : g;
  const Poly& small = f.size() >= g.size() ? g : f;
  const std::size_t n = small.size();
  std::vector<Fp> out(big.size() + n - 1);
  std::vector<Fp> chunk(n), partial(2 * n - 1);
  // Cut the larger operand into blocks of the smaller one's length.
  for (std::size_t off = 0; off < big.size(); off += n) {
    const std::size_t len = std::min(n, big.size() - off);
    std::fill(chunk.begin(), chunk.end(), Fp{});
    std::copy_n(big.coeffs().begin() + off, len, chunk.begin());
    std::fill(partial.begin(), partial.end(), Fp{});
    karatsuba_rec(ctx, chunk, small.coeffs(), partial);
    const std::size_t used = len + n - 1;
    for (std::size_t i = 0; i < used; ++i) out[off + i] = ctx.add(out[off + i], partial[i]);
  }
  return Poly(std::move(out));
}

Poly mul(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  if (std::min(f.size(), g.size()) <= kKaratsubaThreshold) return mul_schoolbook(ctx, f, g);
  return mul_karatsuba(ctx, f, g);
}

Poly derivative(const PrimeContext& ctx, const Poly& f) {
  if (f.size() <= 1) return {};
  std::vector<Fp> out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = ctx.mul(f[i], ctx.from_uint(i));
  return Poly(std::move(out));
}

Poly monic(const PrimeContext& ctx, const Poly& f) {
  if (f.is_zero() || f.leading().v == 1) return f;
  return scale(ctx, f, ctx.inv(f.leading()));
}

namespace {

// Reduces r modulo g in place and returns the quotient coefficients when
// `quot` is non-null. g must be nonzero; r is left trimmed.
void reduce_inplace(const PrimeContext& ctx, std::vector<Fp>& r, const std::vector<Fp>& g,
                    std::vector<Fp>* quot) {
  const std::size_t dg = g.size() - 1;
  if (r.size() < g.size()) {
    if (quot) quot->clear();
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return;
  }
  const Fp lc_inv = ctx.inv(g.back());
  const bool g_monic = g.back().v == 1;
  if (quot) quot->assign(r.size() - dg, Fp{});
  for (std::size_t i = r.size(); i-- > dg;) {
    if (r[i].is_zero()) continue;
    const Fp q = g_monic ? r[i] : ctx.mul(r[i], lc_inv);
    if (quot) (*quot)[i - dg] = q;
    const u64 ql = ctx.lift(q);
    Fp* base = r.data() + (i - dg);
    for (std::size_t j = 0; j < dg; ++j) base[j] = ctx.sub(base[j], ctx.mul_lifted(g[j], ql));
    r[i] = Fp{};
  }
  r.resize(dg);
  while (!r.empty() && r.back().is_zero()) r.pop_back();
}

}  // namespace

std::pair<Poly, Poly> divrem(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw ZeroInput("polynomial division by zero");
  std::vector<Fp> r(f.coeffs()), q;
  reduce_inplace(ctx, r, g.coeffs(), &q);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw ZeroInput("polynomial division by zero");
  std::vector<Fp> r(f.coeffs());
  reduce_inplace(ctx, r, g.coeffs(), nullptr);
  return Poly(std::move(r));
}

Poly exact_div(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  auto [q, r] = divrem(ctx, f, g);
  Q8_ENSURE(r.is_zero(), "exact division left remainder " + to_string(r));
  return q;
}

bool divides(const PrimeContext& ctx, const Poly& g, const Poly& f) {
  return rem(ctx, f, g).is_zero();
}

Poly gcd(const PrimeContext& ctx, const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) throw BothZero();
  std::vector<Fp> a(f.coeffs()), b(g.coeffs());
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    reduce_inplace(ctx, a, b, nullptr);
    std::swap(a, b);
  }
  return monic(ctx, Poly(std::move(a)));
}

Fp eval(const PrimeContext& ctx, const Poly& f, Fp x) {
  Fp acc{};
  const u64 xl = ctx.lift(x);
  for (std::size_t i = f.size(); i-- > 0;) acc = ctx.add(ctx.mul_lifted(acc, xl), f[i]);
  return acc;
}

Fp2 eval(const PrimeContext& ctx, const Poly& f, Fp2 x) {
  Fp2 acc{};
  for (std::size_t i = f.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, x), ctx.embed(f[i]));
  return acc;
}

bool is_squarefree(const PrimeContext& ctx, const Poly& f) {
  if (f.is_zero()) throw ZeroInput("is_squarefree of the zero polynomial");
  return gcd(ctx, f, derivative(ctx, f)).degree() == 0;
}

Poly powmod(const PrimeContext& ctx, const Poly& f, u64 k, const Poly& m) {
  Poly result = rem(ctx, Poly::constant(ctx.one()), m);
  Poly base = rem(ctx, f, m);
  while (k) {
    if (k & 1) result = rem(ctx, mul(ctx, result, base), m);
    k >>= 1;
    if (k) base = rem(ctx, mul(ctx, base, base), m);
  }
  return result;
}

std::vector<std::pair<std::size_t, Poly>> distinct_degree(const PrimeContext& ctx, const Poly& f) {
  std::vector<std::pair<std::size_t, Poly>> out;
  Poly rest = monic(ctx, f);
  const Poly x = Poly::monomial(ctx.one(), 1);
  Poly h = rem(ctx, x, rest);
  for (std::size_t d = 1; rest.degree().value_or(0) >= 2 * d; ++d) {
    h = powmod(ctx, h, ctx.modulus(), rest);  // a^{p^d} mod rest
    Poly g = gcd(ctx, rest, sub(ctx, h, x));
    if (g.degree() > 0) {
      rest = exact_div(ctx, rest, g);
      h = rem(ctx, h, rest);
      out.emplace_back(d, std::move(g));
    }
  }
  if (rest.degree().value_or(0) > 0) {
    const std::size_t d = *rest.degree();
    out.emplace_back(d, std::move(rest));
  }
  return out;
}

namespace {

Poly random_below(const PrimeContext& ctx, std::size_t n, std::mt19937_64& rng) {
  std::vector<Fp> c(n);
  // Raw engine output keeps the stream identical across standard libraries.
  for (auto& x : c) x = ctx.from_uint(rng());
  return Poly(std::move(c));
}

void split_equal_degree(const PrimeContext& ctx, const Poly& f, std::size_t d,
                        std::mt19937_64& rng, std::vector<Poly>& out) {
  const std::size_t n = *f.degree();
  if (n == d) {
    out.push_back(f);
    return;
  }
  const u64 p = ctx.modulus();
  const Poly one = Poly::constant(ctx.one());
  for (;;) {
    Poly r = random_below(ctx, n, rng);
    if (r.degree().value_or(0) == 0) continue;
    // r^{(p^d - 1)/2} = (r^{1 + p + ... + p^{d-1}})^{(p-1)/2}
    Poly t = r, acc = r;
    for (std::size_t i = 1; i < d; ++i) {
      t = powmod(ctx, t, p, f);
      acc = rem(ctx, mul(ctx, acc, t), f);
    }
    Poly s = powmod(ctx, acc, (p - 1) / 2, f);
    Poly g = gcd(ctx, f, sub(ctx, s, one));
    const std::size_t dg = *g.degree();
    if (dg == 0 || dg == n) continue;
    split_equal_degree(ctx, g, d, rng, out);
    split_equal_degree(ctx, exact_div(ctx, f, g), d, rng, out);
    return;
  }
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Squarefree decomposition of a monic f: (squarefree part, multiplicity).
void squarefree_parts(const PrimeContext& ctx, const Poly& f, unsigned mult_scale,
                      std::vector<std::pair<Poly, unsigned>>& out) {
  if (f.degree().value_or(0) == 0) return;
  Poly c = gcd(ctx, f, derivative(ctx, f));
  Poly w = exact_div(ctx, f, c);
  unsigned i = 1;
  while (w.degree().value_or(0) > 0) {
    Poly y = gcd(ctx, w, c);
    Poly part = exact_div(ctx, w, y);
    if (part.degree().value_or(0) > 0) out.emplace_back(std::move(part), i * mult_scale);
    w = std::move(y);
    c = exact_div(ctx, c, w);
    ++i;
  }
  if (c.degree().value_or(0) > 0) {
    // c is a polynomial in a^p; over F_p its p-th root just drops exponents.
    const u64 p = ctx.modulus();
    std::vector<Fp> root;
    for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
    squarefree_parts(ctx, Poly(std::move(root)), mult_scale * static_cast<unsigned>(p), out);
  }
}

}  // namespace

std::vector<Poly> equal_degree(const PrimeContext& ctx, const Poly& f, std::size_t d,
                               std::mt19937_64& rng) {
  std::vector<Poly> out;
  if (f.degree().value_or(0) == 0) return out;
  Q8_ENSURE(*f.degree() % d == 0, "equal-degree input degree not divisible by d");
  split_equal_degree(ctx, monic(ctx, f), d, rng, out);
  return out;
}

FactorList factor(const PrimeContext& ctx, const Poly& f, u64 seed) {
  if (f.is_zero()) throw ZeroInput("factor of the zero polynomial");
  FactorList fl{f.leading(), {}};
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, unsigned>> parts;
  squarefree_parts(ctx, monic(ctx, f), 1, parts);
  for (const auto& [part, mult] : parts) {
    for (const auto& [d, block] : distinct_degree(ctx, part)) {
      for (auto& irr : equal_degree(ctx, block, d, rng)) fl.factors.emplace_back(std::move(irr), mult);
    }
  }
  std::sort(fl.factors.begin(), fl.factors.end(),
            [](const auto& x, const auto& y) { return poly_less(x.first, y.first); });
  return fl;
}

Poly expand(const PrimeContext& ctx, const FactorList& fl) {
  Poly acc = Poly::constant(fl.unit);
  for (const auto& [g, m] : fl.factors) {
    for (unsigned i = 0; i < m; ++i) acc = mul(ctx, acc, g);
  }
  return acc;
}

Fp2Roots roots_in_fp2(const PrimeContext& ctx, const Poly& f, u64 seed) {
  if (!is_squarefree(ctx, f)) throw NotSquarefree();
  Fp2Roots out;
  std::mt19937_64 rng(seed);
  const Fp half = ctx.inv(ctx.from_uint(2));
  for (const auto& [d, block] : distinct_degree(ctx, f)) {
    if (d >= 3) {
      out.residual_degrees.insert(out.residual_degrees.end(), *block.degree() / d, d);
      continue;
    }
    for (const Poly& g : equal_degree(ctx, block, d, rng)) {
      if (d == 1) {
        out.roots.push_back(ctx.embed(ctx.neg(g[0])));
        continue;
      }
      // a^2 + b a + c: roots (-b +- sqrt(b^2 - 4c)) / 2
      const Fp b = g[1], c = g[0];
      const Fp disc = ctx.sub(ctx.mul(b, b), ctx.mul(ctx.from_uint(4), c));
      auto s = ctx.sqrt(ctx.embed(disc));
      Q8_ENSURE(s.has_value(), "F_p element without square root in F_p^2");
      const Fp2 mb = ctx.embed(ctx.neg(b));
      out.roots.push_back(ctx.mul(ctx.add(mb, *s), half));
      out.roots.push_back(ctx.mul(ctx.sub(mb, *s), half));
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  std::sort(out.residual_degrees.begin(), out.residual_degrees.end());
  return out;
}

std::string to_string(const Poly& f, char var) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = f.size(); i-- > 0;) {
    const Fp c = f[i];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += std::to_string(c.v);
      continue;
    }
    if (c.v != 1) s += std::to_string(c.v) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace q8curves
