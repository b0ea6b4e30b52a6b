#include "q8curves/finite_field.hpp"

#include <cctype>
#include <charconv>

#include "q8curves/errors.hpp"

namespace q8curves {

namespace {

u64 mulmod_plain(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

u64 powmod_plain(u64 a, u64 k, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (k) {
    if (k & 1) r = mulmod_plain(r, a, m);
    a = mulmod_plain(a, a, m);
    k >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are sufficient for n < 3.3 * 10^24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_plain(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_plain(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeContext::PrimeContext(u64 p) : p_(p) {
  if (p < 7 || p >= kMaxModulus || !is_prime(p)) {
    throw InvalidPrime("not prime or out of range [7, 2^62): " + std::to_string(p));
  }
  // Newton iteration for p^{-1} mod 2^64; each step doubles the correct bits.
  u64 inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  pinv_ = ~inv + 1;
  u64 r1 = static_cast<u64>((u128{1} << 64) % p);
  r2_ = mulmod_plain(r1, r1, p);

  u64 n = 2;
  while (legendre(Fp{n}) != -1) ++n;
  nonresidue_ = Fp{n};
}

Fp PrimeContext::from_int(std::int64_t x) const {
  if (x >= 0) return from_uint(static_cast<u64>(x));
  u64 mag = static_cast<u64>(-(x + 1)) + 1;
  return neg(from_uint(mag));
}

Fp PrimeContext::pow(Fp a, u64 k) const {
  Fp r = one();
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Fp PrimeContext::inv(Fp a) const {
  if (a.is_zero()) throw ZeroInverse();
  return pow(a, p_ - 2);
}

int PrimeContext::legendre(Fp x) const {
  if (x.is_zero()) return 0;
  Fp r = pow(x, (p_ - 1) / 2);
  return r.v == 1 ? 1 : -1;
}

std::optional<Fp> PrimeContext::sqrt(Fp x) const {
  if (x.is_zero()) return x;
  if (legendre(x) != 1) return std::nullopt;
  if (p_ % 4 == 3) return pow(x, (p_ + 1) / 4);

  u64 q = p_ - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Fp z = nonresidue_;
  Fp c = pow(z, q);
  Fp t = pow(x, q);
  Fp r = pow(x, (q + 1) / 2);
  int m = s;
  while (t.v != 1) {
    int i = 0;
    Fp t2 = t;
    while (t2.v != 1) {
      t2 = mul(t2, t2);
      ++i;
    }
    Fp b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

Fp2 PrimeContext::mul(Fp2 a, Fp2 b) const {
  Fp ac = mul(a.c0, b.c0);
  Fp bd = mul(a.c1, b.c1);
  Fp cross = sub(mul(add(a.c0, a.c1), add(b.c0, b.c1)), add(ac, bd));
  return {add(ac, mul(bd, nonresidue_)), cross};
}

Fp2 PrimeContext::pow(Fp2 a, u64 k) const {
  Fp2 r = embed(one());
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Fp PrimeContext::norm(Fp2 a) const {
  return sub(mul(a.c0, a.c0), mul(nonresidue_, mul(a.c1, a.c1)));
}

Fp2 PrimeContext::inv(Fp2 a) const {
  if (a.is_zero()) throw ZeroInverse();
  // The norm of a nonzero element is nonzero because w is not in F_p.
  return mul(conj(a), inv(norm(a)));
}

std::optional<Fp2> PrimeContext::sqrt(Fp2 x) const {
  if (x.is_zero()) return x;
  if (x.in_base_field()) {
    if (auto r = sqrt(x.c0)) return embed(*r);
    // x/n is a square in F_p, and (s*w)^2 = s^2 * n.
    auto s = sqrt(div(x.c0, nonresidue_));
    Q8_ENSURE(s.has_value(), "quotient of two nonresidues must be a residue");
    return Fp2{zero(), *s};
  }
  auto t = sqrt(norm(x));
  if (!t) return std::nullopt;
  // Solve y0^2 + n*y1^2 = c0, 2*y0*y1 = c1. Exactly one of (c0 +- t)/2 is a
  // nonzero residue because their product n*c1^2/4 is a nonresidue.
  Fp half = inv(from_uint(2));
  Fp delta = mul(add(x.c0, *t), half);
  if (legendre(delta) != 1) delta = mul(sub(x.c0, *t), half);
  auto y0 = sqrt(delta);
  Q8_ENSURE(y0.has_value() && !y0->is_zero(), "fp2 sqrt: no residue among (c0 +- t)/2");
  Fp y1 = div(x.c1, add(*y0, *y0));
  return Fp2{*y0, y1};
}

std::string PrimeContext::format(Fp2 a) const {
  if (a.in_base_field()) return std::to_string(a.c0.v);
  return std::to_string(a.c0.v) + "+" + std::to_string(a.c1.v) + "*w";
}

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Fp2 PrimeContext::parse(const std::string& text) const {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty F_p^2 literal");

  // Split into at most two signed terms at a +/- that is not the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') {
      if (split != std::string::npos) throw ParseError("too many terms in literal: " + text);
      split = i;
    }
  }
  std::string terms[2] = {s.substr(0, split), split == std::string::npos ? "" : s.substr(split)};

  Fp2 result{};
  bool seen_const = false, seen_w = false;
  for (const std::string& term : terms) {
    if (term.empty()) continue;
    bool is_w = term.back() == 'w';
    if (!is_w) {
      std::int64_t v;
      if (seen_const || !parse_int(term, v)) throw ParseError("bad F_p^2 literal: " + text);
      result.c0 = from_int(v);
      seen_const = true;
      continue;
    }
    if (seen_w) throw ParseError("bad F_p^2 literal: " + text);
    seen_w = true;
    std::string coef = term.substr(0, term.size() - 1);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    else if (!coef.empty() && coef != "+" && coef != "-") throw ParseError("bad F_p^2 literal: " + text);
    std::int64_t v = 1;
    if (coef == "-") v = -1;
    else if (!coef.empty() && coef != "+" && !parse_int(coef, v)) throw ParseError("bad F_p^2 literal: " + text);
    result.c1 = from_int(v);
  }
  return result;
}

}  // namespace q8curves
