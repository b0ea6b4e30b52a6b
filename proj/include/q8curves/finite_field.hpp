#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace q8curves {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

/// Residue in F_p, always canonical in [0, p).
struct Fp {
  u64 v = 0;

  constexpr bool is_zero() const { return v == 0; }
  friend constexpr auto operator<=>(const Fp&, const Fp&) = default;
};

/// Element c0 + c1*w of F_{p^2} = F_p[w]/(w^2 - n), n the context's nonresidue.
struct Fp2 {
  Fp c0;
  Fp c1;

  constexpr bool is_zero() const { return c0.v == 0 && c1.v == 0; }
  constexpr bool in_base_field() const { return c1.v == 0; }
  // Lexicographic on (c0, c1); used for canonical orbit representatives.
  friend constexpr auto operator<=>(const Fp2&, const Fp2&) = default;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Odd prime modulus p with 7 <= p < 2^62, plus the data needed for F_{p^2}.
///
/// Multiplication uses Montgomery reduction internally but every value
/// crossing the interface is a canonical residue. Hot loops can avoid the
/// second reduction by pre-lifting a constant with lift() and then calling
/// mul_lifted() or dot3().
class PrimeContext {
 public:
  static constexpr u64 kMaxModulus = u64{1} << 62;

  /// Throws InvalidPrime unless p is prime and 7 <= p < 2^62.
  explicit PrimeContext(u64 p);

  u64 modulus() const { return p_; }
  /// Smallest n >= 2 with legendre(n) = -1; defines w^2 = n.
  Fp nonresidue() const { return nonresidue_; }

  // F_p
  Fp from_uint(u64 x) const { return Fp{x % p_}; }
  Fp from_int(std::int64_t x) const;
  Fp zero() const { return Fp{0}; }
  Fp one() const { return Fp{1}; }

  Fp add(Fp a, Fp b) const {
    u64 s = a.v + b.v;
    return Fp{s >= p_ ? s - p_ : s};
  }
  Fp sub(Fp a, Fp b) const { return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Fp neg(Fp a) const { return Fp{a.v == 0 ? 0 : p_ - a.v}; }
  Fp mul(Fp a, Fp b) const { return Fp{redc(u128{redc(u128{a.v} * b.v)} * r2_)}; }
  Fp pow(Fp a, u64 k) const;
  /// Throws ZeroInverse.
  Fp inv(Fp a) const;
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

  /// Montgomery image c*2^64 mod p of a canonical constant.
  u64 lift(Fp c) const { return redc(u128{c.v} * r2_); }
  /// x*c for a lifted constant c, one reduction.
  Fp mul_lifted(Fp x, u64 c_lifted) const { return Fp{redc(u128{x.v} * c_lifted)}; }
  /// x*a + y*b + z*c for lifted constants a, b, c, one reduction.
  Fp dot3(Fp x, u64 a, Fp y, u64 b, Fp z, u64 c) const {
    return Fp{redc(u128{x.v} * a + u128{y.v} * b + u128{z.v} * c)};
  }

  /// x^((p-1)/2) mapped to {-1, 0, 1}.
  int legendre(Fp x) const;
  /// Tonelli-Shanks. Returns nullopt for non-residues.
  std::optional<Fp> sqrt(Fp x) const;

  // F_{p^2}
  Fp2 embed(Fp a) const { return Fp2{a, Fp{0}}; }
  Fp2 w() const { return Fp2{Fp{0}, Fp{1}}; }
  Fp2 add(Fp2 a, Fp2 b) const { return {add(a.c0, b.c0), add(a.c1, b.c1)}; }
  Fp2 sub(Fp2 a, Fp2 b) const { return {sub(a.c0, b.c0), sub(a.c1, b.c1)}; }
  Fp2 neg(Fp2 a) const { return {neg(a.c0), neg(a.c1)}; }
  Fp2 mul(Fp2 a, Fp2 b) const;
  Fp2 mul(Fp2 a, Fp s) const { return {mul(a.c0, s), mul(a.c1, s)}; }
  Fp2 square(Fp2 a) const { return mul(a, a); }
  Fp2 pow(Fp2 a, u64 k) const;
  Fp2 conj(Fp2 a) const { return {a.c0, neg(a.c1)}; }
  /// c0^2 - n*c1^2, the F_{p^2}/F_p norm.
  Fp norm(Fp2 a) const;
  /// Throws ZeroInverse.
  Fp2 inv(Fp2 a) const;
  Fp2 div(Fp2 a, Fp2 b) const { return mul(a, inv(b)); }
  /// Some r with r^2 = x, or nullopt when x is not a square in F_{p^2}.
  /// Never nullopt for x in F_p.
  std::optional<Fp2> sqrt(Fp2 x) const;

  /// Canonical text form: "c0" when c1 = 0, else "c0+c1*w".
  std::string format(Fp2 a) const;
  /// Accepts "c0", "c1*w", "w", "c0+c1*w", "c0-c1*w"; integers may be negative
  /// and are reduced mod p. Throws ParseError.
  Fp2 parse(const std::string& text) const;

 private:
  u64 redc(u128 t) const {
    u64 m = static_cast<u64>(t) * pinv_;
    u64 r = static_cast<u64>((t + u128{m} * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }

  u64 p_;
  u64 pinv_;  // -p^{-1} mod 2^64
  u64 r2_;    // 2^128 mod p
  Fp nonresidue_;
};

}  // namespace q8curves
