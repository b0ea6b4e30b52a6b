#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "q8curves/finite_field.hpp"

namespace q8curves {

/// Seed of the Cantor-Zassenhaus randomness stream unless the caller picks one.
inline constexpr u64 kDefaultSeed = 20240917;

/// Dense polynomial in F_p[a], ascending coefficients, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  /// Trailing zeros are stripped.
  explicit Poly(std::vector<Fp> coeffs);
  static Poly constant(Fp c) { return Poly(std::vector<Fp>{c}); }
  /// c * a^k
  static Poly monomial(Fp c, std::size_t k);
  /// Builds from signed integers, reducing each modulo p.
  static Poly from_ints(const PrimeContext& ctx, std::initializer_list<std::int64_t> ascending);

  bool is_zero() const { return c_.empty(); }
  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  std::size_t size() const { return c_.size(); }
  Fp operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Fp{}; }
  Fp leading() const { return c_.empty() ? Fp{} : c_.back(); }
  const std::vector<Fp>& coeffs() const { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<Fp> c_;
};

/// Degree threshold (in the smaller operand) above which mul() uses Karatsuba.
inline constexpr std::size_t kKaratsubaThreshold = 48;

Poly add(const PrimeContext& ctx, const Poly& f, const Poly& g);
Poly sub(const PrimeContext& ctx, const Poly& f, const Poly& g);
Poly scale(const PrimeContext& ctx, const Poly& f, Fp s);
Poly mul(const PrimeContext& ctx, const Poly& f, const Poly& g);
Poly mul_schoolbook(const PrimeContext& ctx, const Poly& f, const Poly& g);
Poly mul_karatsuba(const PrimeContext& ctx, const Poly& f, const Poly& g);
Poly derivative(const PrimeContext& ctx, const Poly& f);
/// Scales to leading coefficient 1; zero stays zero.
Poly monic(const PrimeContext& ctx, const Poly& f);

/// (quotient, remainder). Throws ZeroInput on division by zero.
std::pair<Poly, Poly> divrem(const PrimeContext& ctx, const Poly& f, const Poly& g);
Poly rem(const PrimeContext& ctx, const Poly& f, const Poly& g);
/// f / g where g must divide f; a nonzero remainder throws InternalError.
Poly exact_div(const PrimeContext& ctx, const Poly& f, const Poly& g);
bool divides(const PrimeContext& ctx, const Poly& g, const Poly& f);

/// Monic gcd by the Euclidean algorithm. Throws BothZero.
Poly gcd(const PrimeContext& ctx, const Poly& f, const Poly& g);

Fp eval(const PrimeContext& ctx, const Poly& f, Fp x);
Fp2 eval(const PrimeContext& ctx, const Poly& f, Fp2 x);

/// Throws ZeroInput for the zero polynomial.
bool is_squarefree(const PrimeContext& ctx, const Poly& f);

/// f^k mod m.
Poly powmod(const PrimeContext& ctx, const Poly& f, u64 k, const Poly& m);

struct FactorList {
  Fp unit;
  /// (monic irreducible, multiplicity), sorted by degree then coefficients.
  std::vector<std::pair<Poly, unsigned>> factors;
};

/// Complete factorization: squarefree decomposition, distinct-degree
/// decomposition, then Cantor-Zassenhaus equal-degree splitting.
/// Throws ZeroInput.
FactorList factor(const PrimeContext& ctx, const Poly& f, u64 seed = kDefaultSeed);
Poly expand(const PrimeContext& ctx, const FactorList& fl);

/// Distinct-degree decomposition of a squarefree, monic f: pairs (d, product
/// of all irreducible factors of degree d), ascending d, empty products skipped.
std::vector<std::pair<std::size_t, Poly>> distinct_degree(const PrimeContext& ctx, const Poly& f);
/// Splits a monic product of distinct degree-d irreducibles into its factors.
std::vector<Poly> equal_degree(const PrimeContext& ctx, const Poly& f, std::size_t d,
                               std::mt19937_64& rng);

struct Fp2Roots {
  /// All zeros in F_{p^2}, sorted.
  std::vector<Fp2> roots;
  /// Degrees of irreducible factors of degree >= 3, ascending.
  std::vector<std::size_t> residual_degrees;
};

/// Throws ZeroInput or NotSquarefree.
Fp2Roots roots_in_fp2(const PrimeContext& ctx, const Poly& f, u64 seed = kDefaultSeed);

/// Human-readable form in the indeterminate `a`, descending, e.g. "a^2 + 12".
std::string to_string(const Poly& f, char var = 'a');

}  // namespace q8curves
