#pragma once

#include <array>
#include <string>
#include <vector>

#include "q8curves/finite_field.hpp"
#include "q8curves/polynomial.hpp"

namespace q8curves {

/// Per-prime data for the coefficients delta_k of
///   F_a(X)^e = (X^4 + a X^3 - a X - 1)^e = sum_k delta_k X^k,   e = (p-1)/2.
///
/// delta_k equals the coefficient of x^{2k+e} in (x(x^4-1)(x^4+ax^2+1))^e, so
/// the four target indices pick out the Cartier-Manin entries:
///
///   p = 1 mod 4:  (p-1)/4, (p-5)/4, (3p-3)/4, (3p-7)/4
///                 (gamma_{p-1}, gamma_{p-3}, gamma_{2p-2}, gamma_{2p-4})
///   p = 3 mod 4:  (p-3)/4, (p-7)/4, (3p-1)/4, (3p-5)/4
///                 (gamma_{p-2}, gamma_{p-4}, gamma_{2p-1}, gamma_{2p-3})
class CartierContext {
 public:
  explicit CartierContext(u64 p);
  explicit CartierContext(const PrimeContext& field);

  const PrimeContext& field() const { return field_; }
  u64 p() const { return field_.modulus(); }
  u64 e() const { return e_; }
  const std::array<u64, 4>& target_indices() const { return targets_; }
  u64 max_target() const { return max_target_; }
  /// k^{-1} for 1 <= k <= max_target().
  Fp inverse_of(u64 k) const { return inverses_[k]; }

 private:
  PrimeContext field_;
  u64 e_;
  std::array<u64, 4> targets_;
  u64 max_target_;
  std::vector<Fp> inverses_;
};

/// delta polynomials at CartierContext::target_indices(), same order.
struct DeltaTargets {
  std::array<Poly, 4> delta;
};

/// Production path. Since y = F^e solves F y' = e F' y, for 1 <= k < p
///   k delta_k = -a(k-1-e) delta_{k-1} + a(k-3-3e) delta_{k-3} + (k-4-4e) delta_{k-4},
/// with delta_0 = (-1)^e. Keeps only a four-deep window.
DeltaTargets delta_series(const CartierContext& cctx);

/// All of delta_0 .. delta_{4e}, by binary exponentiation of F_a(X) as a
/// polynomial in X with F_p[a] coefficients. O(p^2) memory; intended for
/// cross-checking delta_series on small p.
std::vector<Poly> delta_power_expansion(const CartierContext& cctx);
DeltaTargets delta_series_by_power(const CartierContext& cctx);

/// The four target deltas evaluated at a = a0 through the same recurrence
/// run over F_{p^2} scalars.
std::array<Fp2, 4> delta_targets_at(const CartierContext& cctx, Fp2 a0);

struct StarDiagnostics {
  bool root_at_plus_two = false;
  bool root_at_minus_two = false;
  bool repeated_root = false;

  bool ok() const { return !root_at_plus_two && !root_at_minus_two && !repeated_root; }
  std::string describe() const;
};

struct GcdAllResult {
  /// Monic gcd of the four target deltas (the constant 1 when coprime).
  Poly poly;
  bool star_ok = false;
  StarDiagnostics star;
};

GcdAllResult gcdall_poly(const CartierContext& cctx);
GcdAllResult gcdall_from_targets(const CartierContext& cctx, const DeltaTargets& targets);

struct CartierManinMatrix {
  std::array<std::array<Fp2, 4>, 4> m{};

  bool is_zero() const;
  friend bool operator==(const CartierManinMatrix&, const CartierManinMatrix&) = default;
};

/// Cartier-Manin matrix of y^2 = x(x^4-1)(x^4+a0 x^2+1). Throws SingularCurve.
CartierManinMatrix cartier_matrix(const CartierContext& cctx, Fp2 a0);
/// Zero matrix test. Throws SingularCurve.
bool is_superspecial(const CartierContext& cctx, Fp2 a0);

/// Throws SingularCurve when a = 2 or a = -2.
void require_nonsingular(const PrimeContext& ctx, Fp2 a);

}  // namespace q8curves
