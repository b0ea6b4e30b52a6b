#pragma once

#include <string_view>
#include <vector>

#include "q8curves/finite_field.hpp"

namespace q8curves {

/// Automorphism group of H_a : y^2 = x(x^4-1)(x^4+ax^2+1).
enum class AutClass { Q8, SL2F3, C16xC2 };

std::string_view to_string(AutClass c);

/// Parameters b with H_b isomorphic to H_a.
struct Orbit {
  /// Sorted ascending on (c0, c1), no duplicates.
  std::vector<Fp2> members;

  Fp2 canonical() const { return members.front(); }
  std::size_t size() const { return members.size(); }
  bool contains(Fp2 b) const;
  friend bool operator==(const Orbit&, const Orbit&) = default;
};

/// SL2F3 if a^2 = -12, C16xC2 if a in {0, 6, -6}, Q8 otherwise.
/// Throws SingularCurve for a = +-2.
AutClass aut_class(const PrimeContext& ctx, Fp2 a);

/// {+-a, +-(2 - 16/(a+2)), +-(2 + 16/(a-2))}. Throws SingularCurve.
Orbit orbit(const PrimeContext& ctx, Fp2 a);

/// Throws SingularCurve if either parameter is +-2.
bool isomorphic(const PrimeContext& ctx, Fp2 a, Fp2 b);

}  // namespace q8curves
