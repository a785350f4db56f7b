#pragma once

#include <optional>
#include <span>
#include <vector>

#include "padicrama/constants.hpp"
#include "padicrama/rational.hpp"
#include "padicrama/real.hpp"

namespace padicrama {

/// q · c = Σ a_i · basis_i with q > 0 and gcd(q, a_1, …) = 1.
struct IntegerRelation {
  BigInt q;
  std::vector<BigInt> a;

  friend bool operator==(const IntegerRelation&, const IntegerRelation&) = default;
};

/// LLL-reduce the rows of an integer basis (exact arithmetic, δ = 3/4).
std::vector<std::vector<BigInt>> lll_reduce(std::vector<std::vector<BigInt>> rows);

/// Searches for an integer relation between c and the basis values with
/// max(|q|, |a_i|) <= height_bound. Throws InsufficientPrecision when
/// precision_bits < 2 (len + 1) log2(height_bound) + 32.
std::optional<IntegerRelation> recognize(const Real& c, std::span<const Real> basis_values,
                                         const BigInt& height_bound, long precision_bits);

std::optional<IntegerRelation> recognize(const Real& c, const std::vector<ConstantMonomial>& basis,
                                         const BigInt& height_bound, long precision_bits);

}  // namespace padicrama
