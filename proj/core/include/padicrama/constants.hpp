#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "padicrama/rational.hpp"
#include "padicrama/real.hpp"

namespace padicrama {

/// Archimedean basis constants: 1, π^{-j}, ζ(k), L(k, χ_D), √d.
struct ConstantTag {
  enum class Kind { One, PiPower, Zeta, Lquad, SqrtDisc };

  Kind kind = Kind::One;
  long d = 0;    // discriminant for Lquad, radicand for SqrtDisc
  unsigned k = 0;  // j for PiPower (meaning π^{-j}), argument for Zeta/Lquad

  static ConstantTag one() { return {}; }
  static ConstantTag pi_power(unsigned j) { return {Kind::PiPower, 0, j}; }
  static ConstantTag zeta(unsigned k) { return {Kind::Zeta, 0, k}; }
  static ConstantTag lquad(long D, unsigned k) { return {Kind::Lquad, D, k}; }
  static ConstantTag sqrt_disc(long d) { return {Kind::SqrtDisc, d, 0}; }

  /// "1", "pi^-2", "zeta(3)", "L(-4,1)", "sqrt(5)".
  std::string to_string() const;
  static ConstantTag parse(std::string_view text);

  friend auto operator<=>(const ConstantTag&, const ConstantTag&) = default;
};

/// Product of tags, e.g. √5·π^{-2}. Empty means 1.
using ConstantMonomial = std::vector<ConstantTag>;

std::string to_string(const ConstantMonomial& m);
ConstantMonomial parse_monomial(std::string_view text);

/// Value with error below 2^-bits. Memoized per (tag, bits); safe for
/// concurrent callers.
Real constant_value(const ConstantTag& tag, long bits);
Real constant_value(const ConstantMonomial& monomial, long bits);

/// ζ(s, a) for integer s >= 2 and rational a > 0, by Euler–Maclaurin.
Real hurwitz_zeta(unsigned s, const Rational& a, long bits);
/// ψ(a) for rational a > 0, by Euler–Maclaurin on the shifted argument.
Real digamma(const Rational& a, long bits);
/// L(k, χ_D) for k >= 1 (k >= 2 when D = 1).
Real L_value(long D, unsigned k, long bits);

}  // namespace padicrama
