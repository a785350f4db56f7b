#pragma once

#include <climits>
#include <cstdint>
#include <string>

#include "padicrama/rational.hpp"

namespace padicrama {

/// p^v * u known modulo p^(v + m), with u a unit in [0, p^m).
///
/// Three states:
///   - exact zero: absorbs addition and multiplication; infinite precision.
///   - ordinary value: m >= 1 and p does not divide u.
///   - inexact zero: m == 0, u == 0; the value is only known to be
///     divisible by p^v. Sums that cancel below their precision end here.
///
/// absolute_precision() = v + m is what every congruence check consumes.
class PadicResidue {
 public:
  static PadicResidue exact_zero(std::uint64_t p);
  /// Value known to be ≡ 0 (mod p^absolute_precision).
  static PadicResidue zero_to_precision(std::uint64_t p, int absolute_precision);
  /// p^v * unit with relative precision m; unit is reduced and must be a p-unit.
  static PadicResidue from_parts(std::uint64_t p, int v, int m, const BigInt& unit);

  std::uint64_t prime() const { return p_; }
  int valuation() const { return v_; }
  /// Relative precision m (digits of the unit that are known).
  int precision() const { return m_; }
  const BigInt& unit() const { return u_; }
  bool is_exact_zero() const { return exact_zero_; }
  /// True for exact zero and for the inexact zero state.
  bool is_known_zero() const { return exact_zero_ || m_ == 0; }
  int absolute_precision() const { return exact_zero_ ? INT_MAX : v_ + m_; }

  /// The represented value modulo p^M. Requires v >= 0 (or exact zero) and
  /// absolute precision >= M; throws PrecisionUnavailable otherwise.
  BigInt residue(int M) const;
  /// Same value, cut down to absolute precision at most M.
  PadicResidue truncated(int M) const;

  std::string to_string() const;

 private:
  PadicResidue(std::uint64_t p) : p_(p) {}

  std::uint64_t p_ = 2;
  int v_ = 0;
  int m_ = 0;
  BigInt u_ = 0;
  bool exact_zero_ = true;
};

/// Class of q with v = ν_p(q) and u ≡ q / p^v (mod p^m); exact zero for q = 0.
PadicResidue reduce_rational(const Rational& q, std::uint64_t p, int m);

/// Absolute precision of the result is the minimum of the operands'.
PadicResidue padic_add(const PadicResidue& a, const PadicResidue& b);
PadicResidue padic_neg(const PadicResidue& a);
PadicResidue padic_sub(const PadicResidue& a, const PadicResidue& b);
/// Valuations add; relative precision is the minimum of the operands'.
PadicResidue padic_mul(const PadicResidue& a, const PadicResidue& b);
/// Valuation negates, relative precision preserved. Throws InversionOfZero on
/// exact or inexact zero.
PadicResidue padic_inv(const PadicResidue& a);
/// Multiply by p^k (k may be negative); exact.
PadicResidue padic_shift(const PadicResidue& a, int k);

/// a ≡ b (mod p^M); both operands must carry absolute precision >= M.
bool congruent(const PadicResidue& a, const PadicResidue& b, int M);

}  // namespace padicrama
