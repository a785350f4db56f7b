#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicrama/padic.hpp"
#include "padicrama/rational.hpp"
#include "padicrama/real.hpp"

namespace padicrama {

/// coefficient · √sqrt_disc / π^pi_exponent
struct ClosedForm {
  Rational coefficient{1};
  long sqrt_disc = 1;
  unsigned pi_exponent = 0;

  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

/// Σ_n multiplier · Π(a_i)_n / Π(b_j)_n · sign^n · base^n · P(n) / (αn + β)
struct SeriesSpec {
  std::string name;
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  int sign = 1;
  Rational base{1};
  std::vector<Rational> poly;  // c_0 .. c_d
  std::optional<std::pair<Rational, Rational>> denom_linear;
  Rational multiplier{1};
  ClosedForm rhs;

  /// Throws InvariantViolation naming the first broken invariant.
  void validate() const;
  bool has_zero_poly() const;
  /// P(n) / (αn + β), exact.
  Rational rational_factor(const Rational& n) const;
  /// t_{n+1} / t_n without the polynomial part: sign · base · Π(a+n) / Π(b+n).
  Rational hypergeometric_ratio(std::uint64_t n) const;

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

/// (a)_n = a (a+1) … (a+n-1).
Rational pochhammer(const Rational& a, std::uint64_t n);

/// Direct product-formula evaluation of the n-th term.
Rational term_exact(const SeriesSpec& spec, std::uint64_t n);

/// Σ_{n=0}^{p-1} term_exact(spec, n), accumulated with the term-ratio update.
Rational truncated_sum_exact(const SeriesSpec& spec, std::uint64_t p);

/// Empty when p may be used for p-adic evaluation; otherwise the reason.
std::optional<std::string> bad_prime_reason(const SeriesSpec& spec, std::uint64_t p);

struct TruncatedSumOptions {
  int guard = 4;
  int max_guard = 32;
  /// Return sums of negative valuation instead of throwing NegativeValuationSum.
  bool allow_negative_valuation = false;
};

/// Truncated sum in tracked-valuation arithmetic with absolute precision
/// exactly m (or exact zero). Throws BadPrime, NegativeValuationSum, or
/// GuardExhausted once the guard reaches options.max_guard.
PadicResidue truncated_sum_mod(const SeriesSpec& spec, std::uint64_t p, int m,
                               const TruncatedSumOptions& options = {});

struct NumericValue {
  Real value;
  Real error_bound;
  std::uint64_t terms = 0;
};

/// Full sum with certified |error| <= error_bound < 2^-precision_bits.
NumericValue numeric_sum(const SeriesSpec& spec, long precision_bits);

/// Value of the spec's closed form.
Real rhs_value(const SeriesSpec& spec, long precision_bits);
Real closed_form_value(const ClosedForm& form, long precision_bits);

/// Bound ρ with |t_{j+1}/t_j| <= ρ for every j >= n, or empty when no bound
/// below 1 is available yet. `radius` widens the argument to n + x, |x| <= radius.
std::optional<double> tail_ratio_bound(const SeriesSpec& spec, std::uint64_t n,
                                       double radius = 0.0);

}  // namespace padicrama
