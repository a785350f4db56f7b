#pragma once

#include <cstdint>
#include <vector>

#include "padicrama/rational.hpp"

namespace padicrama {

/// k-th Bernoulli number, B_1 = -1/2. Memoized; safe for concurrent callers.
Rational bernoulli_exact(unsigned k);

/// B_0 .. B_{p-3} reduced mod p.
struct BernoulliTableModP {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> values;

  /// B_k mod p for k <= p - 2. B_{p-2} is an odd index >= 3 and therefore 0.
  std::uint64_t at(unsigned k) const;
};

/// Bulk table via inversion of (e^x - 1)/x mod p; requires p >= 5.
BernoulliTableModP bernoulli_all_mod_p(std::uint64_t p);

/// ζ(s) for s <= 0.
Rational zeta_nonpositive(long s);

/// Primitive quadratic character χ_D = (D | ·) of a fundamental discriminant,
/// or the trivial character for D = 1.
class QuadCharacter {
 public:
  explicit QuadCharacter(long discriminant);

  long discriminant() const { return d_; }
  std::uint64_t conductor() const { return static_cast<std::uint64_t>(d_ < 0 ? -d_ : d_); }
  bool is_trivial() const { return d_ == 1; }
  bool is_even() const { return d_ > 0; }
  /// χ(-1).
  int parity() const { return is_even() ? 1 : -1; }
  int operator()(std::uint64_t a) const;

  friend bool operator==(const QuadCharacter&, const QuadCharacter&) = default;

 private:
  long d_;
};

bool is_fundamental_discriminant(long D);

/// B_{m,χ} = f^{m-1} Σ_{a=1}^{f} χ(a) B_m(a/f).
Rational generalized_bernoulli(const QuadCharacter& chi, unsigned m);

/// L(s, χ) for s <= 0, i.e. -B_{m,χ}/m with m = 1 - s.
Rational L_nonpositive(const QuadCharacter& chi, long s);

/// ζ_p(k) mod p. Zero for even k; otherwise ζ(1 + k - p) mod p.
/// Throws PrecisionUnavailable when p < k + 2.
std::uint64_t zeta_p_mod_p(unsigned k, std::uint64_t p);

/// L_{D,p}(k) mod p. Zero when χ(-1) = (-1)^k; otherwise L(1 + k - p, χ) mod p.
/// Throws PrecisionUnavailable (p < k + 2) or BadPrime (p | D).
std::uint64_t L_p_mod_p(const QuadCharacter& chi, unsigned k, std::uint64_t p);

/// True when the p-adic value is forced to vanish by parity.
bool L_p_parity_zero(const QuadCharacter& chi, unsigned k);

}  // namespace padicrama
