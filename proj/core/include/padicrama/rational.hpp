#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace padicrama {

using BigInt = mpz_class;

/// Exact signed rational in lowest terms with a positive denominator.
/// Zero is always stored as 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}                       // NOLINT(implicit)
  Rational(const BigInt& value) : q_(value) {}              // NOLINT(implicit)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q);

  /// Accepts "a", "-a", "a/b" (b may carry a sign; result is normalized).
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& get_mpq() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(long exponent) const;

  std::string to_string() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

std::string to_string(const BigInt& value);

/// Exponent of p in |n|; n must be nonzero.
int valuation(const BigInt& n, std::uint64_t p);
/// ν_p(num) − ν_p(den); q must be nonzero.
int valuation(const Rational& q, std::uint64_t p);

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt prime_power(std::uint64_t p, unsigned long exponent);

}  // namespace padicrama
