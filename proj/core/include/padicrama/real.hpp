#pragma once

#include <mpfr.h>

#include <string>

#include "padicrama/rational.hpp"

namespace padicrama {

/// Owning wrapper around an mpfr_t. Binary operations produce a result at
/// the larger of the operands' precisions, rounded to nearest.
class Real {
 public:
  explicit Real(long bits = 64);
  Real(long value, long bits);
  Real(const Rational& value, long bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_double(double value, long bits);
  static Real pi(long bits);
  /// 2^e at the given precision.
  static Real exp2(long e, long bits);

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  /// Copy rounded to a new precision.
  Real with_precision(long bits) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// floor(log2|x|) + 1; a very negative number for zero.
  long exponent() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Nearest integer.
  BigInt round() const;
  std::string to_string(int digits = 30) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) {
    return mpfr_greaterequal_p(a.v_, b.v_) != 0;
  }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, long n);
Real max(const Real& a, const Real& b);

}  // namespace padicrama
