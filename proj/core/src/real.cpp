#include "padicrama/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "padicrama/error.hpp"

namespace padicrama {

namespace {

mpfr_prec_t checked_prec(long bits) {
  if (bits < MPFR_PREC_MIN || bits > (1L << 24)) {
    throw Error(ErrorCode::InvalidArgument, "unsupported precision " + std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

Real binary_result(const Real& a, const Real& b) {
  return Real(std::max(a.precision(), b.precision()));
}

}  // namespace

Real::Real(long bits) {
  mpfr_init2(v_, checked_prec(bits));
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, long bits) {
  mpfr_init2(v_, checked_prec(bits));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, long bits) {
  mpfr_init2(v_, checked_prec(bits));
  mpfr_set_q(v_, value.get_mpq().get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_double(double value, long bits) {
  Real r(bits);
  mpfr_set_d(r.v_, value, MPFR_RNDN);
  return r;
}

Real Real::pi(long bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::exp2(long e, long bits) {
  Real r(1, bits);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

Real Real::with_precision(long bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return static_cast<long>(mpfr_get_exp(v_));
}

BigInt Real::round() const {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), v_, MPFR_RNDN);
  return out;
}

std::string Real::to_string(int digits) const {
  const int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, v_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) {
  Real r = binary_result(a, b);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r = binary_result(a, b);
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r = binary_result(a, b);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw Error(ErrorCode::InversionOfZero, "real division by zero");
  Real r = binary_result(a, b);
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  if (x.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "log of non-positive real");
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace padicrama
