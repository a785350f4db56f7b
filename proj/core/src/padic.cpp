#include "padicrama/padic.hpp"

#include <algorithm>

#include "padicrama/error.hpp"
#include "padicrama/modular.hpp"

namespace padicrama {

namespace {

void require_same_prime(const PadicResidue& a, const PadicResidue& b) {
  if (a.prime() != b.prime()) {
    throw Error(ErrorCode::InvalidArgument, "p-adic operands over different primes");
  }
}

// Normalizes value * p^base_v known to absolute precision `absprec`.
PadicResidue normalize(std::uint64_t p, int base_v, const BigInt& value, int absprec) {
  if (absprec <= base_v) return PadicResidue::zero_to_precision(p, absprec);
  const BigInt r = mod(value, prime_power(p, static_cast<unsigned long>(absprec - base_v)));
  if (r == 0) return PadicResidue::zero_to_precision(p, absprec);
  const int k = valuation(r, p);
  const int v = base_v + k;
  const BigInt unit = r / prime_power(p, static_cast<unsigned long>(k));
  return PadicResidue::from_parts(p, v, absprec - v, unit);
}

}  // namespace

PadicResidue PadicResidue::exact_zero(std::uint64_t p) {
  PadicResidue r(p);
  r.exact_zero_ = true;
  return r;
}

PadicResidue PadicResidue::zero_to_precision(std::uint64_t p, int absolute_precision) {
  PadicResidue r(p);
  r.exact_zero_ = false;
  r.v_ = absolute_precision;
  r.m_ = 0;
  r.u_ = 0;
  return r;
}

PadicResidue PadicResidue::from_parts(std::uint64_t p, int v, int m, const BigInt& unit) {
  if (m < 1) return zero_to_precision(p, v + std::max(m, 0));
  PadicResidue r(p);
  r.exact_zero_ = false;
  r.v_ = v;
  r.m_ = m;
  r.u_ = mod(unit, prime_power(p, static_cast<unsigned long>(m)));
  if (r.u_ % static_cast<unsigned long>(p) == 0) {
    throw Error(ErrorCode::InvalidArgument, "p-adic unit part divisible by p");
  }
  return r;
}

BigInt PadicResidue::residue(int M) const {
  if (exact_zero_) return 0;
  if (absolute_precision() < M) {
    throw Error(ErrorCode::PrecisionUnavailable,
                "value known mod p^" + std::to_string(absolute_precision()) + ", need p^" +
                    std::to_string(M));
  }
  if (m_ == 0 || v_ >= M) return 0;
  if (v_ < 0) {
    throw Error(ErrorCode::PrecisionUnavailable, "negative valuation has no residue mod p^M");
  }
  const BigInt pm = prime_power(p_, static_cast<unsigned long>(M));
  return mod(u_ * prime_power(p_, static_cast<unsigned long>(v_)), pm);
}

PadicResidue PadicResidue::truncated(int M) const {
  if (exact_zero_ || absolute_precision() <= M) return *this;
  if (v_ >= M) return zero_to_precision(p_, M);
  return from_parts(p_, v_, M - v_, u_);
}

std::string PadicResidue::to_string() const {
  if (exact_zero_) return "0";
  if (m_ == 0) return "O(" + std::to_string(p_) + "^" + std::to_string(v_) + ")";
  return std::to_string(p_) + "^" + std::to_string(v_) + "*" + u_.get_str() + " + O(" +
         std::to_string(p_) + "^" + std::to_string(absolute_precision()) + ")";
}

PadicResidue reduce_rational(const Rational& q, std::uint64_t p, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "reduce_rational needs m >= 1");
  if (q.is_zero()) return PadicResidue::exact_zero(p);
  const BigInt prime(static_cast<unsigned long>(p));
  BigInt num_rest, den_rest;
  const long vn = static_cast<long>(
      mpz_remove(num_rest.get_mpz_t(), q.num().get_mpz_t(), prime.get_mpz_t()));
  const long vd = static_cast<long>(
      mpz_remove(den_rest.get_mpz_t(), q.den().get_mpz_t(), prime.get_mpz_t()));
  const BigInt pm = prime_power(p, static_cast<unsigned long>(m));
  const BigInt unit = mod(num_rest * mod_inverse(den_rest, pm), pm);
  return PadicResidue::from_parts(p, static_cast<int>(vn - vd), m, unit);
}

PadicResidue padic_add(const PadicResidue& a, const PadicResidue& b) {
  require_same_prime(a, b);
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const std::uint64_t p = a.prime();
  const int absprec = std::min(a.absolute_precision(), b.absolute_precision());
  const int base_v = std::min(a.valuation(), b.valuation());
  if (absprec <= base_v) return PadicResidue::zero_to_precision(p, absprec);
  BigInt sum = 0;
  for (const PadicResidue* x : {&a, &b}) {
    if (x->precision() == 0) continue;
    sum += x->unit() * prime_power(p, static_cast<unsigned long>(x->valuation() - base_v));
  }
  return normalize(p, base_v, sum, absprec);
}

PadicResidue padic_neg(const PadicResidue& a) {
  if (a.is_known_zero()) return a;
  return PadicResidue::from_parts(a.prime(), a.valuation(), a.precision(), -a.unit());
}

PadicResidue padic_sub(const PadicResidue& a, const PadicResidue& b) {
  return padic_add(a, padic_neg(b));
}

PadicResidue padic_mul(const PadicResidue& a, const PadicResidue& b) {
  require_same_prime(a, b);
  const std::uint64_t p = a.prime();
  if (a.is_exact_zero() || b.is_exact_zero()) return PadicResidue::exact_zero(p);
  const int v = a.valuation() + b.valuation();
  if (a.precision() == 0 || b.precision() == 0) {
    // O(p^va) * p^vb u  is only known to be divisible by p^(va + vb).
    return PadicResidue::zero_to_precision(p, v);
  }
  const int m = std::min(a.precision(), b.precision());
  return PadicResidue::from_parts(p, v, m, a.unit() * b.unit());
}

PadicResidue padic_inv(const PadicResidue& a) {
  if (a.is_known_zero()) throw Error(ErrorCode::InversionOfZero, "p-adic inverse of zero");
  const BigInt pm = prime_power(a.prime(), static_cast<unsigned long>(a.precision()));
  return PadicResidue::from_parts(a.prime(), -a.valuation(), a.precision(),
                                  mod_inverse(a.unit(), pm));
}

PadicResidue padic_shift(const PadicResidue& a, int k) {
  if (a.is_exact_zero()) return a;
  if (a.precision() == 0) return PadicResidue::zero_to_precision(a.prime(), a.valuation() + k);
  return PadicResidue::from_parts(a.prime(), a.valuation() + k, a.precision(), a.unit());
}

bool congruent(const PadicResidue& a, const PadicResidue& b, int M) {
  const PadicResidue d = padic_sub(a, b);
  if (d.absolute_precision() < M) {
    throw Error(ErrorCode::PrecisionUnavailable,
                "congruence mod p^" + std::to_string(M) + " needs more precision");
  }
  return d.is_exact_zero() || d.valuation() >= M;
}

}  // namespace padicrama
