#include "padicrama/modular.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "padicrama/error.hpp"

namespace padicrama {

ResidueClass::ResidueClass(BigInt v, BigInt m) : value(std::move(v)), modulus(std::move(m)) {
  if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "residue class modulus must be >= 1");
  value = mod(value, modulus);
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::InversionOfZero, a.get_str() + " is not invertible mod " + m.get_str());
  }
  return r;
}

BigInt reduce_mod(const Rational& q, const BigInt& m) {
  return mod(q.num() * mod_inverse(q.den(), m), m);
}

ResidueClass crt_combine(std::span<const ResidueClass> classes) {
  if (classes.empty()) throw Error(ErrorCode::InvalidArgument, "crt_combine of an empty list");
  BigInt value = classes.front().value;
  BigInt modulus = classes.front().modulus;
  for (const auto& next : classes.subspan(1)) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), modulus.get_mpz_t(), next.modulus.get_mpz_t());
    if (g != 1) {
      throw Error(ErrorCode::NonCoprimeModuli,
                  modulus.get_str() + " and " + next.modulus.get_str() + " share a factor");
    }
    // value + modulus * t ≡ next.value (mod next.modulus)
    const BigInt t = mod((next.value - value) * mod_inverse(modulus, next.modulus), next.modulus);
    value += modulus * t;
    modulus *= next.modulus;
  }
  return ResidueClass(value, modulus);
}

std::optional<Rational> rational_reconstruct(const ResidueClass& r) {
  if (r.modulus < 2) throw Error(ErrorCode::InvalidArgument, "reconstruction needs modulus >= 2");
  BigInt bound;
  mpz_class half = r.modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());

  // Half-extended Euclid on (M, r): invariant r_i ≡ t_i * r (mod M).
  BigInt r0 = r.modulus, r1 = r.value;
  BigInt t0 = 0, t1 = 1;
  while (r1 > bound) {
    const BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), r.modulus.get_mpz_t());
  if (g != 1) return std::nullopt;
  // gcd(t1, M) = 1, so any common factor of r1 and t1 is a unit mod M.
  return Rational(r1, t1);
}

int kronecker(long D, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "kronecker symbol needs n >= 1");
  int result = 1;
  // Factor out powers of two from n: (D|2) = 0 for even D, else ±1 by D mod 8.
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    const long r = ((D % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  // Jacobi symbol (D mod n | n) for odd n.
  std::uint64_t a = static_cast<std::uint64_t>(((D % static_cast<long>(n)) + static_cast<long>(n)) %
                                               static_cast<long>(n));
  std::uint64_t m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    if (i >= lo) out.push_back(i);
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  return out;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t0 = 0, t1 = 1;
  std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) {
    throw Error(ErrorCode::InversionOfZero,
                std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  return static_cast<std::uint64_t>(t0 < 0 ? t0 + static_cast<std::int64_t>(m) : t0);
}

std::uint64_t reduce_mod_small(const Rational& q, std::uint64_t p) {
  return reduce_mod(q, BigInt(static_cast<unsigned long>(p))).get_ui();
}

}  // namespace padicrama
