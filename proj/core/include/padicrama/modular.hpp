#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "padicrama/rational.hpp"

namespace padicrama {

/// value in [0, modulus), modulus >= 1.
struct ResidueClass {
  BigInt value;
  BigInt modulus;

  ResidueClass() : value(0), modulus(1) {}
  ResidueClass(BigInt v, BigInt m);

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// Non-negative representative of a mod m.
BigInt mod(const BigInt& a, const BigInt& m);
/// Inverse of a mod m; throws InversionOfZero when gcd(a, m) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);
/// num * den^{-1} mod m; throws InversionOfZero when gcd(den, m) != 1.
BigInt reduce_mod(const Rational& q, const BigInt& m);

/// Unique class modulo the product of the (pairwise coprime) moduli.
ResidueClass crt_combine(std::span<const ResidueClass> classes);

/// Wang's reconstruction with the symmetric bound floor(sqrt(M/2)) on both
/// |numerator| and denominator. Empty when no such fraction exists.
std::optional<Rational> rational_reconstruct(const ResidueClass& r);

/// Kronecker symbol (D | n) for n >= 1.
int kronecker(long D, std::uint64_t n);

bool is_prime(std::uint64_t n);
/// Primes in the closed interval [lo, hi].
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// Word-sized helpers for moduli below 2^32.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
/// num * den^{-1} mod p for a small prime p.
std::uint64_t reduce_mod_small(const Rational& q, std::uint64_t p);

}  // namespace padicrama
