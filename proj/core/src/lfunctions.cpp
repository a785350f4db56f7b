#include "padicrama/lfunctions.hpp"

#include <mutex>

#include "padicrama/error.hpp"
#include "padicrama/modular.hpp"

namespace padicrama {

namespace {

BigInt binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

class BernoulliCache {
 public:
  Rational get(unsigned k) {
    std::lock_guard lock(mutex_);
    while (values_.size() <= k) extend();
    return values_[k];
  }

 private:
  // Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
  void extend() {
    const unsigned m = static_cast<unsigned>(values_.size());
    if (m == 0) {
      values_.emplace_back(1);
      return;
    }
    if (m >= 3 && m % 2 == 1) {
      values_.emplace_back(0);
      return;
    }
    Rational acc;
    for (unsigned j = 0; j < m; ++j) {
      if (values_[j].is_zero()) continue;
      acc += Rational(binomial(m + 1, j)) * values_[j];
    }
    values_.push_back(-acc / Rational(static_cast<long>(m + 1)));
  }

  std::mutex mutex_;
  std::vector<Rational> values_;
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

// B_{m,χ} mod p for nontrivial χ with p ∤ f and m <= p - 1. The j = m term of
// the Bernoulli polynomial contributes B_m Σχ(a) = 0 and is skipped, so only
// B_0 .. B_{m-1} (all p-integral) are needed.
std::uint64_t generalized_bernoulli_mod_p(const QuadCharacter& chi, unsigned m,
                                          const BernoulliTableModP& table) {
  const std::uint64_t p = table.p;
  const std::uint64_t f = chi.conductor();
  const std::uint64_t f_inv = invmod(f % p, p);

  std::vector<std::uint64_t> fact(m + 1, 1), inv_fact(m + 1, 1);
  for (unsigned i = 1; i <= m; ++i) fact[i] = mulmod(fact[i - 1], i, p);
  inv_fact[m] = invmod(fact[m], p);
  for (unsigned i = m; i > 0; --i) inv_fact[i - 1] = mulmod(inv_fact[i], i, p);
  auto binom = [&](unsigned n, unsigned k) {
    return mulmod(fact[n], mulmod(inv_fact[k], inv_fact[n - k], p), p);
  };

  std::uint64_t total = 0;
  for (std::uint64_t a = 1; a <= f; ++a) {
    const int c = chi(a);
    if (c == 0) continue;
    const std::uint64_t t = mulmod(a % p, f_inv, p);
    // Horner over B_m(t) - B_m = Σ_{j<m} C(m,j) B_j t^{m-j}.
    std::uint64_t acc = 0;
    for (unsigned j = 0; j < m; ++j) {
      acc = mulmod(acc, t, p);
      acc = (acc + mulmod(binom(m, j), table.at(j), p)) % p;
    }
    acc = mulmod(acc, t, p);
    total = c > 0 ? (total + acc) % p : (total + p - acc) % p;
  }
  return mulmod(total, powmod(f % p, m - 1, p), p);
}

}  // namespace

Rational bernoulli_exact(unsigned k) { return bernoulli_cache().get(k); }

std::uint64_t BernoulliTableModP::at(unsigned k) const {
  if (k < values.size()) return values[k];
  if (k == p - 2 && k >= 3) return 0;
  throw Error(ErrorCode::PrecisionUnavailable,
              "B_" + std::to_string(k) + " mod " + std::to_string(p) + " is not p-integral here");
}

BernoulliTableModP bernoulli_all_mod_p(std::uint64_t p) {
  require_prime(p);
  if (p < 5) throw Error(ErrorCode::InvalidArgument, "bernoulli_all_mod_p needs p >= 5");
  const std::size_t n = p - 2;  // degrees 0 .. p-3
  std::vector<std::uint64_t> fact(n + 2, 1);
  for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = mulmod(fact[i - 1], i, p);

  // (e^x - 1)/x = Σ x^k / (k+1)!
  std::vector<std::uint64_t> f(n);
  for (std::size_t k = 0; k < n; ++k) f[k] = invmod(fact[k + 1], p);

  // g = 1/f by the triangular recurrence; f[0] = 1.
  std::vector<std::uint64_t> g(n, 0);
  g[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    std::uint64_t acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc = (acc + mulmod(f[j], g[k - j], p)) % p;
    g[k] = (p - acc) % p;
  }

  BernoulliTableModP table;
  table.p = p;
  table.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) table.values[k] = mulmod(g[k], fact[k], p);
  return table;
}

Rational zeta_nonpositive(long s) {
  if (s > 0) throw Error(ErrorCode::InvalidArgument, "zeta_nonpositive needs s <= 0");
  if (s == 0) return Rational(BigInt(-1), BigInt(2));
  const unsigned k = static_cast<unsigned>(1 - s);
  return -bernoulli_exact(k) / Rational(static_cast<long>(k));
}

bool is_fundamental_discriminant(long D) {
  if (D == 1) return true;
  auto squarefree = [](long n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (long d = 2; d * d <= n; ++d) {
      if (n % (d * d) == 0) return false;
    }
    return true;
  };
  const long r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(D);
  if (r == 0) {
    const long m = D / 4;
    const long rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(m);
  }
  return false;
}

QuadCharacter::QuadCharacter(long discriminant) : d_(discriminant) {
  if (!is_fundamental_discriminant(discriminant)) {
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(discriminant) + " is not a fundamental discriminant");
  }
}

int QuadCharacter::operator()(std::uint64_t a) const {
  if (d_ == 1) return 1;
  return kronecker(d_, a);
}

Rational generalized_bernoulli(const QuadCharacter& chi, unsigned m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "generalized_bernoulli needs m >= 1");
  const std::uint64_t f = chi.conductor();
  const Rational fr(static_cast<long>(f));
  Rational total;
  for (std::uint64_t a = 1; a <= f; ++a) {
    const int c = chi(a);
    if (c == 0) continue;
    const Rational x = Rational(static_cast<long>(a)) / fr;
    // B_m(x) = Σ_j C(m,j) B_j x^{m-j}
    Rational poly;
    for (unsigned j = 0; j <= m; ++j) {
      const Rational bj = bernoulli_exact(j);
      if (bj.is_zero()) continue;
      poly += Rational(binomial(m, j)) * bj * x.pow(m - j);
    }
    total += c > 0 ? poly : -poly;
  }
  return total * fr.pow(static_cast<long>(m) - 1);
}

Rational L_nonpositive(const QuadCharacter& chi, long s) {
  if (s > 0) throw Error(ErrorCode::InvalidArgument, "L_nonpositive needs s <= 0");
  if (chi.is_trivial()) return zeta_nonpositive(s);
  const unsigned m = static_cast<unsigned>(1 - s);
  return -generalized_bernoulli(chi, m) / Rational(static_cast<long>(m));
}

std::uint64_t zeta_p_mod_p(unsigned k, std::uint64_t p) {
  require_prime(p);
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "zeta_p needs k >= 2");
  if (p < k + 2) {
    throw Error(ErrorCode::PrecisionUnavailable,
                "zeta_p(" + std::to_string(k) + ") mod p needs p >= k + 2, got " +
                    std::to_string(p));
  }
  if (k % 2 == 0) return 0;
  // ζ(1 + k - p) = -B_{p-k} / (p - k)
  const unsigned m = static_cast<unsigned>(p - k);
  const auto table = bernoulli_all_mod_p(p);
  const std::uint64_t b = table.at(m);
  return mulmod((p - b) % p, invmod(m % p, p), p);
}

bool L_p_parity_zero(const QuadCharacter& chi, unsigned k) {
  return chi.parity() == (k % 2 == 0 ? 1 : -1);
}

std::uint64_t L_p_mod_p(const QuadCharacter& chi, unsigned k, std::uint64_t p) {
  require_prime(p);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "L_p needs k >= 1");
  if (p < k + 2) {
    throw Error(ErrorCode::PrecisionUnavailable,
                "L_p(" + std::to_string(k) + ") mod p needs p >= k + 2, got " + std::to_string(p));
  }
  if (chi.is_trivial()) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "zeta_p(1) is undefined");
    return zeta_p_mod_p(k, p);
  }
  if (chi.conductor() % p == 0) {
    throw Error(ErrorCode::BadPrime,
                std::to_string(p) + " divides the conductor " + std::to_string(chi.conductor()));
  }
  if (L_p_parity_zero(chi, k)) return 0;
  const unsigned m = static_cast<unsigned>(p - k);
  const auto table = bernoulli_all_mod_p(p);
  const std::uint64_t b = generalized_bernoulli_mod_p(chi, m, table);
  return mulmod((p - b) % p, invmod(m % p, p), p);
}

}  // namespace padicrama
