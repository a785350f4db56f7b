#include <gtest/gtest.h>

#include "padicrama/error.hpp"
#include "padicrama/io.hpp"
#include "padicrama/modular.hpp"
#include "padicrama/series.hpp"
#include "support.hpp"

using namespace padicrama;
using padicrama::test::data_path;

namespace {

Rational R(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

const char* kFixtures[] = {"eq2", "eq6", "eq9", "gourevitch", "eq15"};

SeriesSpec fixture(const std::string& name) { return load_series(data_path("series/" + name + ".json")); }

// Term n straight from the definition, no shared code with the library.
Rational term_oracle(const SeriesSpec& s, long n) {
  Rational t = s.multiplier;
  for (long j = 0; j < n; ++j) {
    for (const Rational& a : s.upper) t *= a + Rational(j);
    for (const Rational& b : s.lower) t /= b + Rational(j);
  }
  t *= Rational(s.sign).pow(n) * s.base.pow(n);
  Rational p = 0, x = 1;
  for (const Rational& c : s.poly) {
    p += c * x;
    x *= Rational(n);
  }
  t *= p;
  if (s.denom_linear) t /= s.denom_linear->first * Rational(n) + s.denom_linear->second;
  return t;
}

// The p-adic value p^v u agrees with q to absolute precision m.
bool agrees(const PadicResidue& x, const Rational& q, int m) {
  const std::uint64_t p = x.prime();
  if (x.is_exact_zero()) return q.is_zero();
  Rational value = 0;
  if (!x.is_known_zero()) value = Rational(x.unit()) * Rational(static_cast<long>(p)).pow(x.valuation());
  const Rational diff = value - q;
  return x.absolute_precision() >= m && (diff.is_zero() || valuation(diff, p) >= m);
}

}  // namespace

TEST(SeriesSpec, FixturesValidate) {
  for (const char* name : kFixtures) EXPECT_NO_THROW(fixture(name).validate()) << name;
  const SeriesSpec eq2 = fixture("eq2");
  EXPECT_EQ(eq2.upper.size(), 5u);
  EXPECT_EQ(eq2.base, R(1, 4));
  EXPECT_EQ(eq2.poly, (std::vector<Rational>{1, 8, 20}));
}

TEST(SeriesSpec, Invariants) {
  SeriesSpec s = fixture("eq2");
  s.base = R(5, 4);
  EXPECT_THROW(s.validate(), Error);
  s = fixture("eq2");
  s.lower.pop_back();
  EXPECT_THROW(s.validate(), Error);
  s = fixture("eq2");
  s.upper[0] = R(3, 2);
  EXPECT_THROW(s.validate(), Error);
  s = fixture("eq6");
  s.denom_linear = std::make_pair(R(1), R(-3));
  EXPECT_THROW(s.validate(), Error);
  s = fixture("eq2");
  s.poly = {R(0)};
  EXPECT_NO_THROW(s.validate());
  EXPECT_TRUE(s.has_zero_poly());
}

TEST(Series, TermsMatchDefinition) {
  for (const char* name : kFixtures) {
    const SeriesSpec s = fixture(name);
    for (long n = 0; n < 25; ++n) EXPECT_EQ(term_exact(s, static_cast<std::uint64_t>(n)), term_oracle(s, n)) << name;
    EXPECT_EQ(pochhammer(R(1, 2), 3), R(15, 8));
    EXPECT_EQ(pochhammer(R(1, 2), 0), R(1));
  }
}

TEST(Series, TruncatedSumExact) {
  for (const char* name : kFixtures) {
    const SeriesSpec s = fixture(name);
    for (std::uint64_t p : {5ULL, 7ULL, 13ULL}) {
      Rational want = 0;
      for (long n = 0; n < static_cast<long>(p); ++n) want += term_oracle(s, n);
      EXPECT_EQ(truncated_sum_exact(s, p), want) << name << " " << p;
    }
  }
}

TEST(Series, BadPrimes) {
  EXPECT_TRUE(bad_prime_reason(fixture("eq2"), 2).has_value());
  EXPECT_FALSE(bad_prime_reason(fixture("eq2"), 5).has_value());
  EXPECT_TRUE(bad_prime_reason(fixture("eq9"), 5).has_value());
  EXPECT_TRUE(bad_prime_reason(fixture("eq9"), 3).has_value());
  EXPECT_TRUE(bad_prime_reason(fixture("eq15"), 23).has_value());
  EXPECT_THROW(truncated_sum_mod(fixture("eq9"), 5, 4), Error);
}

// The p-adic path against the exact-rational one, every admissible p <= 31.
TEST(Series, ModMatchesExactOracle) {
  for (const char* name : kFixtures) {
    const SeriesSpec s = fixture(name);
    for (std::uint64_t p : primes_in_range(2, 31)) {
      if (bad_prime_reason(s, p)) continue;
      const Rational exact = truncated_sum_exact(s, p);
      for (int m = 1; m <= 8; ++m) {
        TruncatedSumOptions opt;
        opt.allow_negative_valuation = true;
        const PadicResidue got = truncated_sum_mod(s, p, m, opt);
        EXPECT_TRUE(agrees(got, exact, m)) << name << " p=" << p << " m=" << m << " got "
                                           << got.to_string() << " exact " << exact.to_string();
        if (exact.is_zero() || valuation(exact, p) >= 0) {
          const PadicResidue plain = truncated_sum_mod(s, p, m);
          EXPECT_EQ(plain.residue(m), reduce_mod(exact, prime_power(p, static_cast<unsigned long>(m))));
        }
      }
    }
  }
}

TEST(Series, ValuationsCancelAtEleven) {
  // n = 5 carries 11 in 2n + 1 and in (1/2)_n; the valuations cancel.
  const SeriesSpec s = fixture("eq15");
  const PadicResidue x = truncated_sum_mod(s, 11, 4);
  EXPECT_EQ(x.residue(4), reduce_mod(truncated_sum_exact(s, 11), 14641));
}

TEST(Series, ZeroPolyIsExactZero) {
  SeriesSpec s = fixture("eq2");
  s.poly = {R(0)};
  EXPECT_TRUE(truncated_sum_mod(s, 11, 4).is_exact_zero());
  EXPECT_TRUE(truncated_sum_exact(s, 11).is_zero());
}

TEST(Series, NumericSumsMatchClosedForms) {
  for (const char* name : kFixtures) {
    const SeriesSpec s = fixture(name);
    const NumericValue v = numeric_sum(s, 200);
    EXPECT_LT(v.error_bound, Real::exp2(-200, 64)) << name;
    const Real diff = abs(v.value - rhs_value(s, 232));
    EXPECT_LT(diff, Real::exp2(-190, 64)) << name << " " << diff.to_string(5);
  }
}

TEST(Series, TailBound) {
  const SeriesSpec s = fixture("eq2");
  const auto rho = tail_ratio_bound(s, 40);
  ASSERT_TRUE(rho.has_value());
  EXPECT_LT(*rho, 1.0);
  EXPECT_GE(*rho, 0.25);
  // Observed ratios beyond n stay below the bound.
  for (std::uint64_t n = 40; n < 80; ++n) {
    const Rational r = (term_exact(s, n + 1) / term_exact(s, n)).abs();
    EXPECT_LE(mpq_get_d(r.get_mpq().get_mpq_t()), *rho);
  }
}
