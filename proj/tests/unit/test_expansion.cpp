#include <gtest/gtest.h>

#include "padicrama/expansion.hpp"
#include "padicrama/io.hpp"
#include "padicrama/truncated_series.hpp"
#include "support.hpp"

using namespace padicrama;
using padicrama::test::data_path;

namespace {

SeriesSpec fixture(const std::string& name) { return load_series(data_path("series/" + name + ".json")); }

Real gamma_fn(const Real& x) {
  Real r(x.precision());
  mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
  return r;
}

// F(x) summed term by term with Γ(a+n+x)/Γ(a) from MPFR's gamma.
Real direct_shifted_sum(const SeriesSpec& s, const Real& x, long bits) {
  Real sum(0L, bits);
  const Real eps = Real::exp2(-(bits + 20), 64);
  for (long n = 0;; ++n) {
    const Real y = Real(n, bits) + x;
    Real t = pow(Real(s.sign, bits), n) * exp(y * log(Real(s.base, bits)));
    for (const Rational& a : s.upper) t *= gamma_fn(Real(a, bits) + y) / gamma_fn(Real(a, bits));
    for (const Rational& b : s.lower) t /= gamma_fn(Real(b, bits) + y) / gamma_fn(Real(b, bits));
    Real p(0L, bits), yk(1L, bits);
    for (const Rational& c : s.poly) {
      p += Real(c, bits) * yk;
      yk *= y;
    }
    t *= p;
    if (s.denom_linear) t /= Real(s.denom_linear->first, bits) * y + Real(s.denom_linear->second, bits);
    t *= Real(s.multiplier, bits);
    sum += t;
    if (n > 5 && abs(t) < eps) break;
  }
  return sum;
}

}  // namespace

TEST(TruncatedSeries, RingLaws) {
  const long bits = 192;
  auto make = [bits](std::initializer_list<long> cs) {
    TruncatedSeries s(4, bits);
    unsigned j = 0;
    for (long c : cs) s[j++] = Real(Rational(BigInt(c), BigInt(7)), bits);
    return s;
  };
  const TruncatedSeries a = make({3, -1, 4, 1, -5});
  const TruncatedSeries b = make({9, 2, -6, 5, 3});
  const TruncatedSeries c = make({-5, 8, 9, -7, 9});
  const Real tol = Real::exp2(-(bits - 16), 64);
  auto expect_eq = [&](const TruncatedSeries& x, const TruncatedSeries& y) {
    for (unsigned j = 0; j <= 4; ++j) EXPECT_LT(abs(x[j] - y[j]), tol) << j;
  };
  expect_eq(a * b, b * a);
  expect_eq((a * b) * c, a * (b * c));
  expect_eq(a * (b + c), a * b + a * c);
  expect_eq(a + (b + c), (a + b) + c);
  expect_eq(a * a.reciprocal(), TruncatedSeries::constant(Real(1L, bits), 4));
  // exp(x) has coefficients 1/j!.
  const TruncatedSeries e = TruncatedSeries::linear(Real(0L, bits), Real(1L, bits), 4).exp();
  const long fact[] = {1, 1, 2, 6, 24};
  for (unsigned j = 0; j <= 4; ++j) {
    EXPECT_LT(abs(e[j] - Real(Rational(BigInt(1), BigInt(fact[j])), bits)), tol);
  }
  // Synthetic division undoes multiply_linear.
  const TruncatedSeries d =
      a.multiply_linear(Real(3L, bits), Real(2L, bits)).divide_linear(Real(3L, bits), Real(2L, bits));
  expect_eq(d, a);
  expect_eq(a.multiply_linear(Real(3L, bits), Real(2L, bits)),
            a * TruncatedSeries::linear(Real(3L, bits), Real(2L, bits), 4));
}

TEST(Expansion, OrderZeroIsTheSum) {
  for (const char* name : {"eq2", "eq6", "eq15"}) {
    const SeriesSpec s = fixture(name);
    const TruncatedSeries t = shifted_expansion(s, 0, 160);
    EXPECT_LT(abs(t[0] - numeric_sum(s, 160).value), Real::exp2(-150, 64)) << name;
  }
}

// The Taylor polynomial reproduces F(x) at small x to O(x^{K+1}).
TEST(Expansion, MatchesDirectGammaSum) {
  const long bits = 200;
  for (const char* name : {"eq2", "eq6", "eq15"}) {
    const SeriesSpec s = fixture(name);
    const unsigned K = 8;
    const TruncatedSeries t = shifted_expansion(s, K, bits);
    for (long k : {-2L, 1L, 3L}) {
      const Real x = Real(k, bits) * Real::exp2(-24, bits);
      const Real direct = direct_shifted_sum(s, x, bits);
      // Remainder is about c_{K+1} x^{K+1} with |x| <= 2^-22.
      EXPECT_LT(abs(t.evaluate(x) - direct), Real::exp2(-160, 64)) << name << " k=" << k;
    }
  }
}

TEST(Expansion, ClaimsFixturesVerify) {
  struct Case {
    const char* series;
    const char* claims;
  };
  for (const Case c : {Case{"eq2", "eq3"}, Case{"eq6", "eq7"}, Case{"eq9", "eq10"},
                       Case{"gourevitch", "eq13"}, Case{"eq15", "eq15"}}) {
    const ExpansionClaims claims = load_claims(data_path(std::string("claims/") + c.claims + "-claims.json"));
    const ExpansionReport rep = verify_expansion(fixture(c.series), claims, 256);
    EXPECT_TRUE(rep.all_pass()) << c.claims;
    EXPECT_EQ(rep.checks.size(), claims.order + 1);
    for (const ExpansionCheck& chk : rep.checks) {
      EXPECT_LT(chk.defect, Real::exp2(-133, 64)) << c.claims << " x^" << chk.order;  // < 1e-40
    }
  }
}

TEST(Expansion, WrongClaimFails) {
  ExpansionClaims claims = load_claims(data_path("claims/eq3-claims.json"));
  claims.claims.back().coefficient = Rational(-447);
  const ExpansionReport rep = verify_expansion(fixture("eq2"), claims, 256);
  EXPECT_FALSE(rep.all_pass());
  EXPECT_TRUE(rep.checks[0].pass);
  EXPECT_FALSE(rep.checks[5].pass);
}
