#include "padicrama/series.hpp"

#include <algorithm>
#include <cmath>

#include "padicrama/constants.hpp"
#include "padicrama/error.hpp"
#include "padicrama/modular.hpp"

namespace padicrama {

namespace {

void violation(const SeriesSpec& spec, const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, "series '" + spec.name + "': " + what);
}

Rational eval_poly(const std::vector<Rational>& poly, const Rational& x) {
  Rational acc;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq().get_mpq_t()); }

// 1 + max |c_i / c_d|: every root of P lies in |z| < R.
double cauchy_root_bound(const std::vector<Rational>& poly) {
  const Rational lead = poly.back().abs();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    m = std::max(m, to_double(poly[i].abs() / lead));
  }
  return 1.0 + m * (1.0 + 1e-12);
}

}  // namespace

void SeriesSpec::validate() const {
  if (sign != 1 && sign != -1) violation(*this, "sign must be +1 or -1");
  if (!(base > Rational(0) && base < Rational(1))) violation(*this, "base must satisfy 0 < base < 1");
  auto in_unit_interval = [](const Rational& a) { return a > Rational(0) && a <= Rational(1); };
  for (const auto& a : upper) {
    if (!in_unit_interval(a)) violation(*this, "upper parameter " + a.to_string() + " not in (0, 1]");
  }
  for (const auto& b : lower) {
    if (!in_unit_interval(b)) violation(*this, "lower parameter " + b.to_string() + " not in (0, 1]");
  }
  if (upper.size() != lower.size()) {
    violation(*this, "upper and lower parameter counts differ (term ratio would not tend to sign*base)");
  }
  if (poly.empty()) violation(*this, "poly must be non-empty");
  if (poly.back().is_zero() && !(poly.size() == 1)) {
    violation(*this, "leading polynomial coefficient must be non-zero");
  }
  if (denom_linear) {
    const auto& [alpha, beta] = *denom_linear;
    if (alpha < Rational(0)) violation(*this, "denom_linear alpha must be >= 0");
    if (alpha.is_zero()) {
      if (beta.is_zero()) violation(*this, "denom_linear is identically zero");
    } else {
      const Rational root = -beta / alpha;
      if (root.is_integer() && root >= Rational(0)) {
        violation(*this, "alpha*n + beta vanishes at n = " + root.to_string());
      }
    }
  }
  if (rhs.sqrt_disc < 1) violation(*this, "rhs.sqrt_disc must be a positive integer");
}

bool SeriesSpec::has_zero_poly() const {
  return std::all_of(poly.begin(), poly.end(), [](const Rational& c) { return c.is_zero(); });
}

Rational SeriesSpec::rational_factor(const Rational& n) const {
  Rational value = eval_poly(poly, n);
  if (denom_linear) value /= denom_linear->first * n + denom_linear->second;
  return value;
}

Rational SeriesSpec::hypergeometric_ratio(std::uint64_t n) const {
  const Rational rn(BigInt(static_cast<unsigned long>(n)));
  Rational r = base;
  if (sign < 0) r = -r;
  for (const auto& a : upper) r *= a + rn;
  for (const auto& b : lower) r /= b + rn;
  return r;
}

Rational pochhammer(const Rational& a, std::uint64_t n) {
  Rational r(1);
  for (std::uint64_t k = 0; k < n; ++k) r *= a + Rational(BigInt(static_cast<unsigned long>(k)));
  return r;
}

Rational term_exact(const SeriesSpec& spec, std::uint64_t n) {
  Rational t = spec.multiplier;
  for (const auto& a : spec.upper) t *= pochhammer(a, n);
  for (const auto& b : spec.lower) t /= pochhammer(b, n);
  const long e = static_cast<long>(n);
  t *= spec.base.pow(e);
  if (spec.sign < 0 && n % 2 == 1) t = -t;
  return t * spec.rational_factor(Rational(BigInt(static_cast<unsigned long>(n))));
}

Rational truncated_sum_exact(const SeriesSpec& spec, std::uint64_t p) {
  Rational sum;
  Rational h = spec.multiplier;
  for (std::uint64_t n = 0; n < p; ++n) {
    if (n > 0) h *= spec.hypergeometric_ratio(n - 1);
    sum += h * spec.rational_factor(Rational(BigInt(static_cast<unsigned long>(n))));
  }
  return sum;
}

std::optional<std::string> bad_prime_reason(const SeriesSpec& spec, std::uint64_t p) {
  if (!is_prime(p)) return std::to_string(p) + " is not prime";
  const unsigned long pu = static_cast<unsigned long>(p);
  auto divides_den = [&](const Rational& q) { return q.den() % pu == 0; };
  if (divides_den(spec.base)) return "p divides the denominator of base";
  if (divides_den(spec.multiplier)) return "p divides the denominator of multiplier";
  for (const auto& a : spec.upper) {
    if (divides_den(a)) return "p divides the denominator of parameter " + a.to_string();
  }
  for (const auto& b : spec.lower) {
    if (divides_den(b)) return "p divides the denominator of parameter " + b.to_string();
  }
  if (spec.denom_linear &&
      (divides_den(spec.denom_linear->first) || divides_den(spec.denom_linear->second))) {
    return "p divides a denominator of denom_linear";
  }
  return std::nullopt;
}

PadicResidue truncated_sum_mod(const SeriesSpec& spec, std::uint64_t p, int m,
                               const TruncatedSumOptions& options) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "truncated_sum_mod needs m >= 1");
  if (auto reason = bad_prime_reason(spec, p)) throw Error(ErrorCode::BadPrime, *reason);
  if (spec.has_zero_poly()) return PadicResidue::exact_zero(p);

  for (int guard = options.guard;; guard *= 2) {
    const int w = m + guard;
    PadicResidue h = reduce_rational(spec.multiplier, p, w);
    PadicResidue sum = PadicResidue::exact_zero(p);
    for (std::uint64_t n = 0; n < p; ++n) {
      if (n > 0) h = padic_mul(h, reduce_rational(spec.hypergeometric_ratio(n - 1), p, w));
      const Rational factor =
          spec.rational_factor(Rational(BigInt(static_cast<unsigned long>(n))));
      sum = padic_add(sum, padic_mul(h, reduce_rational(factor, p, w)));
    }
    if (sum.absolute_precision() >= m) {
      if (!sum.is_known_zero() && sum.valuation() < 0 && !options.allow_negative_valuation) {
        throw Error(ErrorCode::NegativeValuationSum,
                    "truncated sum of '" + spec.name + "' has valuation " +
                        std::to_string(sum.valuation()) + " at p = " + std::to_string(p));
      }
      return sum.truncated(m);
    }
    if (guard * 2 > options.max_guard) {
      throw Error(ErrorCode::GuardExhausted,
                  "transient valuation exceeded guard " + std::to_string(guard) + " at p = " +
                      std::to_string(p));
    }
  }
}

std::optional<double> tail_ratio_bound(const SeriesSpec& spec, std::uint64_t n, double radius) {
  const double nd = static_cast<double>(n);
  const double R = cauchy_root_bound(spec.poly);
  const double d = static_cast<double>(spec.poly.size() - 1);
  double start = R + radius;
  if (spec.denom_linear && !spec.denom_linear->first.is_zero()) {
    start = std::max(start, radius - to_double(spec.denom_linear->second / spec.denom_linear->first));
  }
  if (nd <= start + 1.0 || nd <= radius + 1.0) return std::nullopt;
  // (a + j + x)/(b + j + x) <= (1 + j + r)/(j - r) for a, b in (0, 1].
  const double param = std::pow((nd + 1.0 + radius) / (nd - radius),
                                static_cast<double>(spec.upper.size()));
  const double polyf = std::pow(1.0 + 1.0 / (nd - R - radius), d);
  const double rho = to_double(spec.base) * param * polyf * (1.0 + 1e-12);
  if (!(rho < 1.0)) return std::nullopt;
  return rho;
}

NumericValue numeric_sum(const SeriesSpec& spec, long precision_bits) {
  if (precision_bits < 64) throw Error(ErrorCode::InvalidArgument, "numeric_sum needs >= 64 bits");
  const long wp = precision_bits + 48;
  if (spec.has_zero_poly()) return {Real(wp), Real(64), 0};

  const Real target = Real::exp2(-precision_bits - 2, 64);
  Real h(spec.multiplier, wp);
  Real sum(wp);
  Real abs_terms(64);
  Real max_partial(64);
  Real weighted(64);  // Σ |t_n| (n + 3), for accumulated rounding in h
  Real tail(64);
  std::uint64_t n = 0;
  for (;; ++n) {
    if (n > 0) h *= Real(spec.hypergeometric_ratio(n - 1), wp);
    const Real term =
        h * Real(spec.rational_factor(Rational(BigInt(static_cast<unsigned long>(n)))), wp);
    sum += term;
    const Real at = abs(term).with_precision(64);
    abs_terms += at;
    weighted += at * Real(static_cast<long>(n + 3), 64);
    max_partial = max(max_partial, abs(sum).with_precision(64));
    if (auto rho = tail_ratio_bound(spec, n)) {
      tail = at * Real::from_double(*rho / (1.0 - *rho) * (1.0 + 1e-9), 64);
      if (tail < target) break;
    }
    if (n > 100000000) throw Error(ErrorCode::InsufficientPrecision, "numeric_sum did not converge");
  }
  const Real ulp = Real::exp2(-wp + 1, 64);
  Real bound = tail + ulp * (weighted + Real(static_cast<long>(n + 2), 64) * max_partial);
  return {sum.with_precision(precision_bits + 16), bound, n + 1};
}

Real closed_form_value(const ClosedForm& form, long precision_bits) {
  const long wp = precision_bits + 32;
  Real v(form.coefficient, wp);
  if (form.sqrt_disc > 1) v *= constant_value(ConstantTag::sqrt_disc(form.sqrt_disc), wp);
  if (form.pi_exponent > 0) v *= constant_value(ConstantTag::pi_power(form.pi_exponent), wp);
  return v.with_precision(precision_bits + 16);
}

Real rhs_value(const SeriesSpec& spec, long precision_bits) {
  return closed_form_value(spec.rhs, precision_bits);
}

}  // namespace padicrama
