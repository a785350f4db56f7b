#include "padicrama/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "padicrama/error.hpp"

namespace padicrama {

namespace {

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq().get_mpq_t()); }

Rational from_u64(std::uint64_t n) { return Rational(BigInt(static_cast<unsigned long>(n))); }

// Taylor coefficients of P(n + x): d_j = Σ_i c_i C(i, j) n^{i-j}.
std::vector<Rational> shifted_poly(const std::vector<Rational>& poly, const Rational& n) {
  std::vector<Rational> out(poly.size());
  for (std::size_t j = 0; j < poly.size(); ++j) {
    Rational acc;
    for (std::size_t i = j; i < poly.size(); ++i) {
      BigInt c;
      mpz_bin_uiui(c.get_mpz_t(), i, j);
      acc += poly[i] * Rational(c) * n.pow(static_cast<long>(i - j));
    }
    out[j] = acc;
  }
  return out;
}

// log of Π Γ(a+x)/Γ(a) / Π Γ(b+x)/Γ(b) · base^x, as a series with zero constant term.
TruncatedSeries log_prefactor(const SeriesSpec& spec, unsigned order, long wp) {
  TruncatedSeries s(order, wp);
  if (order == 0) return s;
  Real c1 = log(Real(spec.base, wp));
  for (const auto& a : spec.upper) c1 += digamma(a, wp);
  for (const auto& b : spec.lower) c1 -= digamma(b, wp);
  s[1] = c1;
  for (unsigned j = 2; j <= order; ++j) {
    Real acc(wp);
    for (const auto& a : spec.upper) acc += hurwitz_zeta(j, a, wp);
    for (const auto& b : spec.lower) acc -= hurwitz_zeta(j, b, wp);
    acc /= Real(static_cast<long>(j), wp);
    s[j] = j % 2 == 0 ? acc : -acc;
  }
  s.set_error_bound(Real::exp2(-wp + 8, 64));
  return s;
}

}  // namespace

TruncatedSeries shifted_expansion(const SeriesSpec& spec, unsigned order, long precision_bits,
                                  const ExpansionOptions& options) {
  if (precision_bits < 64) throw Error(ErrorCode::InvalidArgument, "expansion needs >= 64 bits");
  const long wp = precision_bits + 64;
  const unsigned K = order;

  if (spec.has_zero_poly()) return TruncatedSeries(K, precision_bits);

  const TruncatedSeries prefactor = log_prefactor(spec, K, wp).exp();

  // Radius for the Cauchy estimate of the tail coefficients; lower parameters
  // must stay away from the pole at b + x = 0.
  double b_min = 1.0;
  for (const auto& b : spec.lower) b_min = std::min(b_min, to_double(b));
  const double radius = std::min(0.5, b_min / 2.0);
  double log_growth = 0.0;
  double poly_abs_max = 0.0;

  const Real target = Real::exp2(-precision_bits - 8, 64);
  const Real sign_base(spec.sign < 0 ? -spec.base : spec.base, wp);

  TruncatedSeries q = TruncatedSeries::constant(Real(1, wp), K);
  TruncatedSeries sum(K, wp);
  Real tail(64);
  for (std::uint64_t n = 0;; ++n) {
    const Rational rn = from_u64(n);
    const auto d = shifted_poly(spec.poly, rn);
    TruncatedSeries pn(K, wp);
    for (unsigned j = 0; j <= K && j < d.size(); ++j) pn[j] = Real(d[j], wp);
    TruncatedSeries term = q * pn;
    if (spec.denom_linear) {
      const auto& [alpha, beta] = *spec.denom_linear;
      term = term.divide_linear(Real(alpha * rn + beta, wp), Real(alpha, wp));
    }
    sum += term;

    // Bound |T_n(x)| on |x| = radius from the x = 0 value and the growth of
    // the shifted Pochhammer quotients.
    const double nd = static_cast<double>(n);
    poly_abs_max = 0.0;
    for (std::size_t i = 0; i < spec.poly.size(); ++i) {
      poly_abs_max += std::abs(to_double(spec.poly[i])) * std::pow(nd + radius, static_cast<double>(i));
    }
    double den_min = 1.0;
    if (spec.denom_linear) {
      const double alpha = to_double(spec.denom_linear->first);
      const double beta = to_double(spec.denom_linear->second);
      den_min = std::abs(alpha * nd + beta) - alpha * radius;
    }

    const bool past_user_limit = options.terms && n + 1 >= *options.terms;
    if (auto rho = tail_ratio_bound(spec, n, radius); rho && den_min > 0.0) {
      const Real q0 = abs(q[0]).with_precision(64);
      const double scale = std::exp(log_growth) * poly_abs_max / den_min *
                           std::pow(1.0 / radius, static_cast<double>(K)) * *rho / (1.0 - *rho);
      tail = q0 * Real::from_double(scale * (1.0 + 1e-9), 64);
      if (!options.terms && tail < target) break;
    } else {
      tail = Real::from_double(std::numeric_limits<double>::infinity(), 64);
    }
    if (past_user_limit) break;
    if (n > 100000000) throw Error(ErrorCode::InsufficientPrecision, "expansion did not converge");

    // Q_{n+1} = Q_n · sign·base · Π (a+n+x) / Π (b+n+x)
    for (const auto& a : spec.upper) q = q.multiply_linear(Real(a + rn, wp), Real(1, wp));
    for (const auto& b : spec.lower) q = q.divide_linear(Real(b + rn, wp), Real(1, wp));
    q = q * sign_base;
    for (const auto& a : spec.upper) {
      const double av = to_double(a) + nd;
      log_growth += std::log1p(radius / av);
    }
    for (const auto& b : spec.lower) {
      const double bv = to_double(b) + nd;
      log_growth -= std::log1p(-radius / bv);
    }
  }
  sum.widen_error(tail);

  TruncatedSeries result = prefactor * sum;
  result = result * Real(spec.multiplier, wp);
  TruncatedSeries out(K, precision_bits + 16);
  for (unsigned j = 0; j <= K; ++j) out[j] = result[j].with_precision(precision_bits + 16);
  out.set_error_bound(result.error_bound() + Real::exp2(-precision_bits - 16, 64) * result.max_abs());
  return out;
}

bool ExpansionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExpansionCheck& c) { return c.pass; });
}

ExpansionReport verify_expansion(const SeriesSpec& spec, const ExpansionClaims& claims,
                                 long precision_bits) {
  for (const auto& c : claims.claims) {
    if (c.order > claims.order) {
      throw Error(ErrorCode::InvalidArgument, "claim at order " + std::to_string(c.order) +
                                                  " exceeds expansion order " +
                                                  std::to_string(claims.order));
    }
  }
  long bits = precision_bits;
  for (int attempt = 0;; ++attempt) {
    const TruncatedSeries series = shifted_expansion(spec, claims.order, bits);
    const Real floor = Real::exp2(-(bits - 16), 64);
    const Real scale_abs = abs(Real(claims.scale, 64));
    const Real err = series.error_bound() * scale_abs;
    if (err > floor && attempt < 4) {
      bits *= 2;
      continue;
    }
    ExpansionReport report;
    report.precision_bits = bits;
    report.error_bound = err;
    const Real tolerance = Real(4, 64) * err + floor;
    const long wp = bits + 32;
    const Real scale(claims.scale, wp);
    for (unsigned j = 0; j <= claims.order; ++j) {
      ExpansionCheck check;
      check.order = j;
      check.computed = series[j] * scale;
      Real claimed(wp);
      std::string text;
      for (const auto& c : claims.claims) {
        if (c.order != j) continue;
        claimed += Real(c.coefficient, wp) * constant_value(c.constant, wp);
        if (!text.empty()) text += " + ";
        text += c.coefficient.to_string();
        if (!c.constant.empty()) text += "*" + to_string(c.constant);
      }
      check.claimed_text = text.empty() ? "0" : text;
      check.claimed = claimed;
      check.defect = abs(check.computed - claimed);
      check.tolerance = tolerance;
      check.pass = check.defect <= tolerance;
      report.checks.push_back(std::move(check));
    }
    return report;
  }
}

}  // namespace padicrama
