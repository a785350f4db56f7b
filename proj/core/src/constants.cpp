#include "padicrama/constants.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <mutex>
#include <shared_mutex>

#include "padicrama/error.hpp"
#include "padicrama/lfunctions.hpp"
#include "padicrama/modular.hpp"

namespace padicrama {

namespace {

constexpr long kGuardBits = 32;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

long parse_long(const std::string& s, std::string_view whole) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorCode::InvalidArgument, "malformed constant '" + std::string(whole) + "'");
  }
  return v;
}

Rational factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

class ConstantCache {
 public:
  std::optional<Real> find(const std::string& key, long bits) {
    std::shared_lock lock(mutex_);
    auto it = values_.find({key, bits});
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, long bits, const Real& value) {
    std::unique_lock lock(mutex_);
    values_.insert_or_assign({key, bits}, value);
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<std::string, long>, Real> values_;
};

ConstantCache& cache() {
  static ConstantCache c;
  return c;
}

Real compute_constant(const ConstantTag& tag, long bits) {
  const long wp = bits + kGuardBits;
  switch (tag.kind) {
    case ConstantTag::Kind::One:
      return Real(1, bits);
    case ConstantTag::Kind::PiPower:
      return (Real(1, wp) / pow(Real::pi(wp), static_cast<long>(tag.k))).with_precision(bits);
    case ConstantTag::Kind::Zeta:
      return L_value(1, tag.k, bits);
    case ConstantTag::Kind::Lquad:
      return L_value(tag.d, tag.k, bits);
    case ConstantTag::Kind::SqrtDisc:
      if (tag.d < 1) throw Error(ErrorCode::InvalidArgument, "sqrt of non-positive integer");
      return sqrt(Real(tag.d, wp)).with_precision(bits);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown constant kind");
}

}  // namespace

std::string ConstantTag::to_string() const {
  switch (kind) {
    case Kind::One: return "1";
    case Kind::PiPower: return "pi^-" + std::to_string(k);
    case Kind::Zeta: return "zeta(" + std::to_string(k) + ")";
    case Kind::Lquad: return "L(" + std::to_string(d) + "," + std::to_string(k) + ")";
    case Kind::SqrtDisc: return "sqrt(" + std::to_string(d) + ")";
  }
  return "?";
}

ConstantTag ConstantTag::parse(std::string_view text) {
  const std::string s = trim(text);
  auto inner = [&](std::string_view prefix) -> std::optional<std::string> {
    if (s.size() > prefix.size() + 1 && s.compare(0, prefix.size(), prefix) == 0 &&
        s.back() == ')') {
      return s.substr(prefix.size(), s.size() - prefix.size() - 1);
    }
    return std::nullopt;
  };
  if (s == "1" || s == "one") return one();
  if (s.rfind("pi^-", 0) == 0) {
    const long j = parse_long(s.substr(4), text);
    if (j < 1) throw Error(ErrorCode::InvalidArgument, "pi power must be >= 1");
    return pi_power(static_cast<unsigned>(j));
  }
  if (auto a = inner("zeta(")) {
    const long k = parse_long(trim(*a), text);
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "zeta(k) needs k >= 2");
    return zeta(static_cast<unsigned>(k));
  }
  if (auto a = inner("L(")) {
    const auto comma = a->find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "malformed constant '" + s + "'");
    }
    const long D = parse_long(trim(a->substr(0, comma)), text);
    const long k = parse_long(trim(a->substr(comma + 1)), text);
    if (k < 1 || !is_fundamental_discriminant(D)) {
      throw Error(ErrorCode::InvalidArgument, "bad L-value '" + s + "'");
    }
    return lquad(D, static_cast<unsigned>(k));
  }
  if (auto a = inner("sqrt(")) {
    const long d = parse_long(trim(*a), text);
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "sqrt(d) needs d >= 2");
    return sqrt_disc(d);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown constant '" + s + "'");
}

std::string to_string(const ConstantMonomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& t : m) {
    if (!out.empty()) out += "*";
    out += t.to_string();
  }
  return out;
}

ConstantMonomial parse_monomial(std::string_view text) {
  ConstantMonomial out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto star = text.find('*', start);
    const auto piece = text.substr(start, star == std::string_view::npos ? text.npos : star - start);
    const auto tag = ConstantTag::parse(piece);
    if (tag.kind != ConstantTag::Kind::One) out.push_back(tag);
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return out;
}

Real constant_value(const ConstantTag& tag, long bits) {
  const std::string key = tag.to_string();
  if (auto hit = cache().find(key, bits)) return *hit;
  Real v = compute_constant(tag, bits);
  cache().store(key, bits, v);
  return v;
}

Real constant_value(const ConstantMonomial& monomial, long bits) {
  Real v(1, bits + kGuardBits);
  for (const auto& t : monomial) v *= constant_value(t, bits + kGuardBits);
  return v.with_precision(bits);
}

Real hurwitz_zeta(unsigned s, const Rational& a, long bits) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "hurwitz_zeta needs s >= 2");
  if (a.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "hurwitz_zeta needs a > 0");
  const long wp = bits + kGuardBits;
  const long N = bits / 2 + 16;
  const long ns = static_cast<long>(s);

  Real sum(wp);
  for (long j = 0; j < N; ++j) sum += pow(Real(a + Rational(j), wp), -ns);

  const Real x(a + Rational(N), wp);
  const Real xs = pow(x, -ns);
  sum += xs * x / Real(ns - 1, wp) + xs / Real(2, wp);

  // T_k = B_{2k}/(2k)! · s(s+1)…(s+2k-2) · x^{-s-2k+1}
  const Real eps = Real::exp2(-wp, wp);
  const Real inv_x2 = Real(1, wp) / (x * x);
  Real power = xs / x;
  Rational rising(ns);
  for (unsigned k = 1;; ++k) {
    const Rational coeff = bernoulli_exact(2 * k) / factorial(2 * k) * rising;
    const Real term = Real(coeff, wp) * power;
    sum += term;
    if (abs(term) < eps) break;
    if (k > static_cast<unsigned>(4 * bits)) {
      throw Error(ErrorCode::InsufficientPrecision, "Euler–Maclaurin tail did not converge");
    }
    rising *= Rational(ns + 2 * static_cast<long>(k) - 1) * Rational(ns + 2 * static_cast<long>(k));
    power *= inv_x2;
  }
  return sum.with_precision(bits);
}

Real digamma(const Rational& a, long bits) {
  if (a.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "digamma needs a > 0");
  const long wp = bits + kGuardBits;
  const long N = bits / 2 + 16;

  Real shift(wp);
  for (long j = 0; j < N; ++j) shift += Real(1, wp) / Real(a + Rational(j), wp);

  // ψ(x) ≈ log x − 1/(2x) − Σ_{k≥1} B_{2k} / (2k x^{2k})
  const Real x(a + Rational(N), wp);
  Real psi = log(x) - Real(1, wp) / (Real(2, wp) * x);
  const Real eps = Real::exp2(-wp, wp);
  const Real inv_x2 = Real(1, wp) / (x * x);
  Real power = inv_x2;
  for (unsigned k = 1;; ++k) {
    const Rational coeff = bernoulli_exact(2 * k) / Rational(2 * static_cast<long>(k));
    const Real term = Real(coeff, wp) * power;
    psi -= term;
    if (abs(term) < eps) break;
    if (k > static_cast<unsigned>(4 * bits)) {
      throw Error(ErrorCode::InsufficientPrecision, "digamma asymptotic tail did not converge");
    }
    power *= inv_x2;
  }
  return (psi - shift).with_precision(bits);
}

Real L_value(long D, unsigned k, long bits) {
  const long wp = bits + kGuardBits;
  if (D == 1) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "zeta(k) needs k >= 2");
    return hurwitz_zeta(k, Rational(1), bits);
  }
  const QuadCharacter chi(D);
  const long f = static_cast<long>(chi.conductor());
  Real total(wp);
  for (long a = 1; a <= f; ++a) {
    const int c = chi(static_cast<std::uint64_t>(a));
    if (c == 0) continue;
    const Rational shift{BigInt(a), BigInt(f)};
    // Σ χ(a) = 0, so the pole parts cancel and ψ carries L(1, χ).
    Real part = k == 1 ? digamma(shift, wp) : hurwitz_zeta(k, shift, wp);
    total += c > 0 ? part : -part;
  }
  if (k == 1) return (-total / Real(f, wp)).with_precision(bits);
  return (total / pow(Real(f, wp), static_cast<long>(k))).with_precision(bits);
}

}  // namespace padicrama
