#include "padicrama/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "padicrama/error.hpp"
#include "padicrama/lfunctions.hpp"
#include "padicrama/modular.hpp"
#include "padicrama/parallel.hpp"

namespace padicrama {

// ---------------------------------------------------------------------------
// Template constants

bool TemplateConstant::structurally_zero() const {
  switch (kind) {
    case Kind::ZetaP:
      return k % 2 == 0;
    case Kind::LQp:
      return L_p_parity_zero(QuadCharacter(d), k);
    default:
      return false;
  }
}

std::uint64_t TemplateConstant::min_prime() const {
  if (mod_p_only()) return std::max<std::uint64_t>(k + 2, 5);
  return 2;
}

bool TemplateConstant::bad_prime(std::uint64_t p) const {
  if (kind == Kind::One || kind == Kind::ZetaP) return false;
  const std::uint64_t f = static_cast<std::uint64_t>(d < 0 ? -d : d);
  return f % p == 0;
}

std::uint64_t TemplateConstant::value_mod_p(std::uint64_t p) const {
  switch (kind) {
    case Kind::One:
      return 1 % p;
    case Kind::Kron: {
      const int s = kronecker(d, p);
      if (s == 0) throw Error(ErrorCode::BadPrime, "(" + std::to_string(d) + "/p) vanishes at " +
                                                       std::to_string(p));
      return s > 0 ? 1 : p - 1;
    }
    case Kind::ZetaP:
      return zeta_p_mod_p(k, p);
    case Kind::LQp:
      return L_p_mod_p(QuadCharacter(d), k, p);
  }
  return 0;
}

PadicResidue TemplateConstant::value(std::uint64_t p) const {
  if (mod_p_only()) {
    const std::uint64_t v = value_mod_p(p);
    if (v == 0) return PadicResidue::zero_to_precision(p, 1);
    return PadicResidue::from_parts(p, 0, 1, BigInt(static_cast<unsigned long>(v)));
  }
  // ±1 is exact; 64 digits of relative precision is more than any modulus here.
  const long s = kind == Kind::One ? 1 : (value_mod_p(p) == 1 ? 1 : -1);
  return reduce_rational(Rational(s), p, 64);
}

std::string TemplateConstant::to_string() const {
  switch (kind) {
    case Kind::One:
      return "1";
    case Kind::Kron:
      return "(" + std::to_string(d) + "/p)";
    case Kind::ZetaP:
      return "zeta_p(" + std::to_string(k) + ")";
    case Kind::LQp:
      return "L_{" + std::to_string(d) + ",p}(" + std::to_string(k) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Templates

void ExpansionTemplate::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvariantViolation, what); };
  if (modulus_power < 1 || modulus_power > 32) fail("modulus power must lie in 1..32");
  if (terms.empty()) fail("template has no terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const TemplateTerm& t = terms[i];
    if (t.exponent < 0) fail("negative exponent in template");
    if (i > 0 && t.exponent <= terms[i - 1].exponent) fail("exponents must strictly increase");
    if (t.exponent >= modulus_power) {
      fail("exponent " + std::to_string(t.exponent) + " is not below the modulus power");
    }
    if (t.constant.kind == TemplateConstant::Kind::Kron ||
        t.constant.kind == TemplateConstant::Kind::LQp) {
      if (t.constant.d != 1 && !is_fundamental_discriminant(t.constant.d)) {
        fail(std::to_string(t.constant.d) + " is not a fundamental discriminant");
      }
    }
    if (t.constant.kind == TemplateConstant::Kind::ZetaP && t.constant.k < 2) {
      fail("zeta_p needs k >= 2");
    }
    if (t.constant.kind == TemplateConstant::Kind::LQp && t.constant.k < 1) {
      fail("L_p needs k >= 1");
    }
    // Only the first p-adic digit of ζ_p and L_p is available.
    if (t.constant.mod_p_only() && modulus_power - t.exponent > 1 &&
        !t.constant.structurally_zero()) {
      fail(t.constant.to_string() + " at p^" + std::to_string(t.exponent) +
           " would be needed beyond mod p");
    }
  }
}

bool ExpansionTemplate::fully_known() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const TemplateTerm& t) { return t.coefficient.has_value(); });
}

ExpansionTemplate ExpansionTemplate::without_structural_zeros() const {
  ExpansionTemplate out;
  out.modulus_power = modulus_power;
  for (const TemplateTerm& t : terms) {
    if (!t.constant.structurally_zero()) out.terms.push_back(t);
  }
  return out;
}

namespace {

void check_prime_for_template(const ExpansionTemplate& tpl, std::uint64_t p) {
  for (const TemplateTerm& t : tpl.terms) {
    if (t.constant.structurally_zero()) continue;
    if (t.constant.bad_prime(p)) {
      throw Error(ErrorCode::BadPrime, std::to_string(p) + " divides the discriminant of " +
                                           t.constant.to_string());
    }
    if (p < t.constant.min_prime()) {
      throw Error(ErrorCode::PrecisionUnavailable,
                  t.constant.to_string() + " mod p needs p >= " +
                      std::to_string(t.constant.min_prime()) + ", got " + std::to_string(p));
    }
  }
}

// r · c(p) · p^e known to absolute precision >= target.
PadicResidue term_value(const TemplateTerm& t, std::uint64_t p, int target) {
  if (!t.coefficient) {
    throw Error(ErrorCode::UnknownCoefficient,
                "coefficient of " + t.constant.to_string() + " p^" + std::to_string(t.exponent) +
                    " is unknown");
  }
  if (t.coefficient->is_zero() || t.constant.structurally_zero()) {
    return PadicResidue::exact_zero(p);
  }
  const int rel = std::max(1, target - t.exponent + 8);
  PadicResidue c = t.constant.value(p);
  PadicResidue r = reduce_rational(*t.coefficient, p, rel);
  return padic_shift(padic_mul(r, c), t.exponent);
}

}  // namespace

PadicResidue template_value(const ExpansionTemplate& tpl, std::uint64_t p, int absolute_precision) {
  check_prime_for_template(tpl, p);
  PadicResidue acc = PadicResidue::exact_zero(p);
  for (const TemplateTerm& t : tpl.terms) acc = padic_add(acc, term_value(t, p, absolute_precision));
  if (acc.absolute_precision() < absolute_precision) {
    throw Error(ErrorCode::PrecisionUnavailable,
                "template known mod p^" + std::to_string(acc.absolute_precision()) + ", need p^" +
                    std::to_string(absolute_precision));
  }
  return acc.truncated(absolute_precision);
}

PadicResidue template_rhs_mod(const ExpansionTemplate& tpl, std::uint64_t p) {
  tpl.validate();
  return template_value(tpl, p, tpl.modulus_power);
}

// ---------------------------------------------------------------------------
// Verification

std::size_t CongruenceReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}

std::size_t CongruenceReport::errored() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return r.error.has_value(); }));
}

std::size_t CongruenceReport::failed() const { return records.size() - passed() - errored(); }

CongruenceRecord compare_at_prime(const ExpansionTemplate& tpl, std::uint64_t p,
                                  const PadicResidue& lhs) {
  const int M = tpl.modulus_power;
  CongruenceRecord rec;
  rec.p = p;
  rec.lhs = lhs.residue(M);
  rec.rhs = template_value(tpl, p, M).residue(M);
  rec.pass = rec.lhs == rec.rhs;
  if (!rec.pass) rec.defect_valuation = valuation(BigInt(rec.lhs - rec.rhs), p);
  return rec;
}

std::vector<std::uint64_t> admissible_primes(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                                             std::uint64_t lo, std::uint64_t hi,
                                             const std::vector<std::uint64_t>& exclude) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_in_range(lo, hi)) {
    if (std::find(exclude.begin(), exclude.end(), p) != exclude.end()) continue;
    if (bad_prime_reason(spec, p)) continue;
    const bool bad = std::any_of(tpl.terms.begin(), tpl.terms.end(), [p](const TemplateTerm& t) {
      return !t.constant.structurally_zero() && t.constant.bad_prime(p);
    });
    if (!bad) out.push_back(p);
  }
  return out;
}

CongruenceReport verify_congruence(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                                   const std::vector<std::uint64_t>& primes) {
  spec.validate();
  tpl.validate();
  if (!tpl.fully_known()) {
    throw Error(ErrorCode::UnknownCoefficient, "verification needs a fully known template");
  }
  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  CongruenceReport report;
  report.modulus_power = tpl.modulus_power;
  report.records.resize(sorted.size());
  parallel_for(sorted.size(), [&](std::size_t i) {
    const std::uint64_t p = sorted[i];
    CongruenceRecord& rec = report.records[i];
    rec.p = p;
    try {
      rec = compare_at_prime(tpl, p, truncated_sum_mod(spec, p, tpl.modulus_power));
    } catch (const Error& e) {
      rec.p = p;
      rec.pass = false;
      rec.error = e.what();
    }
  });
  return report;
}

// ---------------------------------------------------------------------------
// Fitting

namespace {

struct PrimeClass {
  std::uint64_t p;
  ResidueClass cls;
};

enum class ReconstructionStatus { Found, NoCandidate, Inconsistent };

struct ReconstructionOutcome {
  ReconstructionStatus status = ReconstructionStatus::NoCandidate;
  Rational value;
};

bool agrees(const Rational& r, const PrimeClass& c) {
  if (mpz_divisible_ui_p(r.den().get_mpz_t(), static_cast<unsigned long>(c.p))) return true;
  return reduce_mod(r, c.cls.modulus) == c.cls.value;
}

// Reconstructs from the shortest prefix whose answer agrees with every later
// class; at least a quarter of the classes (and two) are kept for checking.
// Primes dividing the recovered denominator are dropped and the search rerun.
ReconstructionOutcome reconstruct_consistent(std::vector<PrimeClass> classes) {
  for (;;) {
    const std::size_t n = classes.size();
    const std::size_t check = std::max<std::size_t>(2, n / 4);
    if (n <= check) return {};
    bool any_candidate = false;
    std::vector<ResidueClass> prefix;
    for (std::size_t k = 0; k < n - check; ++k) {
      prefix.push_back(classes[k].cls);
      const auto r = rational_reconstruct(crt_combine(prefix));
      if (!r) continue;
      any_candidate = true;
      if (!std::all_of(classes.begin() + static_cast<long>(k) + 1, classes.end(),
                       [&](const PrimeClass& c) { return agrees(*r, c); })) {
        continue;
      }
      // Retroactive exclusion of primes dividing the denominator.
      const auto divides = [&](const PrimeClass& c) {
        return mpz_divisible_ui_p(r->den().get_mpz_t(), static_cast<unsigned long>(c.p)) != 0;
      };
      if (std::any_of(classes.begin(), classes.end(), divides)) {
        classes.erase(std::remove_if(classes.begin(), classes.end(), divides), classes.end());
        break;
      }
      return {ReconstructionStatus::Found, *r};
    }
    if (classes.size() == n) {
      return {any_candidate ? ReconstructionStatus::Inconsistent : ReconstructionStatus::NoCandidate,
              Rational(0)};
    }
  }
}

BigInt pow_p(std::uint64_t p, int e) { return prime_power(p, static_cast<unsigned long>(e)); }

}  // namespace

FitResult fit_from_sums(const ExpansionTemplate& tpl, const std::vector<PrimeSum>& sums_in) {
  tpl.validate();
  const int M = tpl.modulus_power;
  FitResult result;

  for (const TemplateTerm& t : tpl.terms) {
    result.structurally_zero.push_back(t.constant.structurally_zero());
  }

  std::vector<PrimeSum> sums;
  for (const PrimeSum& s : sums_in) {
    try {
      check_prime_for_template(tpl, s.p);
      s.sum.residue(M);
      sums.push_back(s);
    } catch (const Error&) {
      result.skipped_primes.push_back(s.p);
    }
  }
  std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  if (sums.size() < 5) {
    throw Error(ErrorCode::ReconstructionFailed,
                "need at least 5 usable primes, have " + std::to_string(sums.size()));
  }
  const std::size_t holdout = (sums.size() + 4) / 5;
  const std::vector<PrimeSum> held(sums.end() - static_cast<long>(holdout), sums.end());
  sums.resize(sums.size() - holdout);
  for (const auto& s : sums) result.fit_primes.push_back(s.p);
  for (const auto& s : held) result.holdout_primes.push_back(s.p);

  ExpansionTemplate work = tpl;
  for (TemplateTerm& t : work.terms) {
    if (t.constant.structurally_zero() && !t.coefficient) t.coefficient = Rational(0);
  }

  // partial[j] = Σ of already determined terms at sums[j].p.
  std::vector<PadicResidue> partial;
  for (const auto& s : sums) partial.push_back(PadicResidue::exact_zero(s.p));
  std::vector<bool> usable(sums.size(), true);

  for (std::size_t i = 0; i < work.terms.size(); ++i) {
    TemplateTerm& term = work.terms[i];
    const int e = term.exponent;
    const int next = i + 1 < work.terms.size() ? work.terms[i + 1].exponent : M;
    const int width = next - e;

    if (!term.coefficient) {
      std::vector<PrimeClass> classes(sums.size(), PrimeClass{0, ResidueClass()});
      std::vector<int> status(sums.size(), 0);  // 0 ok, 1 skip, 2 inconsistent
      parallel_for(sums.size(), [&](std::size_t j) {
        if (!usable[j]) {
          status[j] = 1;
          return;
        }
        const std::uint64_t p = sums[j].p;
        const PadicResidue residual = padic_sub(sums[j].sum, partial[j]).truncated(M);
        const BigInt R = residual.residue(M);
        const BigInt pe = pow_p(p, e);
        if (mod(R, pe) != 0) {
          status[j] = 2;
          return;
        }
        const std::uint64_t c = term.constant.value_mod_p(p);
        if (c == 0) {
          status[j] = 1;
          return;
        }
        const BigInt pw = pow_p(p, width);
        BigInt cval = term.constant.mod_p_only() ? BigInt(static_cast<unsigned long>(c))
                                                 : (c == 1 ? BigInt(1) : BigInt(-1));
        const BigInt digit = mod(BigInt(R / pe), pw);
        classes[j] = PrimeClass{p, ResidueClass(mod(digit * mod_inverse(cval, pw), pw), pw)};
      });
      std::vector<PrimeClass> good;
      std::vector<std::uint64_t> inconsistent;
      for (std::size_t j = 0; j < sums.size(); ++j) {
        if (status[j] == 0) good.push_back(classes[j]);
        if (status[j] == 2) inconsistent.push_back(sums[j].p);
      }
      if (!inconsistent.empty()) {
        throw Error(ErrorCode::InconsistentResidues,
                    "S_p minus earlier terms is not divisible by p^" + std::to_string(e) +
                        " at p = " + std::to_string(inconsistent.front()));
      }
      const ReconstructionOutcome out = reconstruct_consistent(good);
      if (out.status == ReconstructionStatus::NoCandidate) {
        throw Error(ErrorCode::ReconstructionFailed,
                    "no small rational for the coefficient of " + term.constant.to_string() +
                        " p^" + std::to_string(e) + "; add primes");
      }
      if (out.status == ReconstructionStatus::Inconsistent) {
        throw Error(ErrorCode::InconsistentResidues,
                    "no single rational fits the coefficient of " + term.constant.to_string() +
                        " p^" + std::to_string(e));
      }
      term.coefficient = out.value;
    }

    for (std::size_t j = 0; j < sums.size(); ++j) {
      if (!usable[j]) continue;
      const std::uint64_t p = sums[j].p;
      if (mpz_divisible_ui_p(term.coefficient->den().get_mpz_t(), static_cast<unsigned long>(p))) {
        usable[j] = false;
        continue;
      }
      partial[j] = padic_add(partial[j], term_value(term, p, M));
    }
  }

  for (const TemplateTerm& t : work.terms) result.coefficients.push_back(*t.coefficient);
  result.completed = work;

  result.holdout.modulus_power = M;
  for (const PrimeSum& s : held) {
    try {
      result.holdout.records.push_back(compare_at_prime(work, s.p, s.sum));
    } catch (const Error& e) {
      CongruenceRecord rec;
      rec.p = s.p;
      rec.error = e.what();
      result.holdout.records.push_back(rec);
    }
  }
  return result;
}

FitResult fit_unknowns(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                       const std::vector<std::uint64_t>& primes) {
  spec.validate();
  tpl.validate();
  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::optional<PrimeSum>> computed(sorted.size());
  parallel_for(sorted.size(), [&](std::size_t i) {
    const std::uint64_t p = sorted[i];
    try {
      check_prime_for_template(tpl, p);
      computed[i] = PrimeSum{p, truncated_sum_mod(spec, p, tpl.modulus_power)};
    } catch (const Error&) {
    }
  });
  std::vector<PrimeSum> sums;
  std::vector<std::uint64_t> skipped;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (computed[i]) {
      sums.push_back(*computed[i]);
    } else {
      skipped.push_back(sorted[i]);
    }
  }
  FitResult result = fit_from_sums(tpl, sums);
  result.skipped_primes.insert(result.skipped_primes.end(), skipped.begin(), skipped.end());
  std::sort(result.skipped_primes.begin(), result.skipped_primes.end());
  return result;
}

// ---------------------------------------------------------------------------
// Scanning

ScanReport scan_next_term(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                          const std::vector<std::uint64_t>& primes,
                          const std::vector<TemplateConstant>& candidates,
                          std::optional<int> probe_exponent) {
  spec.validate();
  tpl.validate();
  if (!tpl.fully_known()) {
    throw Error(ErrorCode::UnknownCoefficient, "scan needs a fully known template");
  }
  const int e = probe_exponent.value_or(tpl.modulus_power);
  if (e < 0 || e > 32) throw Error(ErrorCode::InvalidArgument, "probe exponent out of range");

  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  struct Slot {
    std::optional<std::uint64_t> digit;
    bool below = false;
    std::optional<std::string> error;
  };
  std::vector<Slot> slots(sorted.size());
  parallel_for(sorted.size(), [&](std::size_t i) {
    const std::uint64_t p = sorted[i];
    try {
      const PadicResidue lhs = truncated_sum_mod(spec, p, e + 1);
      const PadicResidue rhs = template_value(tpl, p, e + 1);
      const BigInt diff = mod(BigInt(lhs.residue(e + 1) - rhs.residue(e + 1)), pow_p(p, e + 1));
      const BigInt pe = pow_p(p, e);
      if (diff % pe != 0) {
        slots[i].below = true;
        return;
      }
      slots[i].digit = BigInt(diff / pe).get_ui();
    } catch (const Error& err) {
      slots[i].error = err.what();
    }
  });

  ScanReport report;
  report.probe_exponent = e;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (slots[i].error) report.errors.emplace_back(sorted[i], *slots[i].error);
    if (slots[i].below) report.below_probe.push_back(sorted[i]);
    if (slots[i].digit) report.digits.emplace_back(sorted[i], *slots[i].digit);
  }
  report.all_digits_zero =
      !report.digits.empty() &&
      std::all_of(report.digits.begin(), report.digits.end(), [](const auto& d) { return d.second == 0; });

  for (const TemplateConstant& c : candidates) {
    ScanCandidate cand;
    cand.constant = c;
    if (!report.below_probe.empty()) {
      cand.note = "template does not hold to p^" + std::to_string(e) + " at every prime";
      report.candidates.push_back(cand);
      continue;
    }
    std::vector<PrimeClass> classes;
    for (const auto& [p, digit] : report.digits) {
      std::uint64_t cp = 0;
      try {
        if (c.bad_prime(p)) continue;
        cp = c.value_mod_p(p);
      } catch (const Error&) {
        continue;
      }
      if (cp == 0) continue;
      cand.primes_used.push_back(p);
      const BigInt pm(static_cast<unsigned long>(p));
      classes.push_back(
          {p, ResidueClass(BigInt(static_cast<unsigned long>(mulmod(digit, invmod(cp, p), p))), pm)});
    }
    const ReconstructionOutcome out = reconstruct_consistent(classes);
    if (out.status == ReconstructionStatus::Found) {
      cand.coefficient = out.value;
      cand.consistent = true;
      cand.note = out.value.is_zero() ? "digits vanish" : "consistent across primes";
    } else if (classes.size() < 3) {
      cand.note = "too few usable primes";
    } else {
      cand.note = "no consistent small rational";
    }
    report.candidates.push_back(cand);
  }
  return report;
}

}  // namespace padicrama
