#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicrama/padic.hpp"
#include "padicrama/rational.hpp"
#include "padicrama/series.hpp"

namespace padicrama {

/// p-adic basis constants: 1, (D/p), ζ_p(k), L_{D,p}(k).
struct TemplateConstant {
  enum class Kind { One, Kron, ZetaP, LQp };

  Kind kind = Kind::One;
  long d = 0;
  unsigned k = 0;

  static TemplateConstant one() { return {}; }
  static TemplateConstant kron(long D) { return {Kind::Kron, D, 0}; }
  static TemplateConstant zeta_p(unsigned k) { return {Kind::ZetaP, 0, k}; }
  static TemplateConstant l_p(long D, unsigned k) { return {Kind::LQp, D, k}; }

  /// Only known mod p (ζ_p and L_p values).
  bool mod_p_only() const { return kind == Kind::ZetaP || kind == Kind::LQp; }
  /// Vanishes for every admissible p by parity (ζ_p(even), L_{D,p}(k) with χ_D(-1) = (-1)^k).
  bool structurally_zero() const;
  /// Smallest prime at which the value is available.
  std::uint64_t min_prime() const;
  /// True when p divides the discriminant carried by the constant.
  bool bad_prime(std::uint64_t p) const;
  /// Value mod p (for Kron, the exact ±1/0 as a residue).
  std::uint64_t value_mod_p(std::uint64_t p) const;
  /// As a p-adic number: Kron exact, ζ_p / L_p to relative precision 1.
  PadicResidue value(std::uint64_t p) const;

  std::string to_string() const;
  friend bool operator==(const TemplateConstant&, const TemplateConstant&) = default;
};

struct TemplateTerm {
  int exponent = 0;
  TemplateConstant constant;
  std::optional<Rational> coefficient;  // empty = unknown

  friend bool operator==(const TemplateTerm&, const TemplateTerm&) = default;
};

/// Σ r_i c_i(p) p^{e_i} (mod p^M).
struct ExpansionTemplate {
  std::vector<TemplateTerm> terms;
  int modulus_power = 1;

  /// Throws InvariantViolation.
  void validate() const;
  bool fully_known() const;
  /// Copy without structurally-zero terms.
  ExpansionTemplate without_structural_zeros() const;

  friend bool operator==(const ExpansionTemplate&, const ExpansionTemplate&) = default;
};

/// Σ r_i c_i(p) p^{e_i} with absolute precision M.
PadicResidue template_rhs_mod(const ExpansionTemplate& tpl, std::uint64_t p);
/// Same sum to a chosen absolute precision. Throws PrecisionUnavailable when a
/// mod-p-only constant would be needed beyond its first digit.
PadicResidue template_value(const ExpansionTemplate& tpl, std::uint64_t p, int absolute_precision);

struct CongruenceRecord {
  std::uint64_t p = 0;
  BigInt lhs;
  BigInt rhs;
  bool pass = false;
  std::optional<int> defect_valuation;  // ν_p(lhs − rhs) when failing
  std::optional<std::string> error;
};

struct CongruenceReport {
  int modulus_power = 0;
  std::vector<CongruenceRecord> records;  // sorted by p

  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t errored() const;
  bool all_pass() const { return !records.empty() && passed() == records.size(); }
};

/// Compares a precomputed left side against the template at p.
CongruenceRecord compare_at_prime(const ExpansionTemplate& tpl, std::uint64_t p,
                                  const PadicResidue& lhs);

/// Primes in [lo, hi] usable for both spec and template (BadPrime-free),
/// minus the explicit exclusions.
std::vector<std::uint64_t> admissible_primes(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                                             std::uint64_t lo, std::uint64_t hi,
                                             const std::vector<std::uint64_t>& exclude = {});

/// Per-prime errors are recorded, not thrown. Work fans out over
/// PADIC_RAMA_THREADS workers.
CongruenceReport verify_congruence(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                                   const std::vector<std::uint64_t>& primes);

struct FitResult {
  std::vector<Rational> coefficients;  // one per template term, structural zeros as 0
  std::vector<bool> structurally_zero;
  std::vector<std::uint64_t> fit_primes;
  std::vector<std::uint64_t> skipped_primes;  // unusable for this template or series
  std::vector<std::uint64_t> holdout_primes;
  CongruenceReport holdout;
  ExpansionTemplate completed;

  bool holdout_pass() const { return holdout.all_pass(); }
};

/// Peels unknown coefficients one exponent at a time: per-prime residues,
/// CRT, rational reconstruction. The top 20% of primes are held out and
/// checked with the completed template. Throws ReconstructionFailed or
/// InconsistentResidues.
FitResult fit_unknowns(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                       const std::vector<std::uint64_t>& primes);

struct PrimeSum {
  std::uint64_t p = 0;
  PadicResidue sum = PadicResidue::exact_zero(2);
};

/// The same fit on caller-supplied left sides (one per prime).
FitResult fit_from_sums(const ExpansionTemplate& tpl, const std::vector<PrimeSum>& sums);

struct ScanCandidate {
  TemplateConstant constant;
  std::optional<Rational> coefficient;
  bool consistent = false;
  std::vector<std::uint64_t> primes_used;
  std::string note;
};

struct ScanReport {
  int probe_exponent = 0;
  /// Primes where S_p − template is not ≡ 0 mod p^probe_exponent.
  std::vector<std::uint64_t> below_probe;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> digits;  // (p, D_p mod p)
  bool all_digits_zero = false;
  std::vector<std::pair<std::uint64_t, std::string>> errors;  // primes with no digit
  std::vector<ScanCandidate> candidates;
};

/// D_p = (S_p − template) / p^e mod p with e = probe_exponent (defaults to
/// the template's modulus power); tests each candidate for a single rational
/// r with D_p ≡ r c(p) across all primes.
ScanReport scan_next_term(const SeriesSpec& spec, const ExpansionTemplate& tpl,
                          const std::vector<std::uint64_t>& primes,
                          const std::vector<TemplateConstant>& candidates,
                          std::optional<int> probe_exponent = std::nullopt);

}  // namespace padicrama
