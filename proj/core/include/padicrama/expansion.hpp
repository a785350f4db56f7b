#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicrama/constants.hpp"
#include "padicrama/rational.hpp"
#include "padicrama/series.hpp"
#include "padicrama/truncated_series.hpp"

namespace padicrama {

struct ExpansionOptions {
  /// Sum exactly this many terms instead of the automatic tail rule.
  std::optional<std::uint64_t> terms;
};

/// Taylor coefficients in x of
///   Σ_n multiplier · Π (a)_{n+x} / Π (b)_{n+x} · sign^n · base^{n+x} · P(n+x) / (α(n+x)+β)
/// with (a)_{n+x} = Γ(a+n+x)/Γ(a). The Γ-ratio prefactor comes from digamma
/// and Hurwitz values; the n-sum is built by linear-factor updates.
TruncatedSeries shifted_expansion(const SeriesSpec& spec, unsigned order, long precision_bits,
                                  const ExpansionOptions& options = {});

/// One claimed summand coefficient · constant at x^order.
struct ExpansionClaim {
  unsigned order = 0;
  Rational coefficient;
  ConstantMonomial constant;
};

struct ExpansionClaims {
  Rational scale{1};  // applied to the computed series before comparison
  unsigned order = 0;
  std::vector<ExpansionClaim> claims;
};

struct ExpansionCheck {
  unsigned order = 0;
  std::string claimed_text;  // "0" for orders with no claim
  Real computed{64};
  Real claimed{64};
  Real defect{64};
  Real tolerance{64};
  bool pass = false;
};

struct ExpansionReport {
  long precision_bits = 0;
  Real error_bound{64};
  std::vector<ExpansionCheck> checks;

  bool all_pass() const;
};

/// Compares every order 0..K against the claims (unclaimed orders must be
/// zero). Precision doubles, up to 4 times, while the series error bound
/// exceeds the tolerance floor.
ExpansionReport verify_expansion(const SeriesSpec& spec, const ExpansionClaims& claims,
                                 long precision_bits);

}  // namespace padicrama
