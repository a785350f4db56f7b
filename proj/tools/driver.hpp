#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace padicrama::cli {

enum class Command { SumCheck, Expand, Congruence, Fit, Scan };
enum class Format { Text, Json, Csv };

struct RunConfig {
  Command command = Command::SumCheck;
  std::string spec_path;
  std::optional<std::string> template_path;
  std::uint64_t prime_lo = 5;
  std::uint64_t prime_hi = 199;
  std::vector<std::uint64_t> exclusions;
  unsigned order = 5;
  long precision_bits = 256;
  std::optional<int> mod_power;  // overrides the template's
  Format format = Format::Text;
  std::optional<std::string> output_path;

  // expand
  std::optional<std::string> claims_path;
  std::vector<std::string> recognize_basis;  // constant monomials
  std::string height = "1000000";
  std::string scale = "1";

  // scan
  std::vector<std::string> candidates;  // "one", "kron(D)", "zeta_p(k)", "l_p(D,k)"
  std::optional<int> probe_exponent;

  /// Throws InvariantViolation.
  void validate() const;
};

/// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kMathFailure = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kPrecisionError = 3;

/// Runs one command. The report goes to `out` (or config.output_path);
/// diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "a..b" → (a, b).
std::pair<std::uint64_t, std::uint64_t> parse_prime_range(const std::string& text);

}  // namespace padicrama::cli
