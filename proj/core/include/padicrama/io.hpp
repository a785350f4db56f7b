#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "padicrama/congruence.hpp"
#include "padicrama/expansion.hpp"
#include "padicrama/series.hpp"

namespace padicrama {

// JSON formats for series specs, templates and expansion claims. Rationals are
// "num/den" strings (bare integers are accepted on input). Parse errors throw
// SchemaError naming the line or field; domain invariants throw
// InvariantViolation.

SeriesSpec parse_series(std::string_view json_text);
SeriesSpec load_series(const std::filesystem::path& file);
std::string serialize_series(const SeriesSpec& spec);

/// Template terms: {"exponent": e, "constant": "one" | {"kron": D} |
/// {"zeta_p": k} | {"l_p": [D, k]}, "coefficient": "a/b" | "?"}.
ExpansionTemplate parse_template(std::string_view json_text);
ExpansionTemplate load_template(const std::filesystem::path& file);
std::string serialize_template(const ExpansionTemplate& tpl);

/// {"scale": rat, "order": K, "claims": [{"order": j, "coefficient": rat,
///  "constant": "zeta(3)*pi^-2" | ["zeta(3)", "pi^-2"]}]}.
ExpansionClaims parse_claims(std::string_view json_text);
ExpansionClaims load_claims(const std::filesystem::path& file);
std::string serialize_claims(const ExpansionClaims& claims);

std::string read_text_file(const std::filesystem::path& file);

}  // namespace padicrama
