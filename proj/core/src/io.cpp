#include "padicrama/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "padicrama/error.hpp"

namespace padicrama {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::SchemaError, field + ": " + what);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Byte offset to line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line) + ": malformed JSON (" +
                                            std::string(e.what()) + ")");
  }
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing field");
  return *it;
}

Rational to_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(BigInt(v.dump()));
  if (!v.is_string()) schema_error(path, "expected a rational string \"num/den\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
}

long to_long(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<long>();
}

std::vector<Rational> to_rationals(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(to_rational(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json rationals_json(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const Rational& x : xs) a.push_back(x.to_string());
  return a;
}

TemplateConstant to_constant(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() == "one") return TemplateConstant::one();
    schema_error(path, "unknown constant \"" + v.get<std::string>() + "\"");
  }
  if (!v.is_object() || v.size() != 1) schema_error(path, "expected \"one\" or a one-key object");
  const auto& [key, val] = *v.items().begin();
  const std::string sub = path + "." + key;
  if (key == "kron") return TemplateConstant::kron(to_long(val, sub));
  if (key == "zeta_p") {
    const long k = to_long(val, sub);
    if (k < 0) schema_error(sub, "k must be non-negative");
    return TemplateConstant::zeta_p(static_cast<unsigned>(k));
  }
  if (key == "l_p") {
    if (!val.is_array() || val.size() != 2) schema_error(sub, "expected [D, k]");
    const long k = to_long(val[1], sub + "[1]");
    if (k < 0) schema_error(sub + "[1]", "k must be non-negative");
    return TemplateConstant::l_p(to_long(val[0], sub + "[0]"), static_cast<unsigned>(k));
  }
  schema_error(path, "unknown constant kind \"" + key + "\"");
}

json constant_json(const TemplateConstant& c) {
  switch (c.kind) {
    case TemplateConstant::Kind::One:
      return "one";
    case TemplateConstant::Kind::Kron:
      return json{{"kron", c.d}};
    case TemplateConstant::Kind::ZetaP:
      return json{{"zeta_p", c.k}};
    case TemplateConstant::Kind::LQp:
      return json{{"l_p", json::array({c.d, c.k})}};
  }
  return nullptr;
}

ConstantMonomial to_monomial(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_monomial(v.get<std::string>());
    if (v.is_array()) {
      ConstantMonomial m;
      for (const json& t : v) {
        if (!t.is_string()) schema_error(path, "constant tags must be strings");
        m.push_back(ConstantTag::parse(t.get<std::string>()));
      }
      return m;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema_error(path, e.what());
  }
  schema_error(path, "expected a constant string or list of tags");
}

}  // namespace

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SeriesSpec parse_series(std::string_view text) {
  const json doc = parse_document(text);
  SeriesSpec s;
  const json& name = field(doc, "$", "name");
  if (!name.is_string()) schema_error("$.name", "expected a string");
  s.name = name.get<std::string>();
  s.upper = to_rationals(field(doc, "$", "upper"), "$.upper");
  s.lower = to_rationals(field(doc, "$", "lower"), "$.lower");
  s.sign = static_cast<int>(to_long(field(doc, "$", "sign"), "$.sign"));
  s.base = to_rational(field(doc, "$", "base"), "$.base");
  s.poly = to_rationals(field(doc, "$", "poly"), "$.poly");
  if (auto it = doc.find("denom_linear"); it != doc.end() && !it->is_null()) {
    const auto ab = to_rationals(*it, "$.denom_linear");
    if (ab.size() != 2) schema_error("$.denom_linear", "expected [alpha, beta] or null");
    s.denom_linear = std::make_pair(ab[0], ab[1]);
  }
  if (auto it = doc.find("multiplier"); it != doc.end()) s.multiplier = to_rational(*it, "$.multiplier");
  const json& rhs = field(doc, "$", "rhs");
  s.rhs.coefficient = to_rational(field(rhs, "$.rhs", "coefficient"), "$.rhs.coefficient");
  s.rhs.sqrt_disc = to_long(field(rhs, "$.rhs", "sqrt_disc"), "$.rhs.sqrt_disc");
  const long pe = to_long(field(rhs, "$.rhs", "pi_exponent"), "$.rhs.pi_exponent");
  if (pe < 0) schema_error("$.rhs.pi_exponent", "must be non-negative");
  s.rhs.pi_exponent = static_cast<unsigned>(pe);
  s.validate();
  return s;
}

SeriesSpec load_series(const std::filesystem::path& file) { return parse_series(read_text_file(file)); }

std::string serialize_series(const SeriesSpec& s) {
  json doc;
  doc["name"] = s.name;
  doc["upper"] = rationals_json(s.upper);
  doc["lower"] = rationals_json(s.lower);
  doc["sign"] = s.sign;
  doc["base"] = s.base.to_string();
  doc["poly"] = rationals_json(s.poly);
  doc["denom_linear"] = s.denom_linear
                            ? rationals_json({s.denom_linear->first, s.denom_linear->second})
                            : json(nullptr);
  doc["multiplier"] = s.multiplier.to_string();
  doc["rhs"] = json{{"coefficient", s.rhs.coefficient.to_string()},
                    {"sqrt_disc", s.rhs.sqrt_disc},
                    {"pi_exponent", s.rhs.pi_exponent}};
  return doc.dump(2) + "\n";
}

ExpansionTemplate parse_template(std::string_view text) {
  const json doc = parse_document(text);
  ExpansionTemplate tpl;
  tpl.modulus_power = static_cast<int>(to_long(field(doc, "$", "mod_power"), "$.mod_power"));
  const json& terms = field(doc, "$", "terms");
  if (!terms.is_array()) schema_error("$.terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = "$.terms[" + std::to_string(i) + "]";
    TemplateTerm t;
    t.exponent = static_cast<int>(to_long(field(terms[i], path, "exponent"), path + ".exponent"));
    t.constant = to_constant(field(terms[i], path, "constant"), path + ".constant");
    const json& c = field(terms[i], path, "coefficient");
    if (!(c.is_string() && c.get<std::string>() == "?")) {
      t.coefficient = to_rational(c, path + ".coefficient");
    }
    tpl.terms.push_back(t);
  }
  tpl.validate();
  return tpl;
}

ExpansionTemplate load_template(const std::filesystem::path& file) {
  return parse_template(read_text_file(file));
}

std::string serialize_template(const ExpansionTemplate& tpl) {
  json doc;
  doc["mod_power"] = tpl.modulus_power;
  doc["terms"] = json::array();
  for (const TemplateTerm& t : tpl.terms) {
    doc["terms"].push_back(json{{"exponent", t.exponent},
                                {"constant", constant_json(t.constant)},
                                {"coefficient", t.coefficient ? t.coefficient->to_string() : "?"}});
  }
  return doc.dump(2) + "\n";
}

ExpansionClaims parse_claims(std::string_view text) {
  const json doc = parse_document(text);
  ExpansionClaims out;
  if (auto it = doc.find("scale"); it != doc.end()) out.scale = to_rational(*it, "$.scale");
  const long order = to_long(field(doc, "$", "order"), "$.order");
  if (order < 0 || order > 16) schema_error("$.order", "must lie in 0..16");
  out.order = static_cast<unsigned>(order);
  const json& claims = field(doc, "$", "claims");
  if (!claims.is_array()) schema_error("$.claims", "expected an array");
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const std::string path = "$.claims[" + std::to_string(i) + "]";
    ExpansionClaim c;
    const long j = to_long(field(claims[i], path, "order"), path + ".order");
    if (j < 0 || j > order) schema_error(path + ".order", "outside 0..order");
    c.order = static_cast<unsigned>(j);
    c.coefficient = to_rational(field(claims[i], path, "coefficient"), path + ".coefficient");
    c.constant = to_monomial(field(claims[i], path, "constant"), path + ".constant");
    out.claims.push_back(c);
  }
  return out;
}

ExpansionClaims load_claims(const std::filesystem::path& file) {
  return parse_claims(read_text_file(file));
}

std::string serialize_claims(const ExpansionClaims& claims) {
  json doc;
  doc["scale"] = claims.scale.to_string();
  doc["order"] = claims.order;
  doc["claims"] = json::array();
  for (const ExpansionClaim& c : claims.claims) {
    doc["claims"].push_back(json{{"order", c.order},
                                 {"coefficient", c.coefficient.to_string()},
                                 {"constant", to_string(c.constant)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace padicrama
