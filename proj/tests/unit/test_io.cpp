#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "padicrama/error.hpp"
#include "padicrama/io.hpp"
#include "support.hpp"

namespace padicrama {
namespace {

using test::data_path;

const char* kSeries[] = {"eq2", "eq6", "eq9", "gourevitch", "eq15"};
const char* kTemplates[] = {"eq5",           "eq5-unknowns", "eq8",         "eq8-unknowns",
                            "eq12",          "eq12-p5",      "eq11-unknowns", "eq14",
                            "eq14-unknowns", "eq16",         "eq16-unknowns"};
const char* kClaims[] = {"eq3-claims", "eq7-claims", "eq10-claims", "eq13-claims", "eq15-claims"};

std::string series_text(const std::string& name) {
  return read_text_file(data_path("series/" + name + ".json"));
}

std::string expect_error(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error raised";
  return {};
}

TEST(Io, QuinticHalfFixture) {
  const SeriesSpec s = load_series(data_path("series/eq2.json"));
  EXPECT_EQ(s.upper, std::vector<Rational>(5, Rational(BigInt(1), BigInt(2))));
  EXPECT_EQ(s.lower, std::vector<Rational>(5, Rational(1)));
  EXPECT_EQ(s.sign, -1);
  EXPECT_EQ(s.base, Rational(BigInt(1), BigInt(4)));
  EXPECT_EQ(s.poly, (std::vector<Rational>{Rational(1), Rational(8), Rational(20)}));
  EXPECT_FALSE(s.denom_linear.has_value());
  EXPECT_EQ(s.rhs.coefficient, Rational(8));
  EXPECT_EQ(s.rhs.pi_exponent, 2u);
}

TEST(Io, SeriesRoundTrip) {
  for (const char* name : kSeries) {
    const SeriesSpec s = load_series(data_path(std::string("series/") + name + ".json"));
    const std::string once = serialize_series(s);
    EXPECT_EQ(parse_series(once), s) << name;
    EXPECT_EQ(serialize_series(parse_series(once)), once) << name;
  }
}

TEST(Io, TemplateRoundTrip) {
  for (const char* name : kTemplates) {
    const auto t = load_template(data_path(std::string("templates/") + name + ".json"));
    const std::string once = serialize_template(t);
    EXPECT_EQ(parse_template(once), t) << name;
    EXPECT_EQ(serialize_template(parse_template(once)), once) << name;
  }
}

TEST(Io, ClaimsRoundTrip) {
  for (const char* name : kClaims) {
    const auto c = load_claims(data_path(std::string("claims/") + name + ".json"));
    EXPECT_FALSE(c.claims.empty()) << name;
    const std::string once = serialize_claims(c);
    EXPECT_EQ(serialize_claims(parse_claims(once)), once) << name;
  }
}

TEST(Io, UnknownCoefficients) {
  const auto t = load_template(data_path("templates/eq5-unknowns.json"));
  EXPECT_FALSE(t.fully_known());
  for (const auto& term : t.terms) EXPECT_FALSE(term.coefficient.has_value());
}

TEST(Io, BaseAboveOneViolatesInvariant) {
  auto doc = nlohmann::json::parse(series_text("eq2"));
  doc["base"] = "5/4";
  expect_error(ErrorCode::InvariantViolation, [&] { parse_series(doc.dump()); });
}

TEST(Io, RepeatedExponentViolatesInvariant) {
  const std::string text = R"({"mod_power": 6, "terms": [
    {"exponent": 2, "constant": "one", "coefficient": "1"},
    {"exponent": 2, "constant": {"zeta_p": 3}, "coefficient": "-7/2"}]})";
  expect_error(ErrorCode::InvariantViolation, [&] { parse_template(text); });
}

TEST(Io, MalformedJsonReportsLine) {
  const std::string text = "{\n  \"name\": \"x\",\n  \"upper\": [1/2]\n}\n";
  const std::string msg = expect_error(ErrorCode::SchemaError, [&] { parse_series(text); });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Io, SchemaErrorsNameTheField) {
  auto doc = nlohmann::json::parse(series_text("eq2"));
  doc.erase("poly");
  EXPECT_NE(expect_error(ErrorCode::SchemaError, [&] { parse_series(doc.dump()); }).find("$.poly"),
            std::string::npos);

  doc = nlohmann::json::parse(series_text("eq2"));
  doc["rhs"]["pi_exponent"] = "two";
  EXPECT_NE(expect_error(ErrorCode::SchemaError, [&] { parse_series(doc.dump()); })
                .find("$.rhs.pi_exponent"),
            std::string::npos);

  doc = nlohmann::json::parse(series_text("eq2"));
  doc["upper"][3] = "1/0";
  EXPECT_NE(expect_error(ErrorCode::SchemaError, [&] { parse_series(doc.dump()); }).find("$.upper[3]"),
            std::string::npos);

  const std::string tpl = R"({"mod_power": 4, "terms": [{"exponent": 0, "constant": {"zeta": 3}, "coefficient": 1}]})";
  EXPECT_NE(expect_error(ErrorCode::SchemaError, [&] { parse_template(tpl); }).find("$.terms[0].constant"),
            std::string::npos);
}

TEST(Io, ClaimsConstantsAsStringOrList) {
  const std::string a = R"({"order": 2, "claims": [{"order": 2, "coefficient": "-4", "constant": "pi^-2"}]})";
  const std::string b = R"({"order": 2, "claims": [{"order": 2, "coefficient": "-4", "constant": ["pi^-2"]}]})";
  EXPECT_EQ(serialize_claims(parse_claims(a)), serialize_claims(parse_claims(b)));
  const auto c = parse_claims(a);
  EXPECT_EQ(c.scale, Rational(1));

  const std::string bad = R"({"order": 2, "claims": [{"order": 3, "coefficient": "1", "constant": "pi"}]})";
  expect_error(ErrorCode::SchemaError, [&] { parse_claims(bad); });
}

TEST(Io, MissingFile) {
  expect_error(ErrorCode::InvalidArgument, [] { load_series(data_path("series/none.json")); });
}

}  // namespace
}  // namespace padicrama
