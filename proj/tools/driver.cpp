#include "driver.hpp"

#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <regex>
#include <sstream>

#include "padicrama/congruence.hpp"
#include "padicrama/error.hpp"
#include "padicrama/expansion.hpp"
#include "padicrama/io.hpp"
#include "padicrama/modular.hpp"
#include "padicrama/relation.hpp"
#include "padicrama/series.hpp"

namespace padicrama::cli {

namespace {

using json = nlohmann::ordered_json;

const char* command_name(Command c) {
  switch (c) {
    case Command::SumCheck:
      return "sum-check";
    case Command::Expand:
      return "expand";
    case Command::Congruence:
      return "congruence";
    case Command::Fit:
      return "fit";
    case Command::Scan:
      return "scan";
  }
  return "?";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionUnavailable:
    case ErrorCode::GuardExhausted:
    case ErrorCode::InsufficientPrecision:
      return kPrecisionError;
    case ErrorCode::SchemaError:
    case ErrorCode::InvariantViolation:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownCoefficient:
    case ErrorCode::BadPrime:
      return kUsageError;
    default:
      return kMathFailure;
  }
}

TemplateConstant parse_candidate(const std::string& text) {
  static const std::regex kron(R"(kron\((-?\d+)\))");
  static const std::regex zeta(R"(zeta_p\((\d+)\))");
  static const std::regex lp(R"(l_p\((-?\d+),\s*(\d+)\))");
  std::smatch m;
  if (text == "one" || text == "1") return TemplateConstant::one();
  if (std::regex_match(text, m, kron)) return TemplateConstant::kron(std::stol(m[1]));
  if (std::regex_match(text, m, zeta)) {
    return TemplateConstant::zeta_p(static_cast<unsigned>(std::stoul(m[1])));
  }
  if (std::regex_match(text, m, lp)) {
    return TemplateConstant::l_p(std::stol(m[1]), static_cast<unsigned>(std::stoul(m[2])));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown candidate constant \"" + text + "\"");
}

std::string real_text(const Real& x, int digits = 40) { return x.to_string(digits); }

std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

ExpansionTemplate load_template_for(const RunConfig& cfg) {
  if (!cfg.template_path) throw Error(ErrorCode::InvalidArgument, "--template is required");
  ExpansionTemplate tpl = load_template(*cfg.template_path);
  if (cfg.mod_power) {
    tpl.modulus_power = *cfg.mod_power;
    tpl.validate();
  }
  return tpl;
}

json records_json(const CongruenceReport& r) {
  json a = json::array();
  for (const CongruenceRecord& rec : r.records) {
    json row;
    row["p"] = rec.p;
    row["lhs"] = rec.error ? json(nullptr) : json(to_string(rec.lhs));
    row["rhs"] = rec.error ? json(nullptr) : json(to_string(rec.rhs));
    row["pass"] = rec.pass;
    row["defect_valuation"] = rec.defect_valuation ? json(*rec.defect_valuation) : json(nullptr);
    if (rec.error) row["error"] = *rec.error;
    a.push_back(row);
  }
  return a;
}

void records_csv(const CongruenceReport& r, std::ostream& out) {
  out << "p,lhs,rhs,pass,defect_valuation\n";
  for (const CongruenceRecord& rec : r.records) {
    out << rec.p << ',' << (rec.error ? "" : to_string(rec.lhs)) << ','
        << (rec.error ? "" : to_string(rec.rhs)) << ',' << (rec.pass ? "true" : "false") << ','
        << opt_text(rec.defect_valuation) << '\n';
  }
}

void records_text(const CongruenceReport& r, std::ostream& out) {
  for (const CongruenceRecord& rec : r.records) {
    out << "  p=" << std::setw(4) << rec.p << "  ";
    if (rec.error) {
      out << "ERROR " << *rec.error << '\n';
    } else if (rec.pass) {
      out << "ok    " << to_string(rec.lhs) << '\n';
    } else {
      out << "FAIL  lhs=" << to_string(rec.lhs) << " rhs=" << to_string(rec.rhs)
          << " defect valuation " << opt_text(rec.defect_valuation) << '\n';
    }
  }
  out << "  " << r.passed() << " passed, " << r.failed() << " failed, " << r.errored()
      << " errors (mod p^" << r.modulus_power << ")\n";
}

int congruence_exit(const CongruenceReport& r) {
  if (r.records.empty()) return kUsageError;
  if (r.failed() > 0) return kMathFailure;
  if (r.errored() > 0) return kPrecisionError;
  return kPass;
}

struct Outcome {
  int code = kPass;
  json doc;
  std::string text;
  std::string csv;
};

Outcome do_sum_check(const RunConfig& cfg, const SeriesSpec& spec) {
  const NumericValue v = numeric_sum(spec, cfg.precision_bits);
  const Real rhs = rhs_value(spec, cfg.precision_bits + 32);
  const Real defect = abs(v.value - rhs);
  const Real tol = v.error_bound + Real::exp2(-(cfg.precision_bits - 16), 64);
  const bool pass = defect <= tol;
  Outcome o;
  o.code = pass ? kPass : kMathFailure;
  o.doc = json{{"value", real_text(v.value)}, {"rhs", real_text(rhs)},
               {"defect", real_text(defect, 6)}, {"error_bound", real_text(v.error_bound, 6)},
               {"terms", v.terms}, {"pass", pass}};
  std::ostringstream t;
  t << spec.name << ": sum = " << real_text(v.value) << "\n  rhs = " << real_text(rhs)
    << "\n  |sum - rhs| = " << real_text(defect, 6) << " (tolerance " << real_text(tol, 6) << ", "
    << v.terms << " terms)\n  " << (pass ? "PASS" : "FAIL") << '\n';
  o.text = t.str();
  o.csv = "value,rhs,defect,pass\n" + real_text(v.value) + "," + real_text(rhs) + "," +
          real_text(defect, 6) + "," + (pass ? "true" : "false") + "\n";
  return o;
}

Outcome do_expand(const RunConfig& cfg, const SeriesSpec& spec) {
  Outcome o;
  std::ostringstream t, csv;
  const Rational scale = Rational::parse(cfg.scale);
  TruncatedSeries series = shifted_expansion(spec, cfg.order, cfg.precision_bits);
  const Real s(scale, cfg.precision_bits + 64);
  json coeffs = json::array();
  t << spec.name << ": expansion to x^" << cfg.order << " (error <= "
    << real_text(series.error_bound(), 4) << ")\n";
  csv << "order,coefficient\n";
  std::vector<Real> scaled;
  for (unsigned j = 0; j <= cfg.order; ++j) {
    scaled.push_back(series[j] * s);
    coeffs.push_back(real_text(scaled.back()));
    t << "  c" << j << " = " << real_text(scaled.back()) << '\n';
    csv << j << ',' << real_text(scaled.back()) << '\n';
  }
  o.doc["scale"] = scale.to_string();
  o.doc["coefficients"] = coeffs;
  o.doc["error_bound"] = real_text(series.error_bound(), 6);

  if (cfg.claims_path) {
    ExpansionClaims claims = load_claims(*cfg.claims_path);
    const ExpansionReport rep = verify_expansion(spec, claims, cfg.precision_bits);
    json checks = json::array();
    t << "claims (" << *cfg.claims_path << ", scale " << claims.scale.to_string() << "):\n";
    for (const ExpansionCheck& c : rep.checks) {
      checks.push_back(json{{"order", c.order}, {"claimed", c.claimed_text},
                            {"computed", real_text(c.computed)},
                            {"defect", real_text(c.defect, 6)},
                            {"tolerance", real_text(c.tolerance, 6)}, {"pass", c.pass}});
      t << "  x^" << c.order << "  " << (c.pass ? "ok  " : "FAIL") << "  " << c.claimed_text
        << "  defect " << real_text(c.defect, 4) << '\n';
    }
    o.doc["verify"] = json{{"precision_bits", rep.precision_bits}, {"checks", checks},
                           {"pass", rep.all_pass()}};
    if (!rep.all_pass()) o.code = kMathFailure;
  }

  if (!cfg.recognize_basis.empty()) {
    std::vector<ConstantMonomial> basis;
    for (const std::string& b : cfg.recognize_basis) basis.push_back(parse_monomial(b));
    const BigInt height(cfg.height);
    json found = json::array();
    t << "recognition (height " << cfg.height << "):\n";
    for (unsigned j = 0; j <= cfg.order; ++j) {
      const auto rel = recognize(scaled[j], basis, height, cfg.precision_bits);
      json row{{"order", j}};
      std::ostringstream line;
      if (!rel) {
        row["relation"] = nullptr;
        line << "none";
      } else {
        json a = json::array();
        bool first = true;
        for (std::size_t i = 0; i < rel->a.size(); ++i) {
          a.push_back(to_string(rel->a[i]));
          if (rel->a[i] == 0) continue;
          line << (first ? "" : " + ") << to_string(rel->a[i]) << "*" << cfg.recognize_basis[i];
          first = false;
        }
        if (first) line << "0";
        if (rel->q != 1) line << "  (all over " << to_string(rel->q) << ")";
        row["relation"] = json{{"q", to_string(rel->q)}, {"a", a}};
      }
      found.push_back(row);
      t << "  c" << j << " = " << line.str() << '\n';
    }
    o.doc["recognize"] = found;
  }
  o.text = t.str();
  o.csv = csv.str();
  return o;
}

Outcome do_congruence(const RunConfig& cfg, const SeriesSpec& spec) {
  const ExpansionTemplate tpl = load_template_for(cfg);
  const auto primes = admissible_primes(spec, tpl, cfg.prime_lo, cfg.prime_hi, cfg.exclusions);
  const CongruenceReport rep = verify_congruence(spec, tpl, primes);
  Outcome o;
  o.code = congruence_exit(rep);
  o.doc = json{{"mod_power", rep.modulus_power}, {"passed", rep.passed()},
               {"failed", rep.failed()}, {"errors", rep.errored()},
               {"records", records_json(rep)}};
  std::ostringstream t, csv;
  t << spec.name << " vs " << *cfg.template_path << ":\n";
  records_text(rep, t);
  records_csv(rep, csv);
  o.text = t.str();
  o.csv = csv.str();
  return o;
}

std::string coefficients_text(const std::vector<Rational>& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + r[i].to_string();
  return s + ")";
}

Outcome do_fit(const RunConfig& cfg, const SeriesSpec& spec) {
  const ExpansionTemplate tpl = load_template_for(cfg);
  const auto primes = admissible_primes(spec, tpl, cfg.prime_lo, cfg.prime_hi, cfg.exclusions);
  const FitResult fit = fit_unknowns(spec, tpl, primes);
  Outcome o;
  o.code = fit.holdout_pass() ? kPass : kMathFailure;
  json coeffs = json::array();
  for (const Rational& r : fit.coefficients) coeffs.push_back(r.to_string());
  o.doc = json{{"coefficients", coeffs},
               {"fit_primes", fit.fit_primes},
               {"holdout_primes", fit.holdout_primes},
               {"skipped_primes", fit.skipped_primes},
               {"holdout_pass", fit.holdout_pass()},
               {"holdout", records_json(fit.holdout)},
               {"completed_template", json::parse(serialize_template(fit.completed))}};
  std::ostringstream t, csv;
  std::vector<Rational> shown;
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
    if (!fit.structurally_zero[i]) shown.push_back(fit.coefficients[i]);
  }
  t << "r = " << coefficients_text(shown) << '\n';
  for (std::size_t i = 0; i < tpl.terms.size(); ++i) {
    t << "  p^" << tpl.terms[i].exponent << "  " << tpl.terms[i].constant.to_string() << "  "
      << fit.coefficients[i].to_string() << (fit.structurally_zero[i] ? "  (vanishes by parity)" : "")
      << '\n';
  }
  t << "fit on " << fit.fit_primes.size() << " primes; held out " << fit.holdout_primes.size()
    << ": " << (fit.holdout_pass() ? "verified" : "HOLD-OUT FAILURE") << '\n';
  if (!fit.holdout_pass()) records_text(fit.holdout, t);
  records_csv(fit.holdout, csv);
  o.text = t.str();
  o.csv = csv.str();
  return o;
}

Outcome do_scan(const RunConfig& cfg, const SeriesSpec& spec) {
  const ExpansionTemplate tpl = load_template_for(cfg);
  std::vector<TemplateConstant> cands;
  for (const std::string& c : cfg.candidates) cands.push_back(parse_candidate(c));
  const auto primes = admissible_primes(spec, tpl, cfg.prime_lo, cfg.prime_hi, cfg.exclusions);
  const ScanReport rep = scan_next_term(spec, tpl, primes, cands, cfg.probe_exponent);
  Outcome o;
  if (!rep.below_probe.empty()) {
    o.code = kMathFailure;
  } else if (rep.digits.empty()) {
    o.code = kPrecisionError;
  }
  json digits = json::array();
  for (const auto& [p, d] : rep.digits) digits.push_back(json{{"p", p}, {"digit", d}});
  json errors = json::array();
  for (const auto& [p, e] : rep.errors) errors.push_back(json{{"p", p}, {"error", e}});
  json cj = json::array();
  std::ostringstream t, csv;
  t << spec.name << ": defect digits at p^" << rep.probe_exponent << " over " << rep.digits.size()
    << " primes" << (rep.all_digits_zero ? " (all zero)" : "") << '\n';
  if (!rep.below_probe.empty()) {
    t << "  template fails below the probe at " << rep.below_probe.size() << " primes\n";
  }
  for (const auto& [p, e] : rep.errors) t << "  p=" << p << " " << e << '\n';
  csv << "constant,consistent,coefficient,primes_used,note\n";
  for (const ScanCandidate& c : rep.candidates) {
    cj.push_back(json{{"constant", c.constant.to_string()},
                      {"consistent", c.consistent},
                      {"coefficient", c.coefficient ? json(c.coefficient->to_string()) : json(nullptr)},
                      {"primes_used", c.primes_used.size()},
                      {"note", c.note}});
    t << "  " << c.constant.to_string() << ": "
      << (c.consistent ? "r = " + c.coefficient->to_string() : std::string("no fit")) << "  ("
      << c.note << ", " << c.primes_used.size() << " primes)\n";
    csv << '"' << c.constant.to_string() << "\"," << (c.consistent ? "true" : "false") << ','
        << (c.coefficient ? c.coefficient->to_string() : "") << ',' << c.primes_used.size() << ",\""
        << c.note << "\"\n";
  }
  const bool any = std::any_of(rep.candidates.begin(), rep.candidates.end(),
                               [](const ScanCandidate& c) { return c.consistent; });
  if (!cands.empty() && !any && rep.below_probe.empty() && !rep.digits.empty()) {
    if (rep.errors.empty()) {
      t << "  no candidate explains the defect\n";
    } else {
      // A negative answer from a subset of the primes is not a verdict.
      o.code = kPrecisionError;
      t << "  undecided: " << rep.errors.size() << " primes lack the probed digit\n";
    }
  }
  o.doc = json{{"probe_exponent", rep.probe_exponent}, {"all_digits_zero", rep.all_digits_zero},
               {"below_probe", rep.below_probe}, {"digits", digits}, {"errors", errors},
               {"candidates", cj}};
  o.text = t.str();
  o.csv = csv.str();
  return o;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvariantViolation, what); };
  if (spec_path.empty()) fail("--spec is required");
  if (prime_lo > prime_hi) fail("prime range is empty (lo > hi)");
  if (precision_bits < 64) fail("precision must be at least 64 bits");
  if (order > 16) fail("order must be at most 16");
  if (mod_power && (*mod_power < 1 || *mod_power > 32)) fail("mod power must lie in 1..32");
}

std::pair<std::uint64_t, std::uint64_t> parse_prime_range(const std::string& text) {
  static const std::regex range(R"((\d+)\.\.(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, range)) {
    throw Error(ErrorCode::InvalidArgument, "prime range must look like 5..199");
  }
  return {std::stoull(m[1]), std::stoull(m[2])};
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    cfg.validate();
    const SeriesSpec spec = load_series(cfg.spec_path);
    switch (cfg.command) {
      case Command::SumCheck:
        o = do_sum_check(cfg, spec);
        break;
      case Command::Expand:
        o = do_expand(cfg, spec);
        break;
      case Command::Congruence:
        o = do_congruence(cfg, spec);
        break;
      case Command::Fit:
        o = do_fit(cfg, spec);
        break;
      case Command::Scan:
        o = do_scan(cfg, spec);
        break;
    }
  } catch (const Error& e) {
    err << "padic-rama " << command_name(cfg.command) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "padic-rama " << command_name(cfg.command) << ": " << e.what() << '\n';
    return kUsageError;
  }

  std::string body;
  switch (cfg.format) {
    case Format::Text:
      body = o.text;
      break;
    case Format::Csv:
      body = o.csv;
      break;
    case Format::Json: {
      json doc;
      doc["command"] = command_name(cfg.command);
      doc["spec"] = cfg.spec_path;
      if (cfg.template_path) doc["template"] = *cfg.template_path;
      doc["exit_code"] = o.code;
      doc["result"] = o.doc;
      body = doc.dump(2) + "\n";
      break;
    }
  }
  if (cfg.output_path) {
    std::ofstream f(*cfg.output_path, std::ios::binary);
    if (!f) {
      err << "padic-rama: cannot write " << *cfg.output_path << '\n';
      return kUsageError;
    }
    f << body;
  } else {
    out << body;
  }
  return o.code;
}

}  // namespace padicrama::cli
