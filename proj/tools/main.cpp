#include <CLI11.hpp>
#include <iostream>

#include "driver.hpp"

using padicrama::cli::Command;
using padicrama::cli::Format;
using padicrama::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"p-adic and archimedean checks for Ramanujan-type series"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string primes = "5..199";
  std::string format = "text";

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "series spec (JSON)")->required();
    sub->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("-o,--output", cfg.output_path, "write the report here");
  };
  const auto p_adic = [&](CLI::App* sub) {
    sub->add_option("--template", cfg.template_path, "expansion template (JSON)")->required();
    sub->add_option("--primes", primes, "prime range lo..hi");
    sub->add_option("--exclude", cfg.exclusions, "primes to skip")->delimiter(',');
    sub->add_option("--mod-power", cfg.mod_power, "override the template modulus power M");
  };

  auto* sum = app.add_subcommand("sum-check", "compare the full sum with its closed form");
  common(sum);
  sum->add_option("--prec", cfg.precision_bits, "working precision in bits");

  auto* expand = app.add_subcommand("expand", "Taylor coefficients of the shifted sum");
  common(expand);
  expand->add_option("--order", cfg.order, "highest power of x");
  expand->add_option("--prec", cfg.precision_bits, "precision in bits");
  expand->add_option("--verify", cfg.claims_path, "claims file to check");
  expand->add_option("--recognize", cfg.recognize_basis, "basis monomials separated by ;, e.g. zeta(2);L(5,2)")
      ->delimiter(';');
  expand->add_option("--height", cfg.height, "relation height bound");
  expand->add_option("--scale", cfg.scale, "multiply coefficients by this rational first");

  auto* cong = app.add_subcommand("congruence", "check a supercongruence over a prime range");
  common(cong);
  p_adic(cong);

  auto* fit = app.add_subcommand("fit", "recover unknown template coefficients");
  common(fit);
  p_adic(fit);

  auto* scan = app.add_subcommand("scan", "probe the next term of a verified template");
  common(scan);
  p_adic(scan);
  scan->add_option("--candidates", cfg.candidates, "one, kron(D), zeta_p(k), l_p(D,k)")
      ->delimiter(';');
  scan->add_option("--probe", cfg.probe_exponent, "exponent of the probed term (default M)");

  try {
    app.parse(argc, argv);
    const auto [lo, hi] = padicrama::cli::parse_prime_range(primes);
    cfg.prime_lo = lo;
    cfg.prime_hi = hi;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : padicrama::cli::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "padic-rama: " << e.what() << '\n';
    return padicrama::cli::kUsageError;
  }

  if (*sum) cfg.command = Command::SumCheck;
  if (*expand) cfg.command = Command::Expand;
  if (*cong) cfg.command = Command::Congruence;
  if (*fit) cfg.command = Command::Fit;
  if (*scan) cfg.command = Command::Scan;
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

  return padicrama::cli::run(cfg, std::cout, std::cerr);
}
