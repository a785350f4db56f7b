#include <benchmark/benchmark.h>

#include <string>

#include "padicrama/congruence.hpp"
#include "padicrama/expansion.hpp"
#include "padicrama/io.hpp"
#include "padicrama/lfunctions.hpp"
#include "padicrama/modular.hpp"
#include "padicrama/series.hpp"

using namespace padicrama;

namespace {

SeriesSpec series(const std::string& name) {
  return load_series(std::string(PADICRAMA_DATA_DIR) + "/series/" + name + ".json");
}
ExpansionTemplate tmpl(const std::string& name) {
  return load_template(std::string(PADICRAMA_DATA_DIR) + "/templates/" + name + ".json");
}

void BM_TruncatedSumMod(benchmark::State& state) {
  const SeriesSpec s = series("eq2");
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_sum_mod(s, p, 6));
}
BENCHMARK(BM_TruncatedSumMod)->Arg(53)->Arg(199)->Arg(997);

void BM_TruncatedSumExact(benchmark::State& state) {
  const SeriesSpec s = series("eq2");
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_sum_exact(s, p));
}
BENCHMARK(BM_TruncatedSumExact)->Arg(53)->Arg(199);

void BM_BernoulliAllModP(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bernoulli_all_mod_p(p));
}
BENCHMARK(BM_BernoulliAllModP)->Arg(101)->Arg(1009)->Arg(10007);

void BM_ShiftedExpansion(benchmark::State& state) {
  const SeriesSpec s = series("gourevitch");
  const long bits = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(shifted_expansion(s, 7, bits));
}
BENCHMARK(BM_ShiftedExpansion)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_VerifyCongruence(benchmark::State& state) {
  const SeriesSpec s = series("eq2");
  const ExpansionTemplate t = tmpl("eq5");
  const auto primes = primes_in_range(5, 199);
  for (auto _ : state) benchmark::DoNotOptimize(verify_congruence(s, t, primes));
}
BENCHMARK(BM_VerifyCongruence)->Unit(benchmark::kMillisecond);

void BM_FitUnknowns(benchmark::State& state) {
  const SeriesSpec s = series("eq9");
  const ExpansionTemplate t = tmpl("eq11-unknowns");
  const auto primes = primes_in_range(7, 199);
  for (auto _ : state) benchmark::DoNotOptimize(fit_unknowns(s, t, primes));
}
BENCHMARK(BM_FitUnknowns)->Unit(benchmark::kMillisecond);

void BM_RationalReconstruct(benchmark::State& state) {
  const Rational x{BigInt(-35), BigInt(216)};
  std::vector<ResidueClass> cls;
  for (std::uint64_t p : primes_in_range(1000, 1100)) {
    const BigInt m(static_cast<unsigned long>(p));
    cls.emplace_back(reduce_mod(x, m), m);
  }
  for (auto _ : state) benchmark::DoNotOptimize(rational_reconstruct(crt_combine(cls)));
}
BENCHMARK(BM_RationalReconstruct);

}  // namespace

BENCHMARK_MAIN();
