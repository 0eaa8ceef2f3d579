// Microbenchmarks for the hot paths: integer Smith form, exact rational
// matrix products, norm brackets, tower synthesis, and the Bratteli
// telescope. Inputs are fixed-seed so timings are comparable run to run.

#include <qrok/bratteli.hpp>
#include <qrok/opnorm.hpp>
#include <qrok/rokhlin.hpp>
#include <qrok/smith.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace qrok;

IntMat random_int_mat(long long n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  IntMat m(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) m.at(i, j) = dist(rng);
  return m;
}

RatMat random_rat_mat(long long n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  RatMat m(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) m.at(i, j) = rat(num(rng), den(rng));
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  IntMat m = random_int_mat(state.range(0), 17);
  for (auto _ : state) {
    SmithResult r = smith_normal_form(m);
    benchmark::DoNotOptimize(r.d);
  }
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(12);

void BM_RationalMatmul(benchmark::State& state) {
  RatMat a = random_rat_mat(state.range(0), 3);
  RatMat b = random_rat_mat(state.range(0), 5);
  for (auto _ : state) {
    RatMat c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_RationalMatmul)->Arg(8)->Arg(16)->Arg(32);

void BM_OpNormBracket(benchmark::State& state) {
  RatMat a = random_rat_mat(state.range(0), 11);
  for (auto _ : state) {
    NormBracket nb = op_norm_bracket(a);
    benchmark::DoNotOptimize(nb);
  }
}
BENCHMARK(BM_OpNormBracket)->Arg(8)->Arg(16)->Arg(32);

void BM_TowerSynthesize(benchmark::State& state) {
  FgAbelianGroup z4{0, {4}};
  EmbeddingPattern pat(z4, FactorSequence::constant(4), {CoordinateRule::quotient_mod()});
  GroupElement g = element(z4, {BigInt(2)});
  for (auto _ : state) {
    RokhlinTower t = tower_synthesize(pat, g, {}, 8);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_TowerSynthesize);

void BM_BratteliTelescope(benchmark::State& state) {
  CyclicHomFamily fam(2, FactorSequence::linear(), CyclicHomFamily::Mode::RegularMultiple);
  for (auto _ : state) {
    CrossedProductAnalysis a = analyze_crossed_product(fam, state.range(0));
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_BratteliTelescope)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
