#include <benchmark/benchmark.h>

#include "ngv/coverage.hpp"
#include "ngv/iet.hpp"
#include "ngv/matfp.hpp"
#include "ngv/perm.hpp"

namespace {

using nlohmann::json;

void BM_PermCompose(benchmark::State& state) {
  const ngv::Perm a = ngv::Perm::parse("(1 2 3 4 5)(6 7)", 10);
  const ngv::Perm b = ngv::Perm::parse("(2 4)(5 8 9)", 10);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PermCompose);

void BM_JordanLength(benchmark::State& state) {
  const ngv::MatFp m = ngv::MatFp::from_rows(
      {{1, 1, 0}, {0, 1, 2}, {3, 0, 1}}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ngv::jordan_length(m));
}
BENCHMARK(BM_JordanLength);

void BM_IetCompose(benchmark::State& state) {
  using ngv::Rational;
  const ngv::IetMap f({Rational(1, 6), Rational(1, 2), Rational(1, 3)}, {2, 0, 1});
  const ngv::IetMap g({Rational(2, 5), Rational(3, 5)}, {1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_IetCompose);

void BM_ConjBallA5(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    ngv::CoverageEngine engine(ngv::make_group(
        json{{"type", "alt"}, {"n", 5}, {"norm", "hamming_normalized"}}));
    const int g = engine.index_of(ngv::Element(ngv::Perm::parse("(1 2 3)", 5)));
    state.ResumeTiming();
    benchmark::DoNotOptimize(engine.chain(g).sizes.size());
  }
}
BENCHMARK(BM_ConjBallA5);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
