// Serial reference kernels against their OpenMP counterparts.
//   bench_kernels --benchmark_filter=Mul

#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>

#include "bigact/genus.hpp"
#include "bigact/laurent.hpp"
#include "bigact/tower.hpp"

using namespace bigact;

namespace {

laurent::LaurentPoly random_poly(const ff::FieldPtr &f, std::size_t terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<laurent::Term> t;
  for (std::size_t i = 0; i < terms; ++i)
    t.push_back({static_cast<std::int64_t>(rng() % 2'000'000) - 1'000'000,
                 ff::Fq{static_cast<std::uint32_t>(1 + rng() % (f->order() - 1))}});
  return laurent::LaurentPoly(f, std::move(t));
}

void BM_MulSerial(benchmark::State &st) {
  const auto f = ff::Field::make(3, 5);
  const auto a = random_poly(f, static_cast<std::size_t>(st.range(0)), 1);
  const auto b = random_poly(f, static_cast<std::size_t>(st.range(0)), 2);
  for (auto _ : st)
    benchmark::DoNotOptimize(laurent::mul(a, b));
  st.SetComplexityN(st.range(0));
}

void BM_MulParallel(benchmark::State &st) {
  const auto f = ff::Field::make(3, 5);
  const auto a = random_poly(f, static_cast<std::size_t>(st.range(0)), 1);
  const auto b = random_poly(f, static_cast<std::size_t>(st.range(0)), 2);
  for (auto _ : st)
    benchmark::DoNotOptimize(laurent::mul_parallel(a, b));
  st.SetComplexityN(st.range(0));
}

const genus::Setup &setup32() {
  static const genus::Setup s = genus::make_setup(ff::Params(3, 2));
  return s;
}

void BM_ClassSamples(benchmark::State &st, Exec exec) {
  const auto &s = setup32();
  for (auto _ : st)
    benchmark::DoNotOptimize(genus::class_conductor(s, genus::CoverClassId::w, 256, 1, exec));
}

void BM_Prolong(benchmark::State &st, Exec exec) {
  const ff::Params P(3, 1);
  const auto f = ff::Field::make(3, 3);
  const auto mixed = tower::Presentation::make(P, f, tower::PresentationKind::mixed);
  std::vector<ff::Fq> all;
  for (std::uint32_t v = 0; v < f->order(); ++v)
    all.push_back({v});
  for (auto _ : st)
    benchmark::DoNotOptimize(tower::prolong_many(mixed, all, exec));
}

} // namespace

BENCHMARK(BM_MulSerial)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulParallel)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_ClassSamples, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ClassSamples, parallel, Exec::parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Prolong, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Prolong, parallel, Exec::parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char **argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
