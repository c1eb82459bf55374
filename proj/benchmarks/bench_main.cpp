#include <benchmark/benchmark.h>

#include "spherebound/caps.hpp"
#include "spherebound/codes.hpp"
#include "spherebound/dist_bounds.hpp"
#include "spherebound/gegenbauer.hpp"
#include "spherebound/sdp_cert.hpp"

using namespace spherebound;

namespace {

const RationalPoly kG0 = parse_poly("(2t-1)*t^2*(2t+1)^2*(t+1)");

void BM_E8Distribution(benchmark::State& state) {
  auto code = gen_e8_kissing();
  for (auto _ : state) benchmark::DoNotOptimize(distance_distribution(code));
}
BENCHMARK(BM_E8Distribution)->Unit(benchmark::kMillisecond);

void BM_Expand(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = kG0.pow(2);
  for (auto _ : state) benchmark::DoNotOptimize(expand(p, n));
}
BENCHMARK(BM_Expand)->Arg(4)->Arg(8)->Arg(24);

void BM_E8UniquenessPipeline(benchmark::State& state) {
  const std::array<Rational, 4> a{Rational(1, 100), Rational(1, 100), Rational(1, 100), Rational(1, 100)};
  for (auto _ : state) benchmark::DoNotOptimize(e8_uniqueness_pipeline(a));
}
BENCHMARK(BM_E8UniquenessPipeline)->Unit(benchmark::kMillisecond);

void BM_H2(benchmark::State& state) {
  auto g = parse_poly("-(t+9/10)^2 + t^3");
  auto T = IntervalSet::interval(Rational(-1), Rational(-4, 5));
  for (auto _ : state) benchmark::DoNotOptimize(h_2(g, T, Rational(1, 2), 8));
}
BENCHMARK(BM_H2)->Unit(benchmark::kMillisecond);

void BM_SMatrix(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int k = 0; k <= d; ++k) benchmark::DoNotOptimize(build_s_matrix(8, k, d));
  }
}
BENCHMARK(BM_SMatrix)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
