#include <benchmark/benchmark.h>

#include "knotflow/diagram.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/pleated.hpp"
#include "knotflow/shilnikov.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/universality.hpp"

using namespace knotflow;

namespace {

const PleatedSystem kFour{4, {{1, 2, 4, 3}, {Side::R, Side::L, Side::R}}, {0, 1, 0, -1}, Carrier::Unknot};

void BM_EnumerateOrbits(benchmark::State& st) {
  const auto t = build_pretemplate(kFour);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_orbits(t, static_cast<std::size_t>(st.range(0))));
}
BENCHMARK(BM_EnumerateOrbits)->Arg(6)->Arg(8);

void BM_AlexanderBurau(benchmark::State& st) {
  // (s1 s2 s3)^k closes to the (4, k) torus knot for odd k
  BraidWord b{4, {}};
  for (int i = 0; i < 3 * st.range(0); ++i) b.letters.push_back(1 + i % 3);
  for (auto _ : st) benchmark::DoNotOptimize(alexander(b));
}
BENCHMARK(BM_AlexanderBurau)->Arg(5)->Arg(15);

void BM_AlexanderGauss(benchmark::State& st) {
  // (s1 s2 s3)^k closes to the (4, k) torus knot for odd k
  BraidWord b{4, {}};
  for (int i = 0; i < 3 * st.range(0); ++i) b.letters.push_back(1 + i % 3);
  const auto d = diagram_from_braid(b);
  for (auto _ : st) benchmark::DoNotOptimize(alexander_from_gauss(d));
}
BENCHMARK(BM_AlexanderGauss)->Arg(5)->Arg(15);

void BM_OrbitDiagram(benchmark::State& st) {
  const auto t = build_pretemplate(kFour);
  const auto os = enumerate_orbits(t, 5);
  for (auto _ : st) benchmark::DoNotOptimize(orbits_to_diagram(t, os));
}
BENCHMARK(BM_OrbitDiagram);

void BM_Classify(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(classify_bifurcation(kFour, 8));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

void BM_PoincareMap(benchmark::State& st) {
  LocalModelParams p{1, 1, 1, 1};
  const auto g = canonical_global_map();
  for (auto _ : st) benchmark::DoNotOptimize(poincare_map({0.3, 0.1}, p, g));
}
BENCHMARK(BM_PoincareMap)->Unit(benchmark::kMicrosecond);

void BM_FindPeriodic(benchmark::State& st) {
  LocalModelParams p{1, 1, 1, 1};
  const auto g = canonical_global_map();
  std::vector<int> word;
  for (int i = 0; i < st.range(0); ++i) word.push_back(i % 4);
  for (auto _ : st) benchmark::DoNotOptimize(find_periodic(p, g, word));
}
BENCHMARK(BM_FindPeriodic)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
