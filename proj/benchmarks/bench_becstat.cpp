// Microbenchmarks for the solver and statistics hot paths.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "becstat/linalg.hpp"
#include "becstat/presets.hpp"
#include "becstat/stats.hpp"
#include "becstat/three_mode.hpp"
#include "becstat/two_mode.hpp"

namespace la = becstat::linalg;
namespace twm = becstat::two_mode;
namespace thm = becstat::three_mode;
namespace st = becstat::stats;
namespace pr = becstat::presets;

namespace {

const twm::TwoModeCouplings& two(const char* name) {
  return std::get<twm::TwoModeCouplings>(pr::find_preset(name)->couplings);
}

const thm::ThreeModeCouplings& three(const char* name) {
  return std::get<thm::ThreeModeCouplings>(pr::find_preset(name)->couplings);
}

la::SymTridiagonal random_tridiagonal(std::int64_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  la::SymTridiagonal t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (auto& d : t.diag) d = u(rng);
  for (auto& e : t.offdiag) e = u(rng);
  return t;
}

void bm_tridiag_eigen(benchmark::State& state) {
  const auto t = random_tridiagonal(state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(la::eigen_sym_tridiag(t));
}
BENCHMARK(bm_tridiag_eigen)->Arg(101)->Arg(401)->Arg(2001)->Unit(benchmark::kMillisecond);

void bm_dense_eigen(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  la::SymDense h(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i; j < n; ++j) h.set(i, j, u(rng));
  for (auto _ : state) benchmark::DoNotOptimize(la::eigen_sym_dense(h));
}
BENCHMARK(bm_dense_eigen)->Arg(200)->Arg(676)->Unit(benchmark::kMillisecond);

void bm_dimer_sector(benchmark::State& state) {
  const auto& c = two("II.plus");
  for (auto _ : state) benchmark::DoNotOptimize(twm::spectrum(c, state.range(0)));
}
BENCHMARK(bm_dimer_sector)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_dimer_recursion(benchmark::State& state) {
  const auto& c = two("II.plus");
  for (auto _ : state) benchmark::DoNotOptimize(twm::spectrum_via_recursion(c, state.range(0)));
}
BENCHMARK(bm_dimer_recursion)->Arg(60)->Unit(benchmark::kMillisecond);

void bm_triad_restricted(benchmark::State& state) {
  const auto& c = three("III.plus");
  for (auto _ : state)
    benchmark::DoNotOptimize(thm::spectrum_integrable_restricted(c, state.range(0)));
}
BENCHMARK(bm_triad_restricted)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void bm_noninteg_sector(benchmark::State& state) {
  const auto& c = three("III.plus");
  for (auto _ : state)
    benchmark::DoNotOptimize(thm::spectrum_nonintegrable(c, state.range(0), 1.0));
}
BENCHMARK(bm_noninteg_sector)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void bm_spacing_pipeline(benchmark::State& state) {
  st::SpectrumCollection col;
  const auto& c = two("II.cross");
  for (std::int64_t n = 360; n <= 400; n += 4)
    col.sectors.emplace_back("N=" + std::to_string(n), twm::spectrum(c, n));
  for (auto _ : state) {
    auto set = st::pooled_spacings(col, 100.0, true);
    auto hist = st::histogram_spacings(set, 45);
    auto fit = st::fit_exponential(hist);
    benchmark::DoNotOptimize(st::rescale(hist, fit));
    benchmark::DoNotOptimize(
        st::distribution_distance(set, st::ReferenceLaw::Poisson, fit));
  }
}
BENCHMARK(bm_spacing_pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
