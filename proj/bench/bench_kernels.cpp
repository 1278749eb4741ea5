// Serial reference kernels against the OpenMP variants on full identity
// scans (laws that hold, so nothing exits early).

#include <benchmark/benchmark.h>

#include "varitas/io.hpp"
#include "varitas/kernels.hpp"
#include "varitas/variety.hpp"
#include "varitas/word.hpp"

using namespace varitas;

namespace {

struct Case {
  char const* group;
  char const* law;
};

// exponent laws: S4 has exponent 12, A5 exponent 30
Case const kCases[] = {{"S4", "([x1,x2] x3)^12"}, {"A5", "(x1 x2 x3)^30"}};

void identity_scan(benchmark::State& state, kernels::Mode mode) {
  auto const& c = kCases[state.range(0)];
  auto g = load_group(c.group);
  auto w = parse_word(c.law);
  kernels::set_jobs(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto v = is_identity(g, w, {}, mode);
    if (!v.holds) state.SkipWithError("law does not hold");
    benchmark::DoNotOptimize(v.tuples_checked);
  }
  state.SetLabel(std::string(c.group) + " " + c.law);
}

void BM_IdentitySerial(benchmark::State& state) { identity_scan(state, kernels::Mode::serial); }
void BM_IdentityParallel(benchmark::State& state) { identity_scan(state, kernels::Mode::parallel); }

BENCHMARK(BM_IdentitySerial)->Args({0, 1})->Args({1, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentityParallel)->Args({0, 2})->Args({0, 4})->Args({1, 2})->Args({1, 4})->Unit(benchmark::kMillisecond);

// the bare least-failure reduction over a synthetic predicate
void least_failure(benchmark::State& state, bool parallel) {
  std::uint64_t const count = 1 << 22;
  auto scan = [](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    std::uint64_t h = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      h = (h ^ i) * 0x9E3779B97F4A7C15ull;
      if (h == 1) return i;
    }
    return std::nullopt;
  };
  for (auto _ : state) {
    auto r = parallel ? kernels::least_failure_parallel(count, scan, static_cast<int>(state.range(0)))
                      : kernels::least_failure_serial(count, scan);
    benchmark::DoNotOptimize(r);
  }
}

void BM_LeastFailureSerial(benchmark::State& state) { least_failure(state, false); }
void BM_LeastFailureParallel(benchmark::State& state) { least_failure(state, true); }

BENCHMARK(BM_LeastFailureSerial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeastFailureParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
