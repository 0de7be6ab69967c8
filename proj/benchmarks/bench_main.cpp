#include <benchmark/benchmark.h>

#include <cyclebv/delta.hpp>
#include <cyclebv/polynomial.hpp>
#include <cyclebv/signs.hpp>

#include <algorithm>
#include <numeric>
#include <random>

namespace {

using namespace cyclebv;

void BM_koszul_sign(benchmark::State& state) {
  std::mt19937 rng(1);
  const int n = static_cast<int>(state.range(0));
  std::vector<int> src(n), parities(n);
  std::iota(src.begin(), src.end(), 0);
  std::shuffle(src.begin(), src.end(), rng);
  std::uniform_int_distribution<int> bit(0, 1);
  for (auto& p : parities) p = bit(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(koszul_reorder_sign(src, parities));
  }
}
BENCHMARK(BM_koszul_sign)->Arg(8)->Arg(32);

void BM_poly_gcd(benchmark::State& state) {
  MultiPoly f1 = poly_from_string("l1 + l2 + l3");
  MultiPoly f2 = poly_from_string("l1*l3 - 2*l2 + 1");
  MultiPoly f3 = poly_from_string("l2^2 + 5*l1");
  MultiPoly a = f1 * f2, b = f1 * f3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_gcd(a, b));
  }
}
BENCHMARK(BM_poly_gcd);

}  // namespace

BENCHMARK_MAIN();
