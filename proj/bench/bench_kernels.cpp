// Serial reference kernels against their OpenMP counterparts.

#include "coxsaito/kernels.hpp"
#include "coxsaito/modular.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace coxsaito;

namespace {

kernels::ModMatrix random_matrix(int rows, int cols, std::uint32_t p) {
  std::mt19937 eng(7);
  kernels::ModMatrix m{rows, cols, p, std::vector<std::uint32_t>(static_cast<std::size_t>(rows) * cols)};
  for (auto& x : m.a) x = eng() % 4 == 0 ? eng() % p : 0;
  return m;
}

template <std::vector<int> (*F)(kernels::ModMatrix&, int, std::vector<int>*)>
void bm_rref(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  kernels::ModMatrix base = random_matrix(2 * n, n, 2147483629u);
  for (auto _ : state) {
    kernels::ModMatrix m = base;
    benchmark::DoNotOptimize(F(m, n, nullptr));
  }
}

std::vector<std::vector<Scalar>> random_forms(int count, int n) {
  std::mt19937 eng(11);
  std::vector<std::vector<Scalar>> forms(count, std::vector<Scalar>(n));
  for (auto& f : forms)
    for (auto& c : f) c = Scalar(static_cast<long>(eng() % 19) - 9);
  return forms;
}

template <Poly (*F)(const std::vector<std::vector<Scalar>>&, int, const RingPtr&)>
void bm_power_sum(benchmark::State& state) {
  RingPtr r = indexed_ring("x", 4);
  auto forms = random_forms(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(F(forms, 12, r));
}

Poly dense(const RingPtr& r, int deg) {
  std::mt19937 eng(13);
  Poly f(r);
  for (const auto& m : monomials_of_wdeg(r->nvars(), deg, std::vector<int>(r->nvars(), 1)))
    f += Poly::monomial(r, m, Scalar(static_cast<long>(eng() % 97) + 1));
  return f;
}

template <Poly (*F)(const Poly&, const Poly&)>
void bm_mul(benchmark::State& state) {
  RingPtr r = indexed_ring("x", 4);
  Poly a = dense(r, static_cast<int>(state.range(0))), b = dense(r, static_cast<int>(state.range(0)) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(F(a, b));
}

}  // namespace

BENCHMARK(bm_rref<kernels::rref_mod_serial>)->Name("rref_mod/serial")->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_rref<kernels::rref_mod_parallel>)->Name("rref_mod/parallel")->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_power_sum<kernels::power_sum_serial>)->Name("power_sum/serial")->Arg(48)->Arg(384)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_power_sum<kernels::power_sum_parallel>)->Name("power_sum/parallel")->Arg(48)->Arg(384)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_mul<mul_serial>)->Name("poly_mul/serial")->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mul<kernels::mul_parallel>)->Name("poly_mul/parallel")->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
