// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS to vary the pool.

#include <benchmark/benchmark.h>

#include "pairinglab/kernels.hpp"
#include "pairinglab/randgen.hpp"

namespace k = pairinglab::kernels;
using pairinglab::ComplexMatrix;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t id) {
  pairinglab::Rng rng = pairinglab::Rng(7).split(id);
  ComplexMatrix m(n, n);
  for (auto& z : m.entries()) z = rng.complex_normal();
  return m;
}

template <auto Fn>
void bm_multiply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, b));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <auto Fn>
void bm_gram(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = random_matrix(n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(x));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <auto Fn>
void bm_kron(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_matrix(n, 4), b = random_matrix(n, 5);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, b));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n * n * n));
}

template <auto Fn>
void bm_partial_transpose(benchmark::State& st) {
  const auto d = static_cast<std::size_t>(st.range(0));
  const auto m = random_matrix(d * d, 6);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(m, d, d));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(d * d * d * d));
}

template <auto Fn>
void bm_l1(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto m = random_matrix(n, 7);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(m));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n));
}

}  // namespace

BENCHMARK(bm_multiply<k::serial::multiply>)->Name("multiply/serial")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_multiply<k::multiply>)->Name("multiply/omp")->RangeMultiplier(2)->Range(32, 256)->UseRealTime();
BENCHMARK(bm_gram<k::serial::gram>)->Name("gram/serial")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_gram<k::gram>)->Name("gram/omp")->RangeMultiplier(2)->Range(32, 256)->UseRealTime();
BENCHMARK(bm_kron<k::serial::kron>)->Name("kron/serial")->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(bm_kron<k::kron>)->Name("kron/omp")->RangeMultiplier(2)->Range(8, 32)->UseRealTime();
BENCHMARK(bm_partial_transpose<k::serial::partial_transpose_a>)->Name("partial_transpose/serial")->RangeMultiplier(2)->Range(4, 16);
BENCHMARK(bm_partial_transpose<k::partial_transpose_a>)->Name("partial_transpose/omp")->RangeMultiplier(2)->Range(4, 16)->UseRealTime();
BENCHMARK(bm_l1<k::serial::entrywise_l1>)->Name("l1/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(bm_l1<k::entrywise_l1>)->Name("l1/omp")->RangeMultiplier(4)->Range(64, 1024)->UseRealTime();

BENCHMARK_MAIN();
