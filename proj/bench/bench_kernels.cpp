// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "qps/kernels.hpp"

namespace {

using qps::cplx;

qps::ComplexMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  qps::ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

std::vector<cplx> upper_points(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x(-3.0, 3.0), y(0.05, 2.0);
  std::vector<cplx> z(n);
  for (auto& v : z) v = cplx(x(rng), y(rng));
  return z;
}

template <bool Parallel>
void BM_matmul(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_matrix(n, 1), b = random_matrix(n, 2);
  qps::ComplexMatrix c;
  for (auto _ : st) {
    if constexpr (Parallel)
      qps::kernels::parallel::matmul(a, b, c);
    else
      qps::kernels::serial::matmul(a, b, c);
    benchmark::DoNotOptimize(c(0, 0));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n * n));
}

template <bool Parallel>
void BM_gram(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto b = random_matrix(n, 3);
  qps::ComplexMatrix g;
  for (auto _ : st) {
    if constexpr (Parallel)
      qps::kernels::parallel::gram(b, g);
    else
      qps::kernels::serial::gram(b, g);
    benchmark::DoNotOptimize(g(0, 0));
  }
}

template <bool Parallel>
void BM_exp_sum(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::vector<cplx> c(800, cplx(1.0, 0.5));
  const auto z = upper_points(n, 4);
  std::vector<cplx> out;
  for (auto _ : st) {
    if constexpr (Parallel)
      qps::kernels::parallel::exp_sum(c, 0.01, z, out);
    else
      qps::kernels::serial::exp_sum(c, 0.01, z, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_exp_sum_adjoint(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto z = upper_points(n, 5);
  std::vector<cplx> g(n, cplx(0.3, -0.2));
  std::vector<cplx> out;
  for (auto _ : st) {
    if constexpr (Parallel)
      qps::kernels::parallel::exp_sum_adjoint(g, z, 0.01, 800, out);
    else
      qps::kernels::serial::exp_sum_adjoint(g, z, 0.01, 800, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_matmul<false>)->Arg(128)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul<true>)->Arg(128)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram<false>)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram<true>)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exp_sum<false>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exp_sum<true>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exp_sum_adjoint<false>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exp_sum_adjoint<true>)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
