// Compares the OpenMP kernels against the serial reference implementations
// on the matrix sizes the parser actually uses (h1 = 512 x 3072 dominates).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "chparser/kernels.hpp"
#include "chparser/layers.hpp"
#include "chparser/refkernels.hpp"
#include "chparser/tensor.hpp"

namespace {

std::vector<float> random_vec(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> dist(0.f, 1.f);
  std::vector<float> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

void bm_matvec_ref(benchmark::State& state) {
  int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  auto W = random_vec(static_cast<size_t>(m) * n, 1);
  auto x = random_vec(n, 2);
  std::vector<float> y(m);
  for (auto _ : state) {
    chparser::refkernels::matvec(W.data(), x.data(), y.data(), m, n);
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_matvec_omp(benchmark::State& state) {
  int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  auto W = random_vec(static_cast<size_t>(m) * n, 1);
  auto x = random_vec(n, 2);
  std::vector<float> y(m);
  for (auto _ : state) {
    chparser::kernels::matvec(W.data(), x.data(), y.data(), m, n);
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_conv_ref(benchmark::State& state) {
  // brute-force window loop, the shape conv_maxpool_fwd unrolls
  int w = 32, di = 32, d_o = 64, l = static_cast<int>(state.range(0));
  auto C = random_vec(static_cast<size_t>(w) * di, 3);
  auto K = random_vec(static_cast<size_t>(d_o) * l * di, 4);
  auto b = random_vec(d_o, 5);
  std::vector<float> out(d_o);
  for (auto _ : state) {
    for (int o = 0; o < d_o; ++o) {
      float best = -1e30f;
      for (int p = 0; p + l <= w; ++p) {
        float z = b[o];
        for (int j = 0; j < l; ++j)
          for (int c = 0; c < di; ++c)
            z += K[(static_cast<size_t>(o) * l + j) * di + c] * C[(p + j) * di + c];
        if (z > best) best = z;
      }
      out[o] = best > 0 ? best : 0.f;
    }
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_conv_omp(benchmark::State& state) {
  int w = 32, di = 32, d_o = 64, l = static_cast<int>(state.range(0));
  auto C = random_vec(static_cast<size_t>(w) * di, 3);
  chparser::Tensor<float> K({d_o, l * di}), b({d_o});
  K.values = random_vec(K.count(), 4);
  b.values = random_vec(d_o, 5);
  std::vector<float> out(d_o), zmax(d_o);
  std::vector<int> argmax(d_o);
  for (auto _ : state) {
    chparser::conv_maxpool_fwd(C.data(), w, di, K, b, l, out.data(), argmax.data(),
                               zmax.data());
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(bm_matvec_ref)->Args({512, 3072})->Args({3072, 512})->Args({256, 512});
BENCHMARK(bm_matvec_omp)->Args({512, 3072})->Args({3072, 512})->Args({256, 512});
BENCHMARK(bm_conv_ref)->Arg(3)->Arg(9);
BENCHMARK(bm_conv_omp)->Arg(3)->Arg(9);

BENCHMARK_MAIN();
