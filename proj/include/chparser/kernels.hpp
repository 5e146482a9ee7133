#ifndef CHPARSER_KERNELS_HPP
#define CHPARSER_KERNELS_HPP

#include <cstddef>

// Dense kernels used by the forward/backward passes. Parallelism is over
// independent output rows, so results are identical for any thread count.

namespace chparser::kernels {

// y = W x, W is m x n row-major
template <class T>
void matvec(const T* W, const T* x, T* y, int m, int n) {
#pragma omp parallel for schedule(static) if (m * n > 16384)
  for (int i = 0; i < m; ++i) {
    const T* row = W + static_cast<size_t>(i) * n;
    T acc = 0;
    for (int j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

// gx += W^T g
template <class T>
void matvec_t_acc(const T* W, const T* g, T* gx, int m, int n) {
#pragma omp parallel for schedule(static) if (m * n > 16384)
  for (int j = 0; j < n; ++j) {
    T acc = 0;
    for (int i = 0; i < m; ++i) acc += W[static_cast<size_t>(i) * n + j] * g[i];
    gx[j] += acc;
  }
}

// dW += g x^T
template <class T>
void outer_acc(T* dW, const T* g, const T* x, int m, int n) {
#pragma omp parallel for schedule(static) if (m * n > 16384)
  for (int i = 0; i < m; ++i) {
    T* row = dW + static_cast<size_t>(i) * n;
    T gi = g[i];
    for (int j = 0; j < n; ++j) row[j] += gi * x[j];
  }
}

template <class T>
void axpy(T* y, T a, const T* x, int n) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace chparser::kernels

#endif
