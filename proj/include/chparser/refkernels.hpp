#ifndef CHPARSER_REFKERNELS_HPP
#define CHPARSER_REFKERNELS_HPP

#include <cstddef>

// Plain serial loops matching the kernels in kernels.hpp; used by the tests
// and the kernel benchmark as the reference implementation.

namespace chparser::refkernels {

template <class T>
void matvec(const T* W, const T* x, T* y, int m, int n) {
  for (int i = 0; i < m; ++i) {
    T acc = 0;
    for (int j = 0; j < n; ++j) acc += W[static_cast<size_t>(i) * n + j] * x[j];
    y[i] = acc;
  }
}

template <class T>
void matvec_t_acc(const T* W, const T* g, T* gx, int m, int n) {
  for (int j = 0; j < n; ++j) {
    T acc = 0;
    for (int i = 0; i < m; ++i) acc += W[static_cast<size_t>(i) * n + j] * g[i];
    gx[j] += acc;
  }
}

template <class T>
void outer_acc(T* dW, const T* g, const T* x, int m, int n) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) dW[static_cast<size_t>(i) * n + j] += g[i] * x[j];
}

}  // namespace chparser::refkernels

#endif
