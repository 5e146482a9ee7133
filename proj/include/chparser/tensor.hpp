#ifndef CHPARSER_TENSOR_HPP
#define CHPARSER_TENSOR_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace chparser {

using Rng = std::mt19937_64;

template <class T>
struct Tensor {
  std::vector<int> shape;
  std::vector<T> values;

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
    values.assign(count(), T(0));
  }
  size_t count() const {
    size_t c = 1;
    for (int d : shape) c *= static_cast<size_t>(d);
    return c;
  }
  T* data() { return values.data(); }
  const T* data() const { return values.data(); }
  T& operator[](size_t i) { return values[i]; }
  const T& operator[](size_t i) const { return values[i]; }
  void zero() { std::fill(values.begin(), values.end(), T(0)); }
  // row pointer for 2-d tensors
  T* row(int i) { return values.data() + static_cast<size_t>(i) * shape[1]; }
  const T* row(int i) const { return values.data() + static_cast<size_t>(i) * shape[1]; }
};

template <class T>
struct Parameter {
  std::string name;
  Tensor<T> value, grad, velocity, average;
  bool l2_exempt = false;

  Parameter() = default;
  Parameter(std::string n, std::vector<int> shape, bool exempt = false)
      : name(std::move(n)),
        value(shape),
        grad(shape),
        velocity(shape),
        average(std::move(shape)),
        l2_exempt(exempt) {}
};

// zero-mean Gaussian with std sqrt(2 / fan_in)
template <class T>
void init_he(Tensor<T>& t, int fan_in, Rng& rng) {
  if (fan_in <= 0) throw std::invalid_argument("init_he: fan_in must be positive");
  std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_in));
  for (auto& v : t.values) v = static_cast<T>(dist(rng));
}

// Orthonormalizes the rows (or columns when rows > cols) of a Gaussian
// matrix with modified Gram-Schmidt in double precision.
template <class T>
void init_orthogonal(Tensor<T>& t, Rng& rng) {
  if (t.shape.size() != 2) throw std::invalid_argument("init_orthogonal: need a matrix");
  int rows = t.shape[0], cols = t.shape[1];
  bool by_rows = rows <= cols;
  int k = by_rows ? rows : cols;
  int len = by_rows ? cols : rows;
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> v(k, std::vector<double>(len));
  for (auto& row : v)
    for (auto& x : row) x = dist(rng);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      double dot = 0;
      for (int l = 0; l < len; ++l) dot += v[i][l] * v[j][l];
      for (int l = 0; l < len; ++l) v[i][l] -= dot * v[j][l];
    }
    double nrm = 0;
    for (double x : v[i]) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) throw std::runtime_error("init_orthogonal: degenerate draw");
    for (double& x : v[i]) x /= nrm;
  }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      t.values[static_cast<size_t>(r) * cols + c] =
          static_cast<T>(by_rows ? v[r][c] : v[c][r]);
}

}  // namespace chparser

#endif
