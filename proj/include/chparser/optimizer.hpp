#ifndef CHPARSER_OPTIMIZER_HPP
#define CHPARSER_OPTIMIZER_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "chparser/tensor.hpp"

namespace chparser {

struct OptimizerState {
  long step = 0;  // completed updates
  double base_lr = 0.1;
  double decay = 0.95;
  int decay_every = 2000;
  double momentum = 0.9;
  double l2 = 1e-4;
  double max_grad_norm = 10.0;

  double lr(long s) const { return base_lr * std::pow(decay, s / decay_every); }
  double lr() const { return lr(step); }
};

// One averaged-SGD update: global gradient-norm constraint, L2 on
// non-exempt parameters, momentum step, running parameter average.
template <class T>
void sgd_step(std::vector<Parameter<T>*>& params, OptimizerState& opt) {
  double sq = 0;
  for (auto* p : params)
    for (T g : p->grad.values) {
      if (!std::isfinite(static_cast<double>(g)))
        throw std::runtime_error("sgd_step: non-finite gradient in " + p->name);
      sq += static_cast<double>(g) * static_cast<double>(g);
    }
  double norm = std::sqrt(sq);
  if (norm > opt.max_grad_norm) {
    T scale = static_cast<T>(opt.max_grad_norm / norm);
    for (auto* p : params)
      for (T& g : p->grad.values) g *= scale;
  }
  T lr = static_cast<T>(opt.lr(opt.step + 1));  // rate for the step being taken
  T mom = static_cast<T>(opt.momentum);
  T l2 = static_cast<T>(opt.l2);
  long k = opt.step + 1;
  T inv_k = static_cast<T>(1.0 / k);
  for (auto* p : params) {
    size_t n = p->value.count();
    T* v = p->value.data();
    T* g = p->grad.data();
    T* vel = p->velocity.data();
    T* avg = p->average.data();
    bool reg = !p->l2_exempt;
    for (size_t i = 0; i < n; ++i) {
      T gi = g[i];
      if (reg) gi += l2 * v[i];
      vel[i] = mom * vel[i] + lr * gi;
      v[i] -= vel[i];
      avg[i] += (v[i] - avg[i]) * inv_k;
      g[i] = T(0);
    }
  }
  opt.step = k;
}

// Swaps current and averaged values for the lifetime of the scope, so dev
// evaluation reads the averaged model while training continues on the raw one.
template <class T>
class AveragedScope {
 public:
  explicit AveragedScope(std::vector<Parameter<T>*>& params) : params_(params) {
    for (auto* p : params_) p->value.values.swap(p->average.values);
  }
  ~AveragedScope() {
    for (auto* p : params_) p->value.values.swap(p->average.values);
  }
  AveragedScope(const AveragedScope&) = delete;
  AveragedScope& operator=(const AveragedScope&) = delete;

 private:
  std::vector<Parameter<T>*>& params_;
};

}  // namespace chparser

#endif
