#ifndef CHPARSER_LAYERS_HPP
#define CHPARSER_LAYERS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "chparser/kernels.hpp"
#include "chparser/tensor.hpp"

namespace chparser {

// ---------- dense + ReLU ----------

// pre = W x + b; out = max(0, pre). W is m x n row-major.
template <class T>
void dense_relu_fwd(const Tensor<T>& W, const Tensor<T>& b, const T* x, T* pre, T* out) {
  int m = W.shape[0], n = W.shape[1];
  kernels::matvec(W.data(), x, pre, m, n);
  for (int i = 0; i < m; ++i) {
    pre[i] += b[i];
    out[i] = pre[i] > 0 ? pre[i] : T(0);
  }
}

// gates dout by the ReLU, accumulates dW/db and (when dx != nullptr) dx.
template <class T>
void dense_relu_bwd(const Tensor<T>& W, const T* x, const T* pre, const T* dout,
                    Tensor<T>& dW, Tensor<T>& db, T* dx, std::vector<T>& scratch) {
  int m = W.shape[0], n = W.shape[1];
  scratch.resize(m);
  for (int i = 0; i < m; ++i) scratch[i] = pre[i] > 0 ? dout[i] : T(0);
  kernels::outer_acc(dW.data(), scratch.data(), x, m, n);
  for (int i = 0; i < m; ++i) db[i] += scratch[i];
  if (dx) kernels::matvec_t_acc(W.data(), scratch.data(), dx, m, n);
}

// affine without nonlinearity (the softmax layer)
template <class T>
void affine_fwd(const Tensor<T>& W, const Tensor<T>& b, const T* x, T* out) {
  int m = W.shape[0], n = W.shape[1];
  kernels::matvec(W.data(), x, out, m, n);
  for (int i = 0; i < m; ++i) out[i] += b[i];
}

template <class T>
void affine_bwd(const Tensor<T>& W, const T* x, const T* dout, Tensor<T>& dW,
                Tensor<T>& db, T* dx) {
  int m = W.shape[0], n = W.shape[1];
  kernels::outer_acc(dW.data(), dout, x, m, n);
  for (int i = 0; i < m; ++i) db[i] += dout[i];
  if (dx) kernels::matvec_t_acc(W.data(), dout, dx, m, n);
}

// ---------- 1-d convolution + max-over-time ----------
//
// C holds the embedded character sequence position-major: position p occupies
// C[p*d_i .. p*d_i+d_i). The kernel tensor is d_o x (l*d_i) with the window
// flattened the same way, so one window response is a contiguous dot product.
// out[o] = max(0, max_p z(o,p)); ties keep the first (leftmost) position.

template <class T>
void conv_maxpool_fwd(const T* C, int w, int d_i, const Tensor<T>& K, const Tensor<T>& b,
                      int l, T* out, int* argmax, T* zmax) {
  if (w < l) throw std::invalid_argument("conv_maxpool: word shorter than kernel");
  int d_o = K.shape[0];
  int span = l * d_i;
#pragma omp parallel for schedule(static) if (d_o * span > 16384)
  for (int o = 0; o < d_o; ++o) {
    const T* row = K.row(o);
    T best = -std::numeric_limits<T>::infinity();
    int bestp = 0;
    for (int p = 0; p + l <= w; ++p) {
      const T* win = C + static_cast<size_t>(p) * d_i;
      T z = b[o];
      for (int k = 0; k < span; ++k) z += row[k] * win[k];
      if (z > best) {
        best = z;
        bestp = p;
      }
    }
    zmax[o] = best;
    argmax[o] = bestp;
    out[o] = best > 0 ? best : T(0);
  }
}

// Routes each channel's gradient to its argmax window only. dC accumulation
// overlaps between channels, so this stays serial.
template <class T>
void conv_maxpool_bwd(const T* C, int d_i, const Tensor<T>& K, int l, const int* argmax,
                      const T* zmax, const T* dout, Tensor<T>& dK, Tensor<T>& db, T* dC) {
  int d_o = K.shape[0];
  int span = l * d_i;
  for (int o = 0; o < d_o; ++o) {
    if (zmax[o] <= 0) continue;
    T g = dout[o];
    if (g == T(0)) continue;
    db[o] += g;
    const T* win = C + static_cast<size_t>(argmax[o]) * d_i;
    T* krow = dK.row(o);
    const T* row = K.row(o);
    T* dwin = dC + static_cast<size_t>(argmax[o]) * d_i;
    for (int k = 0; k < span; ++k) {
      krow[k] += g * win[k];
      dwin[k] += g * row[k];
    }
  }
}

// ---------- LSTM ----------
//
// Gate layout in the 4H dimension: input, forget, cell candidate, output.

template <class T>
struct LstmTrace {
  int steps = 0, H = 0, D = 0;
  std::vector<T> x;      // steps * D
  std::vector<T> gates;  // steps * 4H, post-activation
  std::vector<T> c, h;   // steps * H
};

// Runs the recurrence over trace.x (already filled, steps*D) and fills the
// rest of the trace; the final hidden state is trace.h tail.
template <class T>
void lstm_fwd(const Tensor<T>& wx, const Tensor<T>& wh, const Tensor<T>& b,
              LstmTrace<T>& trace) {
  int H = wh.shape[1], D = wx.shape[1];
  int steps = trace.steps;
  trace.H = H;
  trace.D = D;
  trace.gates.assign(static_cast<size_t>(steps) * 4 * H, T(0));
  trace.c.assign(static_cast<size_t>(steps) * H, T(0));
  trace.h.assign(static_cast<size_t>(steps) * H, T(0));
  std::vector<T> z(4 * H), zh(4 * H);
  for (int t = 0; t < steps; ++t) {
    kernels::matvec(wx.data(), trace.x.data() + static_cast<size_t>(t) * D, z.data(), 4 * H, D);
    if (t > 0) {
      kernels::matvec(wh.data(), trace.h.data() + static_cast<size_t>(t - 1) * H, zh.data(),
                      4 * H, H);
      for (int k = 0; k < 4 * H; ++k) z[k] += zh[k];
    }
    for (int k = 0; k < 4 * H; ++k) z[k] += b[k];
    T* g = trace.gates.data() + static_cast<size_t>(t) * 4 * H;
    T* c = trace.c.data() + static_cast<size_t>(t) * H;
    T* h = trace.h.data() + static_cast<size_t>(t) * H;
    const T* cp = t > 0 ? trace.c.data() + static_cast<size_t>(t - 1) * H : nullptr;
    for (int u = 0; u < H; ++u) {
      T i = T(1) / (T(1) + std::exp(-z[u]));
      T f = T(1) / (T(1) + std::exp(-z[H + u]));
      T gg = std::tanh(z[2 * H + u]);
      T o = T(1) / (T(1) + std::exp(-z[3 * H + u]));
      g[u] = i;
      g[H + u] = f;
      g[2 * H + u] = gg;
      g[3 * H + u] = o;
      c[u] = f * (cp ? cp[u] : T(0)) + i * gg;
      h[u] = o * std::tanh(c[u]);
    }
  }
}

// Backpropagates d(final hidden) through the whole sequence; accumulates the
// weight gradients and writes per-step input gradients into dx (steps*D,
// accumulated).
template <class T>
void lstm_bwd(const Tensor<T>& wx, const Tensor<T>& wh, const LstmTrace<T>& trace,
              const T* dh_final, Tensor<T>& dwx, Tensor<T>& dwh, Tensor<T>& db, T* dx) {
  int H = trace.H, D = trace.D, steps = trace.steps;
  std::vector<T> dh(dh_final, dh_final + H), dc(H, T(0)), dz(4 * H);
  for (int t = steps - 1; t >= 0; --t) {
    const T* g = trace.gates.data() + static_cast<size_t>(t) * 4 * H;
    const T* c = trace.c.data() + static_cast<size_t>(t) * H;
    const T* cp = t > 0 ? trace.c.data() + static_cast<size_t>(t - 1) * H : nullptr;
    for (int u = 0; u < H; ++u) {
      T i = g[u], f = g[H + u], gg = g[2 * H + u], o = g[3 * H + u];
      T tc = std::tanh(c[u]);
      T dcu = dc[u] + dh[u] * o * (T(1) - tc * tc);
      T du = dcu * gg * i * (T(1) - i);
      T df = dcu * (cp ? cp[u] : T(0)) * f * (T(1) - f);
      T dg = dcu * i * (T(1) - gg * gg);
      T do_ = dh[u] * tc * o * (T(1) - o);
      dz[u] = du;
      dz[H + u] = df;
      dz[2 * H + u] = dg;
      dz[3 * H + u] = do_;
      dc[u] = dcu * f;  // carried to step t-1
    }
    const T* xt = trace.x.data() + static_cast<size_t>(t) * D;
    kernels::outer_acc(dwx.data(), dz.data(), xt, 4 * H, D);
    for (int k = 0; k < 4 * H; ++k) db[k] += dz[k];
    kernels::matvec_t_acc(wx.data(), dz.data(), dx + static_cast<size_t>(t) * D, 4 * H, D);
    if (t > 0) {
      const T* hp = trace.h.data() + static_cast<size_t>(t - 1) * H;
      kernels::outer_acc(dwh.data(), dz.data(), hp, 4 * H, H);
      std::fill(dh.begin(), dh.end(), T(0));
      kernels::matvec_t_acc(wh.data(), dz.data(), dh.data(), 4 * H, H);
    }
  }
}

// ---------- softmax cross-entropy ----------

// mask: nullptr = all entries live, else 1 = live, 0 = impossible. The
// gradient is p - onehot(gold) on live entries, 0 elsewhere.
template <class T>
T softmax_xent(const std::vector<T>& logits, int gold, const std::vector<uint8_t>* mask,
               std::vector<T>& probs, std::vector<T>& grad) {
  int n = static_cast<int>(logits.size());
  if (mask && !(*mask)[gold]) throw std::invalid_argument("softmax_xent: gold entry is masked");
  T mx = -std::numeric_limits<T>::infinity();
  for (int i = 0; i < n; ++i)
    if ((!mask || (*mask)[i]) && logits[i] > mx) mx = logits[i];
  probs.assign(n, T(0));
  T zsum = 0;
  for (int i = 0; i < n; ++i) {
    if (mask && !(*mask)[i]) continue;
    probs[i] = std::exp(logits[i] - mx);
    zsum += probs[i];
  }
  grad.assign(n, T(0));
  for (int i = 0; i < n; ++i) {
    if (mask && !(*mask)[i]) continue;
    probs[i] /= zsum;
    grad[i] = probs[i];
  }
  grad[gold] -= T(1);
  return -std::log(probs[gold]);
}

// argmax over live entries
template <class T>
int masked_argmax(const std::vector<T>& logits, const std::vector<uint8_t>& mask) {
  int best = -1;
  for (size_t i = 0; i < logits.size(); ++i)
    if (mask[i] && (best < 0 || logits[i] > logits[best])) best = static_cast<int>(i);
  if (best < 0) throw std::runtime_error("masked_argmax: no legal entry");
  return best;
}

// ---------- dropout ----------

// Inverted dropout: surviving units scaled by 1/(1-rate) at training time,
// identity at inference.
template <class T>
void dropout_fwd(T* x, int n, double rate, bool training, Rng* rng,
                 std::vector<uint8_t>& mask) {
  mask.assign(n, 1);
  if (!training || rate <= 0) return;
  std::bernoulli_distribution drop(rate);
  T scale = static_cast<T>(1.0 / (1.0 - rate));
  for (int i = 0; i < n; ++i) {
    if (drop(*rng)) {
      mask[i] = 0;
      x[i] = T(0);
    } else {
      x[i] *= scale;
    }
  }
}

template <class T>
void dropout_bwd(T* dx, int n, double rate, const std::vector<uint8_t>& mask) {
  if (rate <= 0) return;
  T scale = static_cast<T>(1.0 / (1.0 - rate));
  for (int i = 0; i < n; ++i) dx[i] = mask[i] ? dx[i] * scale : T(0);
}

}  // namespace chparser

#endif
