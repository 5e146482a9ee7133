#ifndef CHPARSER_MODEL_HPP
#define CHPARSER_MODEL_HPP

#include <cstring>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "chparser/charseq.hpp"
#include "chparser/features.hpp"
#include "chparser/layers.hpp"
#include "chparser/optimizer.hpp"
#include "chparser/tensor.hpp"
#include "chparser/transition.hpp"
#include "chparser/vocab.hpp"

namespace chparser {

enum class ReprMode { Word, W2v, Cnn, Lstm, CnnWord, CnnW2v, LstmWord, LstmW2v };

inline bool mode_uses_cnn(ReprMode m) {
  return m == ReprMode::Cnn || m == ReprMode::CnnWord || m == ReprMode::CnnW2v;
}
inline bool mode_uses_lstm(ReprMode m) {
  return m == ReprMode::Lstm || m == ReprMode::LstmWord || m == ReprMode::LstmW2v;
}
inline bool mode_uses_chars(ReprMode m) { return mode_uses_cnn(m) || mode_uses_lstm(m); }
inline bool mode_uses_lookup(ReprMode m) {
  return m == ReprMode::Word || m == ReprMode::W2v || m == ReprMode::CnnWord ||
         m == ReprMode::CnnW2v || m == ReprMode::LstmWord || m == ReprMode::LstmW2v;
}
inline bool mode_uses_pretrained(ReprMode m) {
  return m == ReprMode::W2v || m == ReprMode::CnnW2v || m == ReprMode::LstmW2v;
}

const char* mode_name(ReprMode m);
ReprMode parse_mode(const std::string& name);

struct HyperParams {
  int word_dim = 256;
  int tag_dim = 32;
  int label_dim = 32;
  int char_dim = 32;
  std::vector<int> kernel_lengths = {3, 5, 7, 9};
  int channels = 64;
  int lstm_hidden = 128;
  int f_dim = 128;
  int h1_dim = 512;
  int h2_dim = 256;
  int char_len = 32;
  double dropout = 0.1;

  int composed_dim(ReprMode m) const {
    if (mode_uses_cnn(m)) return channels * static_cast<int>(kernel_lengths.size());
    if (mode_uses_lstm(m)) return 2 * lstm_hidden;
    return 0;
  }
  int x_dim(ReprMode m) const {
    return composed_dim(m) + (mode_uses_lookup(m) ? word_dim : 0) + tag_dim + label_dim;
  }
};

// ---------- transition <-> classifier index ----------
// 0 = Shift; arc transitions occupy four blocks of |labels| entries each in
// kind order Left, Right, Left-2, Right-2.

inline int transition_id(const Transition& t, int num_labels) {
  if (t.kind == TransitionKind::Shift) return 0;
  return 1 + (static_cast<int>(t.kind) - 1) * num_labels + t.label;
}
inline Transition id_to_transition(int id, int num_labels) {
  if (id == 0) return {TransitionKind::Shift, -1};
  int a = id - 1;
  return {static_cast<TransitionKind>(1 + a / num_labels), a % num_labels};
}

// Legality mask over the classifier output; the reserved <NOLABEL>/<NULL>
// label entries stay masked.
std::vector<uint8_t> transition_mask(const Configuration& c, int num_labels,
                                     bool single_root);

// ---------- character composition ----------

template <class T>
struct ComposedEntry {
  std::vector<T> out;
  std::vector<T> grad;
  // CNN intermediates
  std::vector<int> padded;
  std::vector<T> cmat;
  std::vector<int> argmax;
  std::vector<T> zmax;
  // LSTM intermediates
  std::vector<int> ids;
  LstmTrace<T> fw, bw;
};

template <class T>
struct ScoreWorkspace {
  std::vector<T> x;            // 24 * x_dim
  std::vector<T> f_pre, f;     // 24 * f_dim; f doubles as h0
  std::vector<T> h1_pre, h1, h2_pre, h2, logits;
  std::vector<uint8_t> drop1, drop2;
  std::vector<T> probs, grad_logits;
  std::vector<T> dh2, dh1, dh0, dx, scratch;
};

template <class T>
struct Model {
  Vocabulary vocab;
  ReprMode mode = ReprMode::Word;
  HyperParams hp;
  bool single_root = true;

  Parameter<T> e_word, e_tag, e_label, e_char;
  std::vector<Parameter<T>> conv_w, conv_b;
  Parameter<T> lstm_fw_wx, lstm_fw_wh, lstm_fw_b;
  Parameter<T> lstm_bw_wx, lstm_bw_wh, lstm_bw_b;
  Parameter<T> null_composed, root_composed;
  Parameter<T> w_f, b_f, w1, b1, w2, b2, w3, b3;

  int num_transitions() const { return 1 + 4 * vocab.num_labels(); }

  // Allocates all parameter tensors for the mode; values stay zero.
  static Model create(Vocabulary vocab, ReprMode mode, HyperParams hp);
  // He / orthogonal initialization; W2V rows taken from emb when present.
  void init(Rng& rng, const EmbeddingFile* emb = nullptr);

  std::vector<Parameter<T>*> params();

  // -- character composition --
  void compose(const std::string& form, ComposedEntry<T>& e) const;
  // consumes e.grad, accumulating into the char-model parameter gradients
  void compose_bwd(ComposedEntry<T>& e);

  // -- full network --
  // composed[s] supplies the composed vector per slot in char modes
  // (nullptr for root/NULL slots); pass nullptr in lookup-only modes.
  void score_fwd(const FeatureSlots& slots, ComposedEntry<T>* const* composed,
                 ScoreWorkspace<T>& ws, bool training, Rng* rng) const;
  // expects ws.grad_logits; accumulates parameter gradients and per-entry
  // composed gradients.
  void score_bwd(const FeatureSlots& slots, ComposedEntry<T>* const* composed,
                 ScoreWorkspace<T>& ws);
};

// Per-evaluation cache of composed word vectors (valid while parameters are
// unchanged).
template <class T>
class ComposeCache {
 public:
  explicit ComposeCache(const Model<T>& model) : model_(model) {}
  const ComposedEntry<T>& get(const std::string& form) {
    auto it = map_.find(form);
    if (it == map_.end()) {
      auto e = std::make_unique<ComposedEntry<T>>();
      model_.compose(form, *e);
      it = map_.emplace(form, std::move(e)).first;
    }
    return *it->second;
  }

 private:
  const Model<T>& model_;
  std::unordered_map<std::string, std::unique_ptr<ComposedEntry<T>>> map_;
};

// Greedy decode: argmax over the legality-masked logits until terminal.
template <class T>
ParseResult parse_sentence(const Sentence& sentence, const Model<T>& model,
                           ComposeCache<T>* cache);

// ------------------------------------------------------------------
// template implementations

template <class T>
Model<T> Model<T>::create(Vocabulary vocab, ReprMode mode, HyperParams hp) {
  Model<T> m;
  m.vocab = std::move(vocab);
  m.mode = mode;
  m.hp = std::move(hp);
  const HyperParams& h = m.hp;
  const Vocabulary& v = m.vocab;
  if (mode_uses_lookup(mode))
    m.e_word = Parameter<T>("e_word", {v.num_words(), h.word_dim});
  m.e_tag = Parameter<T>("e_tag", {v.num_tags(), h.tag_dim});
  m.e_label = Parameter<T>("e_label", {v.num_labels(), h.label_dim});
  if (mode_uses_chars(mode)) {
    m.e_char = Parameter<T>("e_char", {v.num_chars(), h.char_dim});
    int cd = h.composed_dim(mode);
    m.null_composed = Parameter<T>("null_composed", {cd});
    m.root_composed = Parameter<T>("root_composed", {cd});
  }
  if (mode_uses_cnn(mode)) {
    for (size_t k = 0; k < h.kernel_lengths.size(); ++k) {
      int l = h.kernel_lengths[k];
      m.conv_w.emplace_back("conv_w" + std::to_string(l), std::vector<int>{h.channels, l * h.char_dim});
      m.conv_b.emplace_back("conv_b" + std::to_string(l), std::vector<int>{h.channels});
    }
  }
  if (mode_uses_lstm(mode)) {
    int H = h.lstm_hidden, D = h.char_dim;
    m.lstm_fw_wx = Parameter<T>("lstm_fw_wx", {4 * H, D}, true);
    m.lstm_fw_wh = Parameter<T>("lstm_fw_wh", {4 * H, H}, true);
    m.lstm_fw_b = Parameter<T>("lstm_fw_b", {4 * H}, true);
    m.lstm_bw_wx = Parameter<T>("lstm_bw_wx", {4 * H, D}, true);
    m.lstm_bw_wh = Parameter<T>("lstm_bw_wh", {4 * H, H}, true);
    m.lstm_bw_b = Parameter<T>("lstm_bw_b", {4 * H}, true);
  }
  int xd = h.x_dim(mode);
  m.w_f = Parameter<T>("w_f", {h.f_dim, xd});
  m.b_f = Parameter<T>("b_f", {h.f_dim});
  m.w1 = Parameter<T>("w1", {h.h1_dim, kNumFeatureSlots * h.f_dim});
  m.b1 = Parameter<T>("b1", {h.h1_dim});
  m.w2 = Parameter<T>("w2", {h.h2_dim, h.h1_dim});
  m.b2 = Parameter<T>("b2", {h.h2_dim});
  m.w3 = Parameter<T>("w3", {m.num_transitions(), h.h2_dim});
  m.b3 = Parameter<T>("b3", {m.num_transitions()});
  return m;
}

template <class T>
void Model<T>::init(Rng& rng, const EmbeddingFile* emb) {
  if (mode_uses_lookup(mode)) {
    init_he(e_word.value, hp.word_dim, rng);
    if (mode_uses_pretrained(mode)) {
      if (!emb) throw std::runtime_error("pretrained mode requires an embedding file");
      if (emb->dimension != hp.word_dim)
        throw std::runtime_error("embedding dimension mismatch");
      for (int i = 0; i < vocab.num_words(); ++i) {
        auto it = emb->entries.find(vocab.word(i));
        if (it == emb->entries.end()) continue;
        for (int j = 0; j < hp.word_dim; ++j)
          e_word.value.row(i)[j] = static_cast<T>(it->second[j]);
      }
    }
  }
  init_he(e_tag.value, hp.tag_dim, rng);
  init_he(e_label.value, hp.label_dim, rng);
  if (mode_uses_chars(mode)) {
    init_he(e_char.value, hp.char_dim, rng);
    init_he(null_composed.value, hp.composed_dim(mode), rng);
    init_he(root_composed.value, hp.composed_dim(mode), rng);
  }
  for (size_t k = 0; k < conv_w.size(); ++k)
    init_he(conv_w[k].value, hp.kernel_lengths[k] * hp.char_dim, rng);
  if (mode_uses_lstm(mode)) {
    int H = hp.lstm_hidden;
    auto ortho_gates = [&](Tensor<T>& w) {
      int cols = w.shape[1];
      Tensor<T> block({H, cols});
      for (int g = 0; g < 4; ++g) {
        init_orthogonal(block, rng);
        std::memcpy(w.row(g * H), block.data(), sizeof(T) * block.count());
      }
    };
    ortho_gates(lstm_fw_wx.value);
    ortho_gates(lstm_fw_wh.value);
    ortho_gates(lstm_bw_wx.value);
    ortho_gates(lstm_bw_wh.value);
  }
  init_he(w_f.value, hp.x_dim(mode), rng);
  init_he(w1.value, kNumFeatureSlots * hp.f_dim, rng);
  init_he(w2.value, hp.h1_dim, rng);
  init_he(w3.value, hp.h2_dim, rng);
}

template <class T>
std::vector<Parameter<T>*> Model<T>::params() {
  std::vector<Parameter<T>*> out;
  if (mode_uses_lookup(mode)) out.push_back(&e_word);
  out.push_back(&e_tag);
  out.push_back(&e_label);
  if (mode_uses_chars(mode)) {
    out.push_back(&e_char);
    out.push_back(&null_composed);
    out.push_back(&root_composed);
  }
  for (auto& p : conv_w) out.push_back(&p);
  for (auto& p : conv_b) out.push_back(&p);
  if (mode_uses_lstm(mode)) {
    out.push_back(&lstm_fw_wx);
    out.push_back(&lstm_fw_wh);
    out.push_back(&lstm_fw_b);
    out.push_back(&lstm_bw_wx);
    out.push_back(&lstm_bw_wh);
    out.push_back(&lstm_bw_b);
  }
  for (Parameter<T>* p : {&w_f, &b_f, &w1, &b1, &w2, &b2, &w3, &b3}) out.push_back(p);
  return out;
}

template <class T>
void Model<T>::compose(const std::string& form, ComposedEntry<T>& e) const {
  int cd = hp.composed_dim(mode);
  e.out.assign(cd, T(0));
  if (mode_uses_cnn(mode)) {
    e.padded = pad_chars(form, vocab, hp.char_len);
    int w = hp.char_len, di = hp.char_dim;
    e.cmat.resize(static_cast<size_t>(w) * di);
    for (int p = 0; p < w; ++p)
      std::memcpy(e.cmat.data() + static_cast<size_t>(p) * di,
                  e_char.value.row(e.padded[p]), sizeof(T) * di);
    e.argmax.assign(cd, 0);
    e.zmax.assign(cd, T(0));
    int off = 0;
    for (size_t k = 0; k < conv_w.size(); ++k) {
      conv_maxpool_fwd(e.cmat.data(), w, di, conv_w[k].value, conv_b[k].value,
                       hp.kernel_lengths[k], e.out.data() + off, e.argmax.data() + off,
                       e.zmax.data() + off);
      off += hp.channels;
    }
  } else {
    e.ids = char_ids(form, vocab);
    int steps = static_cast<int>(e.ids.size()), di = hp.char_dim, H = hp.lstm_hidden;
    e.fw.steps = e.bw.steps = steps;
    e.fw.x.resize(static_cast<size_t>(steps) * di);
    e.bw.x.resize(static_cast<size_t>(steps) * di);
    for (int t = 0; t < steps; ++t) {
      std::memcpy(e.fw.x.data() + static_cast<size_t>(t) * di, e_char.value.row(e.ids[t]),
                  sizeof(T) * di);
      std::memcpy(e.bw.x.data() + static_cast<size_t>(t) * di,
                  e_char.value.row(e.ids[steps - 1 - t]), sizeof(T) * di);
    }
    lstm_fwd(lstm_fw_wx.value, lstm_fw_wh.value, lstm_fw_b.value, e.fw);
    lstm_fwd(lstm_bw_wx.value, lstm_bw_wh.value, lstm_bw_b.value, e.bw);
    std::memcpy(e.out.data(), e.fw.h.data() + static_cast<size_t>(steps - 1) * H,
                sizeof(T) * H);
    std::memcpy(e.out.data() + H, e.bw.h.data() + static_cast<size_t>(steps - 1) * H,
                sizeof(T) * H);
  }
}

template <class T>
void Model<T>::compose_bwd(ComposedEntry<T>& e) {
  if (mode_uses_cnn(mode)) {
    int w = hp.char_len, di = hp.char_dim;
    std::vector<T> dC(static_cast<size_t>(w) * di, T(0));
    int off = 0;
    for (size_t k = 0; k < conv_w.size(); ++k) {
      conv_maxpool_bwd(e.cmat.data(), di, conv_w[k].value, hp.kernel_lengths[k],
                       e.argmax.data() + off, e.zmax.data() + off, e.grad.data() + off,
                       conv_w[k].grad, conv_b[k].grad, dC.data());
      off += hp.channels;
    }
    for (int p = 0; p < w; ++p)
      kernels::axpy(e_char.grad.row(e.padded[p]), T(1), dC.data() + static_cast<size_t>(p) * di,
                    di);
  } else {
    int steps = static_cast<int>(e.ids.size()), di = hp.char_dim, H = hp.lstm_hidden;
    std::vector<T> dxf(static_cast<size_t>(steps) * di, T(0));
    std::vector<T> dxb(static_cast<size_t>(steps) * di, T(0));
    lstm_bwd(lstm_fw_wx.value, lstm_fw_wh.value, e.fw, e.grad.data(), lstm_fw_wx.grad,
             lstm_fw_wh.grad, lstm_fw_b.grad, dxf.data());
    lstm_bwd(lstm_bw_wx.value, lstm_bw_wh.value, e.bw, e.grad.data() + H, lstm_bw_wx.grad,
             lstm_bw_wh.grad, lstm_bw_b.grad, dxb.data());
    for (int t = 0; t < steps; ++t) {
      kernels::axpy(e_char.grad.row(e.ids[t]), T(1), dxf.data() + static_cast<size_t>(t) * di,
                    di);
      kernels::axpy(e_char.grad.row(e.ids[steps - 1 - t]), T(1),
                    dxb.data() + static_cast<size_t>(t) * di, di);
    }
  }
}

template <class T>
void Model<T>::score_fwd(const FeatureSlots& slots, ComposedEntry<T>* const* composed,
                         ScoreWorkspace<T>& ws, bool training, Rng* rng) const {
  int xd = hp.x_dim(mode), fd = hp.f_dim, cd = hp.composed_dim(mode);
  bool chars = mode_uses_chars(mode), lookup = mode_uses_lookup(mode);
  ws.x.resize(static_cast<size_t>(kNumFeatureSlots) * xd);
  ws.f_pre.resize(static_cast<size_t>(kNumFeatureSlots) * fd);
  ws.f.resize(static_cast<size_t>(kNumFeatureSlots) * fd);
  for (int s = 0; s < kNumFeatureSlots; ++s) {
    T* xs = ws.x.data() + static_cast<size_t>(s) * xd;
    int off = 0;
    if (chars) {
      const T* comp;
      if (slots.token[s] < 0)
        comp = null_composed.value.data();
      else if (slots.token[s] == 0)
        comp = root_composed.value.data();
      else
        comp = composed[s]->out.data();
      std::memcpy(xs, comp, sizeof(T) * cd);
      off += cd;
    }
    if (lookup) {
      std::memcpy(xs + off, e_word.value.row(slots.word_id[s]), sizeof(T) * hp.word_dim);
      off += hp.word_dim;
    }
    std::memcpy(xs + off, e_tag.value.row(slots.tag_id[s]), sizeof(T) * hp.tag_dim);
    off += hp.tag_dim;
    std::memcpy(xs + off, e_label.value.row(slots.label_id[s]), sizeof(T) * hp.label_dim);
    dense_relu_fwd(w_f.value, b_f.value, xs, ws.f_pre.data() + static_cast<size_t>(s) * fd,
                   ws.f.data() + static_cast<size_t>(s) * fd);
  }
  ws.h1_pre.resize(hp.h1_dim);
  ws.h1.resize(hp.h1_dim);
  dense_relu_fwd(w1.value, b1.value, ws.f.data(), ws.h1_pre.data(), ws.h1.data());
  dropout_fwd(ws.h1.data(), hp.h1_dim, hp.dropout, training, rng, ws.drop1);
  ws.h2_pre.resize(hp.h2_dim);
  ws.h2.resize(hp.h2_dim);
  dense_relu_fwd(w2.value, b2.value, ws.h1.data(), ws.h2_pre.data(), ws.h2.data());
  dropout_fwd(ws.h2.data(), hp.h2_dim, hp.dropout, training, rng, ws.drop2);
  ws.logits.resize(num_transitions());
  affine_fwd(w3.value, b3.value, ws.h2.data(), ws.logits.data());
}

template <class T>
void Model<T>::score_bwd(const FeatureSlots& slots, ComposedEntry<T>* const* composed,
                         ScoreWorkspace<T>& ws) {
  int xd = hp.x_dim(mode), fd = hp.f_dim, cd = hp.composed_dim(mode);
  bool chars = mode_uses_chars(mode), lookup = mode_uses_lookup(mode);
  ws.dh2.assign(hp.h2_dim, T(0));
  affine_bwd(w3.value, ws.h2.data(), ws.grad_logits.data(), w3.grad, b3.grad, ws.dh2.data());
  dropout_bwd(ws.dh2.data(), hp.h2_dim, hp.dropout, ws.drop2);
  ws.dh1.assign(hp.h1_dim, T(0));
  dense_relu_bwd(w2.value, ws.h1.data(), ws.h2_pre.data(), ws.dh2.data(), w2.grad, b2.grad,
                 ws.dh1.data(), ws.scratch);
  dropout_bwd(ws.dh1.data(), hp.h1_dim, hp.dropout, ws.drop1);
  ws.dh0.assign(static_cast<size_t>(kNumFeatureSlots) * fd, T(0));
  dense_relu_bwd(w1.value, ws.f.data(), ws.h1_pre.data(), ws.dh1.data(), w1.grad, b1.grad,
                 ws.dh0.data(), ws.scratch);
  ws.dx.resize(xd);
  for (int s = 0; s < kNumFeatureSlots; ++s) {
    std::fill(ws.dx.begin(), ws.dx.end(), T(0));
    dense_relu_bwd(w_f.value, ws.x.data() + static_cast<size_t>(s) * xd,
                   ws.f_pre.data() + static_cast<size_t>(s) * fd,
                   ws.dh0.data() + static_cast<size_t>(s) * fd, w_f.grad, b_f.grad,
                   ws.dx.data(), ws.scratch);
    int off = 0;
    if (chars) {
      T* dst;
      if (slots.token[s] < 0)
        dst = null_composed.grad.data();
      else if (slots.token[s] == 0)
        dst = root_composed.grad.data();
      else {
        if (composed[s]->grad.empty()) composed[s]->grad.assign(cd, T(0));
        dst = composed[s]->grad.data();
      }
      kernels::axpy(dst, T(1), ws.dx.data(), cd);
      off += cd;
    }
    if (lookup) {
      kernels::axpy(e_word.grad.row(slots.word_id[s]), T(1), ws.dx.data() + off, hp.word_dim);
      off += hp.word_dim;
    }
    kernels::axpy(e_tag.grad.row(slots.tag_id[s]), T(1), ws.dx.data() + off, hp.tag_dim);
    off += hp.tag_dim;
    kernels::axpy(e_label.grad.row(slots.label_id[s]), T(1), ws.dx.data() + off, hp.label_dim);
  }
}

template <class T>
ParseResult parse_sentence(const Sentence& sentence, const Model<T>& model,
                           ComposeCache<T>* cache) {
  Configuration c = initial_config(sentence);
  ScoreWorkspace<T> ws;
  bool chars = mode_uses_chars(model.mode);
  std::array<ComposedEntry<T>*, kNumFeatureSlots> composed{};
  int L = model.vocab.num_labels();
  int limit = 2 * sentence.size();
  for (int step = 0; step < limit && !is_terminal(c); ++step) {
    FeatureSlots slots = extract(c, sentence, model.vocab);
    if (chars) {
      for (int s = 0; s < kNumFeatureSlots; ++s) {
        int t = slots.token[s];
        composed[s] = t > 0 ? const_cast<ComposedEntry<T>*>(
                                  &cache->get(sentence.tokens[t - 1].form))
                            : nullptr;
      }
    }
    model.score_fwd(slots, chars ? composed.data() : nullptr, ws, false, nullptr);
    std::vector<uint8_t> mask = transition_mask(c, L, model.single_root);
    int best = masked_argmax(ws.logits, mask);
    c = apply(c, id_to_transition(best, L), model.single_root);
  }
  ParseResult out(sentence.size());
  for (int i = 1; i <= sentence.size(); ++i)
    out[i - 1] = {c.head[i], c.label[i] >= 0 ? model.vocab.label(c.label[i]) : "<NOLABEL>"};
  return out;
}

}  // namespace chparser

#endif
