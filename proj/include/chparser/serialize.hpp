#ifndef CHPARSER_SERIALIZE_HPP
#define CHPARSER_SERIALIZE_HPP

#include <cstring>
#include <istream>
#include <ostream>

#include "chparser/model.hpp"

namespace chparser {

// Versioned binary container: magic, format version, mode + hyperparameters,
// vocabulary, then every parameter tensor (current values and averages).
// Little-endian float32 on disk; any truncation fails the load.

constexpr uint32_t kModelFormatVersion = 1;
constexpr char kModelMagic[4] = {'C', 'P', 'A', 'R'};

namespace detail {

template <class V>
void put(std::ostream& out, const V& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class V>
V get(std::istream& in) {
  V v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("model file: truncated input");
  return v;
}

template <class T>
void put_tensor(std::ostream& out, const Tensor<T>& t) {
  put<uint32_t>(out, static_cast<uint32_t>(t.shape.size()));
  for (int d : t.shape) put<int32_t>(out, d);
  for (T v : t.values) put<float>(out, static_cast<float>(v));
}

template <class T>
void get_tensor(std::istream& in, Tensor<T>& t) {
  uint32_t rank = get<uint32_t>(in);
  if (rank != t.shape.size()) throw std::runtime_error("model file: tensor rank mismatch");
  for (size_t i = 0; i < rank; ++i)
    if (get<int32_t>(in) != t.shape[i])
      throw std::runtime_error("model file: tensor shape mismatch");
  for (auto& v : t.values) v = static_cast<T>(get<float>(in));
}

}  // namespace detail

template <class T>
void save_model(std::ostream& out, Model<T>& model) {
  out.write(kModelMagic, 4);
  detail::put<uint32_t>(out, kModelFormatVersion);
  detail::put<uint8_t>(out, static_cast<uint8_t>(model.mode));
  detail::put<uint8_t>(out, model.single_root ? 1 : 0);
  const HyperParams& h = model.hp;
  for (int v : {h.word_dim, h.tag_dim, h.label_dim, h.char_dim, h.channels, h.lstm_hidden,
                h.f_dim, h.h1_dim, h.h2_dim, h.char_len})
    detail::put<int32_t>(out, v);
  detail::put<double>(out, h.dropout);
  detail::put<uint32_t>(out, static_cast<uint32_t>(h.kernel_lengths.size()));
  for (int l : h.kernel_lengths) detail::put<int32_t>(out, l);
  model.vocab.save(out);
  auto params = model.params();
  detail::put<uint32_t>(out, static_cast<uint32_t>(params.size()));
  for (auto* p : params) {
    detail::put<uint32_t>(out, static_cast<uint32_t>(p->name.size()));
    out.write(p->name.data(), p->name.size());
    detail::put_tensor(out, p->value);
    detail::put_tensor(out, p->average);
  }
  if (!out) throw std::runtime_error("model file: write failed");
}

template <class T>
Model<T> load_model(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kModelMagic, 4) != 0)
    throw std::runtime_error("model file: bad magic");
  uint32_t version = detail::get<uint32_t>(in);
  if (version != kModelFormatVersion)
    throw std::runtime_error("model file: unsupported version " + std::to_string(version));
  ReprMode mode = static_cast<ReprMode>(detail::get<uint8_t>(in));
  bool single_root = detail::get<uint8_t>(in) != 0;
  HyperParams h;
  h.word_dim = detail::get<int32_t>(in);
  h.tag_dim = detail::get<int32_t>(in);
  h.label_dim = detail::get<int32_t>(in);
  h.char_dim = detail::get<int32_t>(in);
  h.channels = detail::get<int32_t>(in);
  h.lstm_hidden = detail::get<int32_t>(in);
  h.f_dim = detail::get<int32_t>(in);
  h.h1_dim = detail::get<int32_t>(in);
  h.h2_dim = detail::get<int32_t>(in);
  h.char_len = detail::get<int32_t>(in);
  h.dropout = detail::get<double>(in);
  uint32_t nk = detail::get<uint32_t>(in);
  h.kernel_lengths.clear();
  for (uint32_t i = 0; i < nk; ++i) h.kernel_lengths.push_back(detail::get<int32_t>(in));
  Vocabulary vocab = Vocabulary::load(in);
  Model<T> model = Model<T>::create(std::move(vocab), mode, h);
  model.single_root = single_root;
  auto params = model.params();
  uint32_t np = detail::get<uint32_t>(in);
  if (np != params.size()) throw std::runtime_error("model file: parameter count mismatch");
  for (auto* p : params) {
    uint32_t len = detail::get<uint32_t>(in);
    std::string name(len, '\0');
    in.read(name.data(), len);
    if (!in || name != p->name)
      throw std::runtime_error("model file: expected parameter '" + p->name + "'");
    detail::get_tensor(in, p->value);
    detail::get_tensor(in, p->average);
  }
  return model;
}

}  // namespace chparser

#endif
