#include "chparser/model.hpp"

#include <algorithm>

namespace chparser {

const char* mode_name(ReprMode m) {
  switch (m) {
    case ReprMode::Word: return "word";
    case ReprMode::W2v: return "w2v";
    case ReprMode::Cnn: return "cnn";
    case ReprMode::Lstm: return "lstm";
    case ReprMode::CnnWord: return "cnn+word";
    case ReprMode::CnnW2v: return "cnn+w2v";
    case ReprMode::LstmWord: return "lstm+word";
    case ReprMode::LstmW2v: return "lstm+w2v";
  }
  return "?";
}

ReprMode parse_mode(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "word") return ReprMode::Word;
  if (s == "w2v") return ReprMode::W2v;
  if (s == "cnn") return ReprMode::Cnn;
  if (s == "lstm") return ReprMode::Lstm;
  if (s == "cnn+word") return ReprMode::CnnWord;
  if (s == "cnn+w2v") return ReprMode::CnnW2v;
  if (s == "lstm+word") return ReprMode::LstmWord;
  if (s == "lstm+w2v") return ReprMode::LstmW2v;
  throw std::runtime_error("unknown representation mode '" + name + "'");
}

std::vector<uint8_t> transition_mask(const Configuration& c, int num_labels,
                                     bool single_root) {
  std::vector<uint8_t> mask(1 + 4 * num_labels, 0);
  auto ok = legal(c, single_root);
  mask[0] = ok[int(TransitionKind::Shift)];
  for (int kind = 1; kind < kNumTransitionKinds; ++kind) {
    if (!ok[kind]) continue;
    // reserved label ids (<NOLABEL>, <NULL>) never label an arc
    for (int l = 2; l < num_labels; ++l) mask[1 + (kind - 1) * num_labels + l] = 1;
  }
  return mask;
}

}  // namespace chparser
