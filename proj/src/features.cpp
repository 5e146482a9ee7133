#include "chparser/features.hpp"

namespace chparser {

namespace {

// i-th leftmost (1-based) child left of tok under the arcs built so far,
// -1 if absent; rc counts from the right among the children right of tok.
int lc(const Configuration& c, int tok, int i) {
  if (tok < 0) return -1;
  for (int ch : c.children[tok])
    if (ch < tok && --i == 0) return ch;
  return -1;
}
int rc(const Configuration& c, int tok, int i) {
  if (tok < 0) return -1;
  const auto& ch = c.children[tok];
  for (auto it = ch.rbegin(); it != ch.rend(); ++it)
    if (*it > tok && --i == 0) return *it;
  return -1;
}

}  // namespace

FeatureSlots extract(const Configuration& config, const Sentence& sentence,
                     const Vocabulary& vocab) {
  FeatureSlots fs;
  int k = 0;
  auto s = [&](int i) {  // i-th stack token from top, 1-based
    return static_cast<int>(config.stack.size()) >= i ? config.stack_at(i - 1) : -1;
  };
  auto b = [&](int i) {
    return config.buffer_size() >= i ? config.buffer_at(i - 1) : -1;
  };
  for (int i = 1; i <= 4; ++i) fs.token[k++] = s(i);
  for (int i = 1; i <= 4; ++i) fs.token[k++] = b(i);
  for (int i = 1; i <= 3; ++i) {
    int t = s(i);
    fs.token[k++] = lc(config, t, 1);
    fs.token[k++] = lc(config, t, 2);
    fs.token[k++] = rc(config, t, 1);
    fs.token[k++] = rc(config, t, 2);
  }
  int s1lc1 = lc(config, s(1), 1), s1rc1 = rc(config, s(1), 1);
  fs.token[k++] = lc(config, s1lc1, 1);
  fs.token[k++] = rc(config, s1lc1, 1);
  fs.token[k++] = lc(config, s1rc1, 1);
  fs.token[k++] = rc(config, s1rc1, 1);

  for (int i = 0; i < kNumFeatureSlots; ++i) {
    int t = fs.token[i];
    if (t < 0) {
      fs.word_id[i] = Vocabulary::kWordNull;
      fs.tag_id[i] = Vocabulary::kTagNull;
      fs.label_id[i] = Vocabulary::kLabelNull;
    } else if (t == 0) {
      fs.word_id[i] = Vocabulary::kWordRoot;
      fs.tag_id[i] = Vocabulary::kTagRoot;
      fs.label_id[i] = Vocabulary::kLabelNoLabel;
    } else {
      const Token& tok = sentence.tokens[t - 1];
      fs.word_id[i] = vocab.word_id(tok.form);
      fs.tag_id[i] = vocab.tag_id(tok.tag);
      fs.label_id[i] =
          config.head[t] >= 0 ? config.label[t] : Vocabulary::kLabelNoLabel;
    }
  }
  return fs;
}

}  // namespace chparser
