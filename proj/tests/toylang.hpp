#ifndef CHPARSER_TESTS_TOYLANG_HPP
#define CHPARSER_TESTS_TOYLANG_HPP

// Synthetic agglutinative language for the OOV experiments. Words are
// stem + suffix where the suffix alone decides the dependency label:
//   -ka  subject noun, attaches to the verb
//   -ro  object noun, attaches to the verb
//   -ne  genitive, attaches to the following noun
//   -ta  verb, attaches to the root
// Subject and object phrases appear in random order and every token carries
// the same POS tag, so a parser without access to word-internal structure
// cannot label an unseen form better than chance.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "chparser/conll.hpp"

namespace chparser::testing {

struct ToyLanguage {
  std::vector<std::string> train_stems;  // noun stems seen in training
  std::vector<std::string> oov_stems;    // noun stems held out for dev
  std::vector<std::string> verb_stems;   // shared, so noun heads stay in-vocabulary
};

inline std::string toy_syllable(std::mt19937_64& rng) {
  static const std::string consonants = "bdgklmnprstv";
  static const std::string vowels = "aeiou";
  std::string s;
  s += consonants[rng() % consonants.size()];
  s += vowels[rng() % vowels.size()];
  return s;
}

inline ToyLanguage make_toy_language(uint64_t seed, int train_stems = 40, int oov_stems = 40,
                                     int verbs = 12) {
  std::mt19937_64 rng(seed);
  ToyLanguage lang;
  std::set<std::string> used;
  auto fresh_stem = [&] {
    for (;;) {
      std::string s = toy_syllable(rng) + toy_syllable(rng) + toy_syllable(rng);
      if (used.insert(s).second) return s;
    }
  };
  for (int i = 0; i < train_stems; ++i) lang.train_stems.push_back(fresh_stem());
  for (int i = 0; i < oov_stems; ++i) lang.oov_stems.push_back(fresh_stem());
  for (int i = 0; i < verbs; ++i) lang.verb_stems.push_back(fresh_stem());
  return lang;
}

// One sentence: [gen?] noun-ka and [gen?] noun-ro phrases in random order,
// then the verb. oov_fraction picks noun stems from the held-out pool.
inline Sentence toy_sentence(const ToyLanguage& lang, std::mt19937_64& rng,
                             double oov_fraction = 0.0) {
  auto noun_stem = [&]() -> const std::string& {
    bool oov = oov_fraction > 0 &&
               std::uniform_real_distribution<double>(0, 1)(rng) < oov_fraction;
    const auto& pool = oov ? lang.oov_stems : lang.train_stems;
    return pool[rng() % pool.size()];
  };
  struct Word {
    std::string form;
    int head_offset;  // -1 = the verb, otherwise relative token offset
    std::string label;
  };
  std::vector<Word> words;
  auto phrase = [&](const char* suffix, const char* label) {
    if (rng() % 10 < 3)  // optional genitive modifier of the next noun
      words.push_back({noun_stem() + "ne", 1, "gen"});
    words.push_back({noun_stem() + suffix, -1, label});
  };
  if (rng() % 2) {
    phrase("ka", "subj");
    phrase("ro", "obj");
  } else {
    phrase("ro", "obj");
    phrase("ka", "subj");
  }
  words.push_back({lang.verb_stems[rng() % lang.verb_stems.size()] + "ta", 0, "root"});
  Sentence s;
  int verb_index = static_cast<int>(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    Token t;
    t.index = static_cast<int>(i + 1);
    t.form = words[i].form;
    t.tag = "X";
    t.gold_label = words[i].label;
    if (words[i].label == "root")
      t.gold_head = 0;
    else if (words[i].head_offset == -1)
      t.gold_head = verb_index;
    else
      t.gold_head = t.index + words[i].head_offset;
    s.tokens.push_back(t);
  }
  return s;
}

inline std::vector<Sentence> toy_corpus(const ToyLanguage& lang, int sentences,
                                        uint64_t seed, double oov_fraction = 0.0) {
  std::mt19937_64 rng(seed);
  std::vector<Sentence> out;
  out.reserve(sentences);
  for (int i = 0; i < sentences; ++i) out.push_back(toy_sentence(lang, rng, oov_fraction));
  return out;
}

}  // namespace chparser::testing

#endif
