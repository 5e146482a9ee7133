#ifndef CHPARSER_VOCAB_HPP
#define CHPARSER_VOCAB_HPP

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "chparser/conll.hpp"

namespace chparser {

// Splits a UTF-8 string into one string per codepoint. Bytes that do not
// form a valid sequence are kept as single characters.
std::vector<std::string> utf8_chars(const std::string& s);

class Vocabulary {
 public:
  // reserved ids
  static constexpr int kWordUnk = 0;
  static constexpr int kWordNull = 1;
  static constexpr int kWordRoot = 2;
  static constexpr int kTagNull = 0;
  static constexpr int kTagRoot = 1;
  static constexpr int kLabelNoLabel = 0;
  static constexpr int kLabelNull = 1;
  static constexpr int kCharSow = 0;
  static constexpr int kCharEow = 1;
  static constexpr int kCharMul = 2;
  static constexpr int kCharPad = 3;
  static constexpr int kCharUnk = 4;

  Vocabulary();

  int word_id(const std::string& form) const;    // UNK fallback
  int tag_id(const std::string& tag) const;      // NULL fallback
  int label_id(const std::string& label) const;  // NULL fallback
  int char_id(const std::string& ch) const;      // UNK fallback

  bool in_vocab(const std::string& form) const { return word_counts_.count(form) != 0; }
  long word_count(const std::string& form) const {
    auto it = word_counts_.find(form);
    return it == word_counts_.end() ? 0 : it->second;
  }

  int num_words() const { return static_cast<int>(words_.size()); }
  int num_tags() const { return static_cast<int>(tags_.size()); }
  int num_labels() const { return static_cast<int>(labels_.size()); }
  int num_chars() const { return static_cast<int>(chars_.size()); }

  const std::string& word(int id) const { return words_[id]; }
  const std::string& tag(int id) const { return tags_[id]; }
  const std::string& label(int id) const { return labels_[id]; }
  const std::string& character(int id) const { return chars_[id]; }

  int add_word(const std::string& form);
  int add_tag(const std::string& tag);
  int add_label(const std::string& label);
  int add_char(const std::string& ch);
  void count_word(const std::string& form) { ++word_counts_[form]; }

  void save(std::ostream& out) const;
  static Vocabulary load(std::istream& in);

 private:
  std::vector<std::string> words_, tags_, labels_, chars_;
  std::unordered_map<std::string, int> word_index_, tag_index_, label_index_, char_index_;
  std::unordered_map<std::string, long> word_counts_;
};

// Indexes every form/tag/label/character of the training corpus in first
// occurrence order, after the reserved symbols.
Vocabulary build_vocab(const std::vector<Sentence>& train);

struct EmbeddingFile {
  int dimension = 0;
  std::unordered_map<std::string, std::vector<float>> entries;
};

// word2vec text format; an optional "count dim" header line is skipped,
// duplicate forms keep the first occurrence.
EmbeddingFile load_embeddings(std::istream& in, int expected_dim);

}  // namespace chparser

#endif
