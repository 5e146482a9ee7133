#include "chparser/vocab.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace chparser {

std::vector<std::string> utf8_chars(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    size_t len = 1;
    if ((b & 0x80) == 0x00)
      len = 1;
    else if ((b & 0xE0) == 0xC0)
      len = 2;
    else if ((b & 0xF0) == 0xE0)
      len = 3;
    else if ((b & 0xF8) == 0xF0)
      len = 4;
    if (i + len > s.size()) len = 1;
    for (size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(s[i + j]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

Vocabulary::Vocabulary() {
  add_word("<UNK>");
  add_word("<NULL>");
  add_word("<ROOT>");
  add_tag("<NULL>");
  add_tag("<ROOT>");
  add_label("<NOLABEL>");
  add_label("<NULL>");
  add_char("<SOW>");
  add_char("<EOW>");
  add_char("<MUL>");
  add_char("<PAD>");
  add_char("<UNK>");
}

int Vocabulary::word_id(const std::string& form) const {
  auto it = word_index_.find(form);
  return it == word_index_.end() ? kWordUnk : it->second;
}
int Vocabulary::tag_id(const std::string& tag) const {
  auto it = tag_index_.find(tag);
  return it == tag_index_.end() ? kTagNull : it->second;
}
int Vocabulary::label_id(const std::string& label) const {
  auto it = label_index_.find(label);
  return it == label_index_.end() ? kLabelNull : it->second;
}
int Vocabulary::char_id(const std::string& ch) const {
  auto it = char_index_.find(ch);
  return it == char_index_.end() ? kCharUnk : it->second;
}

int Vocabulary::add_word(const std::string& form) {
  auto it = word_index_.find(form);
  if (it != word_index_.end()) return it->second;
  int id = static_cast<int>(words_.size());
  words_.push_back(form);
  word_index_[form] = id;
  return id;
}
int Vocabulary::add_tag(const std::string& tag) {
  auto it = tag_index_.find(tag);
  if (it != tag_index_.end()) return it->second;
  int id = static_cast<int>(tags_.size());
  tags_.push_back(tag);
  tag_index_[tag] = id;
  return id;
}
int Vocabulary::add_label(const std::string& label) {
  auto it = label_index_.find(label);
  if (it != label_index_.end()) return it->second;
  int id = static_cast<int>(labels_.size());
  labels_.push_back(label);
  label_index_[label] = id;
  return id;
}
int Vocabulary::add_char(const std::string& ch) {
  auto it = char_index_.find(ch);
  if (it != char_index_.end()) return it->second;
  int id = static_cast<int>(chars_.size());
  chars_.push_back(ch);
  char_index_[ch] = id;
  return id;
}

Vocabulary build_vocab(const std::vector<Sentence>& train) {
  if (train.empty()) throw std::runtime_error("build_vocab: empty corpus");
  Vocabulary v;
  for (const Sentence& s : train) {
    for (const Token& t : s.tokens) {
      v.add_word(t.form);
      v.count_word(t.form);
      v.add_tag(t.tag);
      v.add_label(t.gold_label);
      for (const std::string& c : utf8_chars(t.form)) v.add_char(c);
    }
  }
  return v;
}

namespace {
void write_string(std::ostream& out, const std::string& s) {
  uint32_t n = static_cast<uint32_t>(s.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(s.data(), n);
}
std::string read_string(std::istream& in) {
  uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw std::runtime_error("vocabulary: truncated input");
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw std::runtime_error("vocabulary: truncated input");
  return s;
}
void write_table(std::ostream& out, const std::vector<std::string>& t) {
  uint32_t n = static_cast<uint32_t>(t.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (const std::string& s : t) write_string(out, s);
}
}  // namespace

void Vocabulary::save(std::ostream& out) const {
  write_table(out, words_);
  write_table(out, tags_);
  write_table(out, labels_);
  write_table(out, chars_);
  uint32_t n = static_cast<uint32_t>(word_counts_.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  // deterministic order: by word id
  for (const std::string& w : words_) {
    auto it = word_counts_.find(w);
    if (it == word_counts_.end()) continue;
    write_string(out, it->first);
    int64_t c = it->second;
    out.write(reinterpret_cast<const char*>(&c), sizeof c);
  }
}

Vocabulary Vocabulary::load(std::istream& in) {
  Vocabulary v;
  v.words_.clear();
  v.tags_.clear();
  v.labels_.clear();
  v.chars_.clear();
  v.word_index_.clear();
  v.tag_index_.clear();
  v.label_index_.clear();
  v.char_index_.clear();
  auto read_table = [&](std::vector<std::string>& t,
                        std::unordered_map<std::string, int>& idx) {
    uint32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in) throw std::runtime_error("vocabulary: truncated input");
    for (uint32_t i = 0; i < n; ++i) {
      std::string s = read_string(in);
      idx[s] = static_cast<int>(t.size());
      t.push_back(std::move(s));
    }
  };
  read_table(v.words_, v.word_index_);
  read_table(v.tags_, v.tag_index_);
  read_table(v.labels_, v.label_index_);
  read_table(v.chars_, v.char_index_);
  uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw std::runtime_error("vocabulary: truncated input");
  for (uint32_t i = 0; i < n; ++i) {
    std::string s = read_string(in);
    int64_t c = 0;
    in.read(reinterpret_cast<char*>(&c), sizeof c);
    if (!in) throw std::runtime_error("vocabulary: truncated input");
    v.word_counts_[s] = c;
  }
  return v;
}

EmbeddingFile load_embeddings(std::istream& in, int expected_dim) {
  EmbeddingFile ef;
  ef.dimension = expected_dim;
  std::string line;
  size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string form;
    ss >> form;
    std::vector<float> vec;
    double x;
    while (ss >> x) vec.push_back(static_cast<float>(x));
    if (first) {
      first = false;
      // "count dim" header: a bare pair of integers
      if (vec.size() == 1) {
        bool numeric = !form.empty();
        for (char c : form)
          if (c < '0' || c > '9') numeric = false;
        if (numeric && vec[0] == static_cast<long>(vec[0])) continue;
      }
    }
    if (static_cast<int>(vec.size()) != expected_dim)
      throw std::runtime_error("embeddings line " + std::to_string(line_no) + ": expected " +
                               std::to_string(expected_dim) + " values, got " +
                               std::to_string(vec.size()));
    ef.entries.emplace(form, std::move(vec));  // keeps the first occurrence
  }
  return ef;
}

}  // namespace chparser
