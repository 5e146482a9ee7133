#include "chparser/eval.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace chparser {

Score score_corpus(const std::vector<Sentence>& gold,
                   const std::vector<ParseResult>& predicted, const Vocabulary* vocab) {
  if (gold.size() != predicted.size())
    throw std::runtime_error("score: sentence count mismatch (" +
                             std::to_string(gold.size()) + " vs " +
                             std::to_string(predicted.size()) + ")");
  Score sc;
  for (size_t i = 0; i < gold.size(); ++i) {
    const Sentence& s = gold[i];
    const ParseResult& p = predicted[i];
    if (p.size() != s.tokens.size())
      throw std::runtime_error("score: token count mismatch in sentence " +
                               std::to_string(i + 1));
    for (const Token& t : s.tokens) {
      const ParsedToken& pt = p[t.index - 1];
      bool head_ok = pt.head == t.gold_head;
      bool label_ok = head_ok && pt.label == t.gold_label;
      auto tally = [&](BucketScore& b) {
        ++b.total;
        if (head_ok) ++b.correct_unlabeled;
        if (label_ok) ++b.correct_labeled;
      };
      tally(sc.all);
      if (vocab) {
        bool self_iv = vocab->in_vocab(t.form);
        bool head_iv = t.gold_head == 0 ||
                       vocab->in_vocab(s.tokens[t.gold_head - 1].form);
        tally(self_iv && head_iv ? sc.iv : sc.oov);
      }
    }
  }
  return sc;
}

MaskSpec MaskSpec::parse(const std::string& pattern) {
  if (pattern.size() != 3) throw std::runtime_error("mask pattern must have 3 characters");
  const char visible[3] = {'a', 'b', 'c'};
  MaskSpec spec;
  int masked = 0;
  for (int i = 0; i < 3; ++i) {
    char c = static_cast<char>(::tolower(pattern[i]));
    if (c == 'x') {
      spec.masked[i] = true;
      ++masked;
    } else if (c != visible[i]) {
      throw std::runtime_error("bad mask pattern '" + pattern + "' (use e.g. axc, xxc)");
    }
  }
  if (masked == 0 || masked == 3)
    throw std::runtime_error("mask pattern must mask one or two thirds");
  return spec;
}

std::string MaskSpec::name() const {
  const char visible[3] = {'a', 'b', 'c'};
  std::string s;
  for (int i = 0; i < 3; ++i) s += masked[i] ? 'x' : visible[i];
  return s;
}

std::string mask_form(const std::string& form, const MaskSpec& spec) {
  static const std::string kUnkChar = "\xEF\xBF\xBD";  // U+FFFD
  std::vector<std::string> chars = utf8_chars(form);
  int L = static_cast<int>(chars.size());
  int b1 = (L + 2) / 3;      // ceil(L/3)
  int b2 = L - L / 3;        // L - floor(L/3)
  std::string out;
  for (int i = 0; i < L; ++i) {
    int third = i < b1 ? 0 : (i < b2 ? 1 : 2);
    out += spec.masked[third] ? kUnkChar : chars[i];
  }
  return out;
}

std::vector<Sentence> mask_corpus(const std::vector<Sentence>& corpus, const MaskSpec& spec) {
  std::vector<Sentence> out = corpus;
  for (Sentence& s : out)
    for (Token& t : s.tokens) t.form = mask_form(t.form, spec);
  return out;
}

namespace {
std::string pct(double frac) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * frac);
  return buf;
}
}  // namespace

std::string report(const std::vector<std::pair<std::string, Score>>& results, bool tsv) {
  bool buckets = false;
  for (const auto& [name, sc] : results)
    if (sc.iv.total + sc.oov.total > 0) buckets = true;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"run", "LAS", "UAS"};
  if (buckets) {
    header.insert(header.end(), {"IV-LAS", "OOV-LAS"});
  }
  rows.push_back(header);
  for (const auto& [name, sc] : results) {
    std::vector<std::string> row = {name, pct(sc.all.las()), pct(sc.all.uas())};
    if (buckets) {
      row.push_back(pct(sc.iv.las()));
      row.push_back(pct(sc.oov.las()));
    }
    rows.push_back(row);
  }
  if (results.size() == 2) {
    const Score& a = results[0].second;
    const Score& b = results[1].second;
    std::vector<std::string> row = {"delta", pct(b.all.las() - a.all.las()),
                                    pct(b.all.uas() - a.all.uas())};
    if (buckets) {
      row.push_back(pct(b.iv.las() - a.iv.las()));
      row.push_back(pct(b.oov.las() - a.oov.las()));
    }
    rows.push_back(row);
  }
  std::ostringstream out;
  if (tsv) {
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << row[c];
      out << '\n';
    }
  } else {
    std::vector<size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
      for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        if (c) out << "  ";
        out << row[c];
        for (size_t pad = row[c].size(); pad < width[c]; ++pad) out << ' ';
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace chparser
