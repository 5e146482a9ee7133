#ifndef CHPARSER_EVAL_HPP
#define CHPARSER_EVAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "chparser/conll.hpp"
#include "chparser/vocab.hpp"

namespace chparser {

struct BucketScore {
  long correct_labeled = 0;
  long correct_unlabeled = 0;
  long total = 0;
  double las() const { return total ? double(correct_labeled) / total : 0.0; }
  double uas() const { return total ? double(correct_unlabeled) / total : 0.0; }
};

// Attachment scores including punctuation; iv/oov populated only when a
// vocabulary was supplied.
struct Score {
  BucketScore all, iv, oov;
};

Score score_corpus(const std::vector<Sentence>& gold,
                   const std::vector<ParseResult>& predicted,
                   const Vocabulary* vocab = nullptr);

// A token is IV when both its own form and its gold head's form are in the
// training vocabulary (the root counts as in-vocabulary).
inline Score score_with_buckets(const std::vector<Sentence>& gold,
                                const std::vector<ParseResult>& predicted,
                                const Vocabulary& vocab) {
  return score_corpus(gold, predicted, &vocab);
}

// Which of the three word thirds (prefix / stem / suffix approximation)
// are masked.
struct MaskSpec {
  bool masked[3] = {false, false, false};
  // patterns: xbc axc abx axx xbx xxc ('x' = masked third)
  static MaskSpec parse(const std::string& pattern);
  std::string name() const;
};

// Replaces every character of the masked thirds by U+FFFD, which is mapped
// to the character-level <UNK> at lookup time. Only FORM changes.
std::string mask_form(const std::string& form, const MaskSpec& spec);
std::vector<Sentence> mask_corpus(const std::vector<Sentence>& corpus, const MaskSpec& spec);

// Aligned plain-text table of named scores (or tab-separated when tsv);
// with exactly two runs a delta row (later - earlier) is appended.
std::string report(const std::vector<std::pair<std::string, Score>>& results,
                   bool tsv = false);

}  // namespace chparser

#endif
