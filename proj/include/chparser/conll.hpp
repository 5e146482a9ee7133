#ifndef CHPARSER_CONLL_HPP
#define CHPARSER_CONLL_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace chparser {

struct Token {
  int index = 0;            // 1-based position in the sentence
  std::string form;
  std::string tag;          // fine-grained POS
  int gold_head = 0;        // 0 = artificial root
  std::string gold_label;
};

struct Sentence {
  std::vector<Token> tokens;
  int size() const { return static_cast<int>(tokens.size()); }
};

// Predicted (head, label) for one token.
struct ParsedToken {
  int head = 0;
  std::string label;
};
using ParseResult = std::vector<ParsedToken>;

struct ConllError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads tab/space separated CoNLL rows (ID FORM ... TAG ... HEAD DEPREL),
// blank lines separating sentences. Rows whose ID is not a plain integer
// (multiword ranges, empty nodes) are skipped. pos_column is 1-based
// (5 = CoNLL-X fine POSTAG, 4 = CoNLL-U UPOS). When validate_trees is set,
// each sentence must be a single tree hanging off the artificial root with
// exactly one root child.
std::vector<Sentence> read_conll(std::istream& in, int pos_column = 5,
                                 bool validate_trees = true);

void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const std::vector<ParseResult>& predicted, int pos_column = 5);

// Convenience: the gold arcs of a sentence as a ParseResult.
ParseResult gold_parse(const Sentence& s);

}  // namespace chparser

#endif
