#ifndef CHPARSER_CHARSEQ_HPP
#define CHPARSER_CHARSEQ_HPP

#include <string>
#include <vector>

#include "chparser/vocab.hpp"

namespace chparser {

constexpr int kCharSeqLength = 32;

// Fixed-length character window for the CNN input: SOW + chars + EOW,
// PAD split equally on both sides (extra PAD right); over-long cores keep
// the prefix and suffix with one MUL replacing the middle.
std::vector<int> pad_chars(const std::string& form, const Vocabulary& vocab,
                           int length = kCharSeqLength);

// Un-padded SOW + chars + EOW sequence for the LSTM input.
std::vector<int> char_ids(const std::string& form, const Vocabulary& vocab);

}  // namespace chparser

#endif
