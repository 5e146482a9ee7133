#include "chparser/charseq.hpp"

#include <stdexcept>

namespace chparser {

std::vector<int> char_ids(const std::string& form, const Vocabulary& vocab) {
  std::vector<int> core;
  core.push_back(Vocabulary::kCharSow);
  for (const std::string& c : utf8_chars(form)) core.push_back(vocab.char_id(c));
  core.push_back(Vocabulary::kCharEow);
  return core;
}

std::vector<int> pad_chars(const std::string& form, const Vocabulary& vocab, int length) {
  if (length < 5) throw std::invalid_argument("pad_chars: length must be >= 5");
  std::vector<int> core = char_ids(form, vocab);
  int L = static_cast<int>(core.size());
  std::vector<int> out;
  out.reserve(length);
  if (L > length) {
    int keep_front = (length - 1 + 1) / 2;  // ceil((length-1)/2)
    int keep_back = (length - 1) / 2;
    out.assign(core.begin(), core.begin() + keep_front);
    out.push_back(Vocabulary::kCharMul);
    out.insert(out.end(), core.end() - keep_back, core.end());
  } else {
    int pad = length - L;
    int left = pad / 2;  // extra PAD goes right
    out.assign(left, Vocabulary::kCharPad);
    out.insert(out.end(), core.begin(), core.end());
    out.insert(out.end(), pad - left, Vocabulary::kCharPad);
  }
  return out;
}

}  // namespace chparser
