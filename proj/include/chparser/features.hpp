#ifndef CHPARSER_FEATURES_HPP
#define CHPARSER_FEATURES_HPP

#include <array>

#include "chparser/transition.hpp"
#include "chparser/vocab.hpp"

namespace chparser {

constexpr int kNumFeatureSlots = 24;

// The 24 token slots in fixed order:
//   s1..s4, b1..b4,
//   s1.lc1 s1.lc2 s1.rc1 s1.rc2, s2.(same), s3.(same),
//   s1.lc1.lc1 s1.lc1.rc1 s1.rc1.lc1 s1.rc1.rc1
// token = sentence index, 0 = root, -1 = absent. The id triples are resolved
// against the vocabulary; unattached stack/buffer tokens get <NOLABEL>,
// absent slots the NULL ids.
struct FeatureSlots {
  std::array<int, kNumFeatureSlots> token;
  std::array<int, kNumFeatureSlots> word_id;
  std::array<int, kNumFeatureSlots> tag_id;
  std::array<int, kNumFeatureSlots> label_id;
};

FeatureSlots extract(const Configuration& config, const Sentence& sentence,
                     const Vocabulary& vocab);

}  // namespace chparser

#endif
