#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "chparser/features.hpp"
#include "doctest.h"
#include "treegen.hpp"

using namespace chparser;
using namespace chparser::testing;

namespace {

Vocabulary vocab_for(const Sentence& s) { return build_vocab({s}); }

Configuration shift_n(const Sentence& s, int n) {
  Configuration c = initial_config(s);
  for (int i = 0; i < n; ++i) c = apply(c, {TransitionKind::Shift, -1});
  return c;
}

// slot index bookkeeping, mirroring the fixed slot order
enum {
  S1, S2, S3, S4, B1, B2, B3, B4,
  S1_LC1, S1_LC2, S1_RC1, S1_RC2,
  S2_LC1, S2_LC2, S2_RC1, S2_RC2,
  S3_LC1, S3_LC2, S3_RC1, S3_RC2,
  S1_LC1_LC1, S1_LC1_RC1, S1_RC1_LC1, S1_RC1_RC1,
};

}  // namespace

TEST_CASE("initial configuration slots") {
  Sentence s = sentence_from_heads({2, 0, 2});
  Vocabulary v = vocab_for(s);
  FeatureSlots f = extract(initial_config(s), s, v);
  CHECK(f.token[S1] == 0);  // root on the stack
  CHECK(f.token[S2] == -1);
  CHECK(f.token[B1] == 1);
  CHECK(f.token[B2] == 2);
  CHECK(f.token[B3] == 3);
  CHECK(f.token[B4] == -1);
  // root triple
  CHECK(f.word_id[S1] == Vocabulary::kWordRoot);
  CHECK(f.tag_id[S1] == Vocabulary::kTagRoot);
  CHECK(f.label_id[S1] == Vocabulary::kLabelNoLabel);
  // absent triple
  CHECK(f.word_id[S2] == Vocabulary::kWordNull);
  CHECK(f.tag_id[S2] == Vocabulary::kTagNull);
  CHECK(f.label_id[S2] == Vocabulary::kLabelNull);
  // buffer tokens resolve against the vocabulary, unattached = <NOLABEL>
  CHECK(f.word_id[B1] == v.word_id(s.tokens[0].form));
  CHECK(f.tag_id[B1] == v.tag_id(s.tokens[0].tag));
  CHECK(f.label_id[B1] == Vocabulary::kLabelNoLabel);
  for (int slot = S1_LC1; slot <= S1_RC1_RC1; ++slot) {
    CHECK(f.token[slot] == -1);
    CHECK(f.word_id[slot] == Vocabulary::kWordNull);
  }
}

TEST_CASE("stack depth fills s1..s4 top-down") {
  Sentence s = sentence_from_heads({2, 3, 4, 0});
  Vocabulary v = vocab_for(s);
  FeatureSlots f = extract(shift_n(s, 4), s, v);
  CHECK(f.token[S1] == 4);
  CHECK(f.token[S2] == 3);
  CHECK(f.token[S3] == 2);
  CHECK(f.token[S4] == 1);
  CHECK(f.token[B1] == -1);
}

TEST_CASE("children slots and arc labels") {
  // build arcs under token 3: left children 1,2 and right child 4
  Sentence s = sentence_from_heads({3, 3, 0, 3, 3});
  Vocabulary v = vocab_for(s);
  Configuration c = shift_n(s, 3);
  c = apply(c, {TransitionKind::Left, v.label_id("l2")});   // 3 -> 2
  c = apply(c, {TransitionKind::Left, v.label_id("l1")});   // 3 -> 1
  c = apply(c, {TransitionKind::Shift, -1});                // push 4
  c = apply(c, {TransitionKind::Right, v.label_id("l1")});  // 3 -> 4
  FeatureSlots f = extract(c, s, v);
  REQUIRE(f.token[S1] == 3);
  CHECK(f.token[S1_LC1] == 1);
  CHECK(f.token[S1_LC2] == 2);
  CHECK(f.token[S1_RC1] == 4);
  CHECK(f.token[S1_RC2] == -1);
  // attached tokens carry their arc label
  CHECK(f.label_id[S1_LC1] == v.label_id("l1"));
  CHECK(f.label_id[S1_LC2] == v.label_id("l2"));
  CHECK(f.label_id[S1_RC1] == v.label_id("l1"));
  // the head itself is still unattached
  CHECK(f.label_id[S1] == Vocabulary::kLabelNoLabel);
}

TEST_CASE("grandchild slots") {
  // 1 <- 2 <- 3: token 3 on top with left child 2, whose left child is 1
  Sentence s = sentence_from_heads({2, 3, 0});
  Vocabulary v = vocab_for(s);
  Configuration c = shift_n(s, 2);
  c = apply(c, {TransitionKind::Left, v.label_id("l1")});  // 2 -> 1
  c = apply(c, {TransitionKind::Shift, -1});
  c = apply(c, {TransitionKind::Left, v.label_id("l2")});  // 3 -> 2
  FeatureSlots f = extract(c, s, v);
  REQUIRE(f.token[S1] == 3);
  REQUIRE(f.token[S1_LC1] == 2);
  CHECK(f.token[S1_LC1_LC1] == 1);
  CHECK(f.token[S1_LC1_RC1] == -1);
  CHECK(f.token[S1_RC1_LC1] == -1);
  CHECK(f.token[S1_RC1_RC1] == -1);
  CHECK(f.word_id[S1_LC1_LC1] == v.word_id(s.tokens[0].form));
}

TEST_CASE("unknown forms map to the UNK word id") {
  Sentence train = sentence_from_heads({0});
  Vocabulary v = vocab_for(train);
  Sentence s = sentence_from_heads({0});
  s.tokens[0].form = "unseen";
  FeatureSlots f = extract(initial_config(s), s, v);
  CHECK(f.word_id[B1] == Vocabulary::kWordUnk);
}

TEST_CASE("id triples stay consistent over a full derivation") {
  for (const auto& heads : all_trees(4)) {
    Sentence s = sentence_from_heads(heads);
    Vocabulary v = vocab_for(s);
    std::vector<int> gold(heads.size() + 1, -1);
    for (const Token& t : s.tokens) gold[t.index] = v.label_id(t.gold_label);
    try {
      Configuration c = initial_config(s);
      while (!is_terminal(c)) {
        FeatureSlots f = extract(c, s, v);
        for (int slot = 0; slot < kNumFeatureSlots; ++slot) {
          int tok = f.token[slot];
          if (tok < 0) {
            CHECK(f.word_id[slot] == Vocabulary::kWordNull);
            CHECK(f.tag_id[slot] == Vocabulary::kTagNull);
            CHECK(f.label_id[slot] == Vocabulary::kLabelNull);
          } else if (tok == 0) {
            CHECK(f.word_id[slot] == Vocabulary::kWordRoot);
            CHECK(f.tag_id[slot] == Vocabulary::kTagRoot);
          } else {
            CHECK(f.word_id[slot] == v.word_id(s.tokens[tok - 1].form));
            if (c.head[tok] < 0)
              CHECK(f.label_id[slot] == Vocabulary::kLabelNoLabel);
            else
              CHECK(f.label_id[slot] == c.label[tok]);
          }
        }
        c = apply(c, oracle_next(c, s, gold));
      }
    } catch (const UnreachableTreeError&) {
    }
  }
}
