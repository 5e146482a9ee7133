#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "chparser/conll.hpp"
#include "doctest.h"

using namespace chparser;

namespace {
const char* kTiny =
    "1\tein\t_\t_\tART\t_\t2\tdet\t_\t_\n"
    "2\tHaus\t_\t_\tN\t_\t0\troot\t_\t_\n";
}

TEST_CASE("read minimal sentence") {
  std::istringstream in(kTiny);
  auto sents = read_conll(in);
  REQUIRE(sents.size() == 1);
  REQUIRE(sents[0].size() == 2);
  CHECK(sents[0].tokens[0].form == "ein");
  CHECK(sents[0].tokens[0].tag == "ART");
  CHECK(sents[0].tokens[0].gold_head == 2);
  CHECK(sents[0].tokens[1].gold_head == 0);
  CHECK(sents[0].tokens[1].gold_label == "root");
}

TEST_CASE("empty stream") {
  std::istringstream in("");
  CHECK(read_conll(in).empty());
}

TEST_CASE("non-numeric head names the line") {
  std::istringstream in("1\ta\t_\t_\tN\t_\tx\tdep\t_\t_\n");
  try {
    read_conll(in);
    FAIL("expected ConllError");
  } catch (const ConllError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("wrong column count") {
  std::istringstream in("1\ta\tN\n");
  CHECK_THROWS_AS(read_conll(in), ConllError);
}

TEST_CASE("cycle rejected") {
  std::istringstream in(
      "1\ta\t_\t_\tN\t_\t2\tx\t_\t_\n"
      "2\tb\t_\t_\tN\t_\t1\tx\t_\t_\n"
      "3\tc\t_\t_\tN\t_\t0\troot\t_\t_\n");
  CHECK_THROWS_AS(read_conll(in), ConllError);
}

TEST_CASE("multi-root rejected") {
  std::istringstream in(
      "1\ta\t_\t_\tN\t_\t0\troot\t_\t_\n"
      "2\tb\t_\t_\tN\t_\t0\troot\t_\t_\n");
  CHECK_THROWS_AS(read_conll(in), ConllError);
  std::istringstream in2(
      "1\ta\t_\t_\tN\t_\t0\troot\t_\t_\n"
      "2\tb\t_\t_\tN\t_\t0\troot\t_\t_\n");
  CHECK(read_conll(in2, 5, false).size() == 1);  // lenient mode
}

TEST_CASE("multiword rows skipped") {
  std::istringstream in(
      "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tde\t_\t_\tP\t_\t2\tcase\t_\t_\n"
      "2\tel\t_\t_\tD\t_\t0\troot\t_\t_\n");
  auto sents = read_conll(in);
  REQUIRE(sents.size() == 1);
  CHECK(sents[0].size() == 2);
}

TEST_CASE("round trip on consumed columns") {
  std::istringstream in(kTiny);
  auto sents = read_conll(in);
  std::ostringstream out;
  write_conll(out, sents, {gold_parse(sents[0])});
  std::istringstream back(out.str());
  auto again = read_conll(back);
  REQUIRE(again.size() == 1);
  for (int i = 0; i < 2; ++i) {
    CHECK(again[0].tokens[i].form == sents[0].tokens[i].form);
    CHECK(again[0].tokens[i].tag == sents[0].tokens[i].tag);
    CHECK(again[0].tokens[i].gold_head == sents[0].tokens[i].gold_head);
    CHECK(again[0].tokens[i].gold_label == sents[0].tokens[i].gold_label);
  }
}

TEST_CASE("round trip property over random trees") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 1 + static_cast<int>(rng() % 8);
    Sentence s;
    int root = 1 + static_cast<int>(rng() % n);
    for (int i = 1; i <= n; ++i) {
      Token t;
      t.index = i;
      t.form = "w" + std::to_string(static_cast<int>(rng() % 20));
      t.tag = "T" + std::to_string(static_cast<int>(rng() % 4));
      t.gold_label = i == root ? "root" : "l" + std::to_string(static_cast<int>(rng() % 3));
      // heads chosen toward earlier tokens or the root token: acyclic by construction
      t.gold_head = i == root ? 0 : (i == 1 ? root : (rng() % 2 ? root : 1 + static_cast<int>(rng() % (i - 1))));
      if (i != root && t.gold_head == i) t.gold_head = root;
      s.tokens.push_back(t);
    }
    // skip draws that chained a cycle through token 1
    std::ostringstream tmp;
    write_conll(tmp, {s}, {gold_parse(s)});
    std::istringstream back(tmp.str());
    std::vector<Sentence> again;
    try {
      again = read_conll(back);
    } catch (const ConllError&) {
      continue;
    }
    REQUIRE(again.size() == 1);
    for (int i = 0; i < n; ++i) {
      CHECK(again[0].tokens[i].form == s.tokens[i].form);
      CHECK(again[0].tokens[i].gold_head == s.tokens[i].gold_head);
      CHECK(again[0].tokens[i].gold_label == s.tokens[i].gold_label);
    }
  }
}

TEST_CASE("predicted heads win over gold in output") {
  std::istringstream in(kTiny);
  auto sents = read_conll(in);
  ParseResult pred = {{2, "x"}, {0, "root"}};
  pred[0].head = 0;  // disagree with gold on purpose... keep a valid single-root tree
  pred[0].label = "root";
  pred[1].head = 1;
  pred[1].label = "y";
  std::ostringstream out;
  write_conll(out, sents, {pred});
  std::istringstream back(out.str());
  auto again = read_conll(back);
  CHECK(again[0].tokens[0].gold_head == 0);
  CHECK(again[0].tokens[1].gold_head == 1);
  CHECK(again[0].tokens[1].gold_label == "y");
}

TEST_CASE("missing prediction errors") {
  std::istringstream in(kTiny);
  auto sents = read_conll(in);
  std::ostringstream out;
  CHECK_THROWS_AS(write_conll(out, sents, {ParseResult{{2, "det"}}}), ConllError);
}

TEST_CASE("zero sentences give empty output") {
  std::ostringstream out;
  write_conll(out, {}, {});
  CHECK(out.str().empty());
}
