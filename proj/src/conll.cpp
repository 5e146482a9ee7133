#include "chparser/conll.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace chparser {

namespace {

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t' || c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

void check_tree(const Sentence& s, size_t sent_no) {
  int n = s.size();
  int roots = 0;
  for (const Token& t : s.tokens) {
    if (t.gold_head < 0 || t.gold_head > n || t.gold_head == t.index)
      throw ConllError("sentence " + std::to_string(sent_no) +
                       ": head out of range for token " +
                       std::to_string(t.index));
    if (t.gold_head == 0) ++roots;
  }
  if (roots != 1)
    throw ConllError("sentence " + std::to_string(sent_no) + ": expected 1 root child, found " +
                     std::to_string(roots));
  // cycle check: follow heads up from every token
  for (int i = 1; i <= n; ++i) {
    int cur = i, steps = 0;
    while (cur != 0) {
      cur = s.tokens[cur - 1].gold_head;
      if (++steps > n)
        throw ConllError("sentence " + std::to_string(sent_no) + ": head cycle involving token " +
                         std::to_string(i));
    }
  }
}

}  // namespace

std::vector<Sentence> read_conll(std::istream& in, int pos_column,
                                 bool validate_trees) {
  std::vector<Sentence> sentences;
  Sentence cur;
  std::string line;
  size_t line_no = 0;
  auto flush = [&] {
    if (!cur.tokens.empty()) {
      if (validate_trees) check_tree(cur, sentences.size() + 1);
      sentences.push_back(std::move(cur));
      cur = Sentence{};
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    std::vector<std::string> f = split_fields(line);
    if (!is_integer(f[0])) continue;  // multiword / empty-node rows
    if (static_cast<int>(f.size()) < 8 || static_cast<int>(f.size()) < pos_column)
      throw ConllError("line " + std::to_string(line_no) + ": expected >= 8 columns, got " +
                       std::to_string(f.size()));
    if (!is_integer(f[6]))
      throw ConllError("line " + std::to_string(line_no) + ": non-numeric HEAD '" + f[6] + "'");
    Token t;
    t.index = std::stoi(f[0]);
    t.form = f[1];
    t.tag = f[pos_column - 1];
    t.gold_head = std::stoi(f[6]);
    t.gold_label = f[7];
    if (t.form.empty())
      throw ConllError("line " + std::to_string(line_no) + ": empty FORM");
    if (t.index != cur.size() + 1)
      throw ConllError("line " + std::to_string(line_no) + ": token ID " + f[0] +
                       " out of sequence");
    cur.tokens.push_back(std::move(t));
  }
  flush();
  return sentences;
}

void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const std::vector<ParseResult>& predicted, int pos_column) {
  if (sentences.size() != predicted.size())
    throw ConllError("write_conll: " + std::to_string(sentences.size()) + " sentences but " +
                     std::to_string(predicted.size()) + " predictions");
  for (size_t i = 0; i < sentences.size(); ++i) {
    const Sentence& s = sentences[i];
    const ParseResult& p = predicted[i];
    if (p.size() != s.tokens.size())
      throw ConllError("write_conll: sentence " + std::to_string(i + 1) +
                       " missing predictions (" + std::to_string(p.size()) + " of " +
                       std::to_string(s.tokens.size()) + ")");
    for (const Token& t : s.tokens) {
      const ParsedToken& pt = p[t.index - 1];
      std::string cols[10] = {std::to_string(t.index), t.form, "_", "_", "_",
                              "_", std::to_string(pt.head), pt.label, "_", "_"};
      cols[pos_column - 1] = t.tag;
      for (int c = 0; c < 10; ++c) {
        if (c) out << '\t';
        out << cols[c];
      }
      out << '\n';
    }
    out << '\n';
  }
}

ParseResult gold_parse(const Sentence& s) {
  ParseResult r;
  r.reserve(s.tokens.size());
  for (const Token& t : s.tokens) r.push_back({t.gold_head, t.gold_label});
  return r;
}

}  // namespace chparser
