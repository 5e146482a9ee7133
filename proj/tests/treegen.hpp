#ifndef CHPARSER_TESTS_TREEGEN_HPP
#define CHPARSER_TESTS_TREEGEN_HPP

// Test-only helpers: exhaustive tree enumeration, projectivity / gap degree,
// and a brute-force derivability search independent of the oracle.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "chparser/transition.hpp"

namespace chparser::testing {

inline Sentence sentence_from_heads(const std::vector<int>& heads,
                                    const std::vector<std::string>* labels = nullptr) {
  Sentence s;
  for (size_t i = 0; i < heads.size(); ++i) {
    Token t;
    t.index = static_cast<int>(i + 1);
    t.form = "w" + std::to_string(i + 1);
    t.tag = "T";
    t.gold_head = heads[i];
    t.gold_label = labels ? (*labels)[i]
                          : (heads[i] == 0 ? "root" : "l" + std::to_string((i % 3) + 1));
    s.tokens.push_back(t);
  }
  return s;
}

// valid = every token reaches 0, exactly one child of 0
inline bool valid_tree(const std::vector<int>& heads) {
  int n = static_cast<int>(heads.size());
  int roots = 0;
  for (int h : heads)
    if (h == 0) ++roots;
  if (roots != 1) return false;
  for (int i = 1; i <= n; ++i) {
    int cur = i, steps = 0;
    while (cur != 0) {
      if (heads[cur - 1] == cur) return false;
      cur = heads[cur - 1];
      if (++steps > n) return false;
    }
  }
  return true;
}

// all head assignments over n tokens forming valid single-root trees
inline std::vector<std::vector<int>> all_trees(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> heads(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (valid_tree(heads)) out.push_back(heads);
      return;
    }
    for (int h = 0; h <= n; ++h) {
      if (h == i + 1) continue;
      heads[i] = h;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// projective = no crossing arcs and no arc covering the root child
inline bool projective(const std::vector<int>& heads) {
  int n = static_cast<int>(heads.size());
  auto span = [&](int d) {
    int h = heads[d - 1];
    return std::pair<int, int>(std::min(h, d), std::max(h, d));
  };
  for (int d1 = 1; d1 <= n; ++d1)
    for (int d2 = d1 + 1; d2 <= n; ++d2) {
      auto [a1, b1] = span(d1);
      auto [a2, b2] = span(d2);
      if (a1 < a2 && a2 < b1 && b1 < b2) return false;
      if (a2 < a1 && a1 < b2 && b2 < b1) return false;
    }
  return true;
}

// max over tokens of (number of contiguous blocks of the projection) - 1
inline int gap_degree(const std::vector<int>& heads) {
  int n = static_cast<int>(heads.size());
  int worst = 0;
  for (int v = 0; v <= n; ++v) {
    std::vector<bool> in(n + 1, false);
    in[v] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int i = 1; i <= n; ++i)
        if (!in[i] && in[heads[i - 1]]) {
          in[i] = true;
          grew = true;
        }
    }
    int blocks = 0;
    bool prev = false;
    for (int i = v == 0 ? 0 : 1; i <= n; ++i) {
      if (in[i] && !prev) ++blocks;
      prev = in[i];
    }
    worst = std::max(worst, blocks - 1);
  }
  return worst;
}

// Derivability by *any* transition sequence, searched with backtracking.
// Arc transitions are only tried when they build a gold arc whose dependent
// has all its gold dependents attached (anything else can never recover).
inline bool brute_force_derivable(const std::vector<int>& heads, bool single_root = true) {
  int n = static_cast<int>(heads.size());
  Sentence s = sentence_from_heads(heads);
  std::vector<int> labels(n + 1, 2);
  std::vector<int> gold_children(n + 1, 0);
  for (int h : heads) ++gold_children[h];
  std::function<bool(const Configuration&)> rec = [&](const Configuration& c) -> bool {
    if (is_terminal(c)) return true;
    auto ok = legal(c, single_root);
    auto deps_done = [&](int tok) {
      return static_cast<int>(c.children[tok].size()) == gold_children[tok];
    };
    auto try_arc = [&](TransitionKind k, int head, int dep) {
      if (!ok[int(k)]) return false;
      if (heads[dep - 1] != head || !deps_done(dep)) return false;
      return rec(apply(c, {k, labels[dep]}, single_root));
    };
    int sz = static_cast<int>(c.stack.size());
    if (sz >= 2) {
      int s1 = c.stack_at(0), s2 = c.stack_at(1);
      if (s2 != 0 && try_arc(TransitionKind::Left, s1, s2)) return true;
      if (try_arc(TransitionKind::Right, s2, s1)) return true;
    }
    if (sz >= 3) {
      int s1 = c.stack_at(0), s3 = c.stack_at(2);
      if (s3 != 0 && try_arc(TransitionKind::Left2, s1, s3)) return true;
      if (try_arc(TransitionKind::Right2, s3, s1)) return true;
    }
    if (ok[int(TransitionKind::Shift)])
      return rec(apply(c, {TransitionKind::Shift, -1}, single_root));
    return false;
  };
  return rec(initial_config(s));
}

}  // namespace chparser::testing

#endif
