#include "chparser/transition.hpp"

#include <algorithm>

namespace chparser {

const char* kind_name(TransitionKind k) {
  switch (k) {
    case TransitionKind::Shift: return "Shift";
    case TransitionKind::Left: return "Left";
    case TransitionKind::Right: return "Right";
    case TransitionKind::Left2: return "Left-2";
    case TransitionKind::Right2: return "Right-2";
  }
  return "?";
}

int Configuration::num_arcs() const {
  int c = 0;
  for (int i = 1; i <= n; ++i)
    if (head[i] >= 0) ++c;
  return c;
}

std::vector<Arc> Configuration::arcs() const {
  std::vector<Arc> out;
  for (int i = 1; i <= n; ++i)
    if (head[i] >= 0) out.push_back({head[i], i, label[i]});
  return out;
}

Configuration initial_config(const Sentence& sentence) {
  int n = sentence.size();
  if (n == 0) throw std::invalid_argument("initial_config: empty sentence");
  Configuration c;
  c.stack = {0};
  c.buffer_front = 1;
  c.n = n;
  c.head.assign(n + 1, -1);
  c.label.assign(n + 1, -1);
  c.children.assign(n + 1, {});
  return c;
}

std::array<bool, kNumTransitionKinds> legal(const Configuration& c, bool single_root) {
  std::array<bool, kNumTransitionKinds> out{};
  int sz = static_cast<int>(c.stack.size());
  out[int(TransitionKind::Shift)] = !c.buffer_empty();
  if (sz >= 2) {
    out[int(TransitionKind::Left)] = c.stack_at(1) != 0;  // root never a dependent
    bool right = true;
    if (single_root && c.stack_at(1) == 0) {
      // (0 -> w) only as the very last attachment
      right = c.buffer_empty() && sz == 2;
    }
    out[int(TransitionKind::Right)] = right;
  }
  if (sz >= 3) {
    out[int(TransitionKind::Left2)] = c.stack_at(2) != 0;
    // (0 -> w) via Right-2 would always strand the intervening stack token
    // with no head but the root, breaking the single-root guarantee
    out[int(TransitionKind::Right2)] = !(single_root && c.stack_at(2) == 0);
  }
  return out;
}

namespace {
void attach(Configuration& c, int head, int dep, int label) {
  c.head[dep] = head;
  c.label[dep] = label;
  auto& ch = c.children[head];
  ch.insert(std::upper_bound(ch.begin(), ch.end(), dep), dep);
}
}  // namespace

Configuration apply(const Configuration& c, const Transition& t, bool single_root) {
  if (!legal(c, single_root)[int(t.kind)])
    throw IllegalTransitionError(std::string("illegal transition ") + kind_name(t.kind) +
                                 " (stack size " + std::to_string(c.stack.size()) +
                                 ", buffer size " + std::to_string(c.buffer_size()) + ")");
  Configuration out = c;
  switch (t.kind) {
    case TransitionKind::Shift:
      out.stack.push_back(out.buffer_front++);
      break;
    case TransitionKind::Left: {  // (wj -> wi), wi second from top
      int wj = out.stack_at(0), wi = out.stack_at(1);
      out.stack.erase(out.stack.end() - 2);
      attach(out, wj, wi, t.label);
      break;
    }
    case TransitionKind::Right: {  // (wi -> wj), wj top
      int wj = out.stack_at(0), wi = out.stack_at(1);
      out.stack.pop_back();
      attach(out, wi, wj, t.label);
      break;
    }
    case TransitionKind::Left2: {  // (wk -> wi), wi third from top, wk top
      int wk = out.stack_at(0), wi = out.stack_at(2);
      out.stack.erase(out.stack.end() - 3);
      attach(out, wk, wi, t.label);
      break;
    }
    case TransitionKind::Right2: {  // (wi -> wk), wk top, wi third from top
      int wk = out.stack_at(0), wi = out.stack_at(2);
      out.stack.pop_back();
      attach(out, wi, wk, t.label);
      break;
    }
  }
  return out;
}

bool is_terminal(const Configuration& c) {
  return c.buffer_empty() && c.stack.size() == 1 && c.stack[0] == 0;
}

namespace {
// true when every gold dependent of tok is already attached
bool deps_done(const Configuration& c, const Sentence& gold, int tok) {
  for (const Token& t : gold.tokens)
    if (t.gold_head == tok && c.head[t.index] != tok) return false;
  return true;
}
}  // namespace

Transition oracle_next(const Configuration& c, const Sentence& gold,
                       const std::vector<int>& gold_label_ids, bool single_root) {
  auto ok = legal(c, single_root);
  auto gh = [&](int tok) { return gold.tokens[tok - 1].gold_head; };
  int sz = static_cast<int>(c.stack.size());
  if (sz >= 2) {
    int s1 = c.stack_at(0), s2 = c.stack_at(1);
    if (ok[int(TransitionKind::Left)] && gh(s2) == s1 && deps_done(c, gold, s2))
      return {TransitionKind::Left, gold_label_ids[s2]};
    if (ok[int(TransitionKind::Right)] && gh(s1) == s2 && deps_done(c, gold, s1))
      return {TransitionKind::Right, gold_label_ids[s1]};
  }
  if (sz >= 3) {
    int s1 = c.stack_at(0), s3 = c.stack_at(2);
    if (ok[int(TransitionKind::Left2)] && s3 != 0 && gh(s3) == s1 && deps_done(c, gold, s3))
      return {TransitionKind::Left2, gold_label_ids[s3]};
    if (ok[int(TransitionKind::Right2)] && gh(s1) == s3 && deps_done(c, gold, s1))
      return {TransitionKind::Right2, gold_label_ids[s1]};
  }
  if (ok[int(TransitionKind::Shift)]) return {TransitionKind::Shift, -1};
  throw UnreachableTreeError("no gold-consistent transition (gap degree > 1)");
}

std::vector<DerivationStep> derive(const Sentence& gold,
                                   const std::vector<int>& gold_label_ids,
                                   bool single_root) {
  std::vector<DerivationStep> steps;
  Configuration c = initial_config(gold);
  int limit = 2 * gold.size();
  while (!is_terminal(c)) {
    if (static_cast<int>(steps.size()) > limit)
      throw UnreachableTreeError("derivation exceeded 2n steps");
    Transition t = oracle_next(c, gold, gold_label_ids, single_root);
    Configuration next = apply(c, t, single_root);
    steps.push_back({std::move(c), t});
    c = std::move(next);
  }
  return steps;
}

}  // namespace chparser
