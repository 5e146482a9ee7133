#ifndef CHPARSER_TRANSITION_HPP
#define CHPARSER_TRANSITION_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "chparser/conll.hpp"

namespace chparser {

enum class TransitionKind { Shift = 0, Left = 1, Right = 2, Left2 = 3, Right2 = 4 };
constexpr int kNumTransitionKinds = 5;

struct Transition {
  TransitionKind kind = TransitionKind::Shift;
  int label = -1;  // label id; -1 for Shift
  bool operator==(const Transition&) const = default;
};

struct Arc {
  int head = 0;
  int dep = 0;
  int label = -1;
  bool operator==(const Arc&) const = default;
};

struct IllegalTransitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnreachableTreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stack/buffer/arcs state. The buffer is always the suffix
// [buffer_front .. n] of the sentence; head/label/children mirror the arc
// set for O(1) child access.
struct Configuration {
  std::vector<int> stack;  // bottom .. top
  int buffer_front = 1;
  int n = 0;
  std::vector<int> head;                    // size n+1, -1 = unattached
  std::vector<int> label;                   // size n+1
  std::vector<std::vector<int>> children;   // sorted ascending, size n+1

  bool buffer_empty() const { return buffer_front > n; }
  int buffer_size() const { return buffer_empty() ? 0 : n - buffer_front + 1; }
  int buffer_at(int i) const { return buffer_front + i; }  // i-th buffer token, 0-based
  int stack_at(int i) const {  // i-th from top, 0-based
    return stack[stack.size() - 1 - i];
  }
  int num_arcs() const;
  std::vector<Arc> arcs() const;
};

Configuration initial_config(const Sentence& sentence);

// Which transition kinds are applicable. single_root restricts the Right
// transition from attaching a token to the root while other tokens are
// still unattached.
std::array<bool, kNumTransitionKinds> legal(const Configuration& c,
                                            bool single_root = true);

Configuration apply(const Configuration& c, const Transition& t,
                    bool single_root = true);

bool is_terminal(const Configuration& c);

Transition oracle_next(const Configuration& c, const Sentence& gold,
                       const std::vector<int>& gold_label_ids,
                       bool single_root = true);

struct DerivationStep {
  Configuration config;
  Transition transition;
};

// Runs the static oracle to completion; throws UnreachableTreeError when the
// tree needs more than the degree-2 transitions can reach.
std::vector<DerivationStep> derive(const Sentence& gold,
                                   const std::vector<int>& gold_label_ids,
                                   bool single_root = true);

const char* kind_name(TransitionKind k);

}  // namespace chparser

#endif
