#ifndef CHPARSER_TRAINER_HPP
#define CHPARSER_TRAINER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chparser/eval.hpp"
#include "chparser/model.hpp"
#include "chparser/optimizer.hpp"

namespace chparser {

struct TrainSchedule {
  long max_steps = 100000;
  int batch = 100;
  int eval_every = 2000;
  int patience = 3;
  bool singleton_unk = true;   // singleton forms replaced by <UNK> w.p. 0.5 per draw
  double stop_uas_target = -1; // optional: stop once dev UAS reaches this
};

struct TrainResult {
  Model<float> model;  // best model, averaged parameters
  double best_las = -1;
  long best_step = 0;
  long steps_run = 0;
  int evals = 0;
  std::string stop_reason;  // "early_stop" | "max_steps" | "target"
};

// Instances are pre-generated from static-oracle
// derivations, uniform mini-batch sampling, dev evaluation on the averaged
// parameters every eval_every steps with patience-based early stopping.
// The log stream (optional) receives one TSV row per step:
//   step  lr  loss  [dev_las  dev_uas]
TrainResult train_parser(const std::vector<Sentence>& train_corpus,
                         const std::vector<Sentence>& dev_corpus, ReprMode mode,
                         const HyperParams& hp, OptimizerState opt,
                         const TrainSchedule& sched, uint64_t seed,
                         const EmbeddingFile* embeddings = nullptr,
                         std::ostream* log = nullptr, bool single_root = true);

}  // namespace chparser

#endif
