#include "chparser/trainer.hpp"

#include <iostream>
#include <ostream>

namespace chparser {

namespace {

struct TrainInstance {
  int sent = 0;
  FeatureSlots slots;
  uint32_t singleton_bits = 0;  // slots whose form occurs once in training
  int gold = 0;                 // transition id
};

// unique composed forms of one mini-batch, in first-use order
struct ComposeBatch {
  std::vector<std::string> forms;
  std::unordered_map<std::string, int> index;
  std::vector<std::unique_ptr<ComposedEntry<float>>> entries;

  ComposedEntry<float>* add(const Model<float>& model, const std::string& form) {
    auto it = index.find(form);
    if (it == index.end()) {
      it = index.emplace(form, static_cast<int>(forms.size())).first;
      forms.push_back(form);
      entries.push_back(std::make_unique<ComposedEntry<float>>());
      model.compose(form, *entries.back());
    }
    return entries[it->second].get();
  }
  void clear() {
    forms.clear();
    index.clear();
    entries.clear();
  }
};

double eval_dev(Model<float>& model, const std::vector<Sentence>& dev,
                std::vector<Parameter<float>*>& params, double* uas_out) {
  AveragedScope<float> avg(params);
  ComposeCache<float> cache(model);
  std::vector<ParseResult> pred;
  pred.reserve(dev.size());
  for (const Sentence& s : dev)
    pred.push_back(parse_sentence(s, model, mode_uses_chars(model.mode) ? &cache : nullptr));
  Score sc = score_corpus(dev, pred);
  if (uas_out) *uas_out = sc.all.uas();
  return sc.all.las();
}

}  // namespace

TrainResult train_parser(const std::vector<Sentence>& train_corpus,
                         const std::vector<Sentence>& dev_corpus, ReprMode mode,
                         const HyperParams& hp, OptimizerState opt,
                         const TrainSchedule& sched, uint64_t seed,
                         const EmbeddingFile* embeddings, std::ostream* log,
                         bool single_root) {
  if (train_corpus.empty() || dev_corpus.empty())
    throw std::runtime_error("train: empty corpus");
  Vocabulary vocab = build_vocab(train_corpus);
  Model<float> model = Model<float>::create(std::move(vocab), mode, hp);
  model.single_root = single_root;
  Rng rng(seed);
  model.init(rng, embeddings);
  auto params = model.params();
  const Vocabulary& v = model.vocab;
  int L = v.num_labels();
  bool chars = mode_uses_chars(mode);
  bool lookup = mode_uses_lookup(mode);

  // one classification instance per derivation step
  std::vector<TrainInstance> instances;
  int skipped = 0;
  for (size_t si = 0; si < train_corpus.size(); ++si) {
    const Sentence& s = train_corpus[si];
    std::vector<int> label_ids(s.size() + 1, -1);
    for (const Token& t : s.tokens) label_ids[t.index] = v.label_id(t.gold_label);
    try {
      for (const DerivationStep& step : derive(s, label_ids, single_root)) {
        TrainInstance inst;
        inst.sent = static_cast<int>(si);
        inst.slots = extract(step.config, s, v);
        inst.gold = transition_id(step.transition, L);
        for (int k = 0; k < kNumFeatureSlots; ++k) {
          int tok = inst.slots.token[k];
          if (tok > 0 && v.word_count(s.tokens[tok - 1].form) == 1)
            inst.singleton_bits |= 1u << k;
        }
        instances.push_back(std::move(inst));
      }
    } catch (const UnreachableTreeError&) {
      ++skipped;
      std::cerr << "warning: skipping underivable training sentence " << (si + 1) << "\n";
    }
  }
  if (instances.empty()) throw std::runtime_error("train: no derivable training instances");
  if (skipped)
    std::cerr << "warning: " << skipped << " of " << train_corpus.size()
              << " training sentences skipped as underivable\n";

  std::uniform_int_distribution<size_t> pick(0, instances.size() - 1);
  std::bernoulli_distribution unk_coin(0.5);

  TrainResult result;
  result.model = model;  // placeholder until the first evaluation
  ComposeBatch cb;
  ScoreWorkspace<float> ws;
  std::array<ComposedEntry<float>*, kNumFeatureSlots> composed{};
  FeatureSlots slots;
  int fails = 0;
  double best_las = -1;

  auto snapshot_best = [&](long step, double las) {
    result.best_las = las;
    result.best_step = step;
    result.model = model;
    for (auto* p : result.model.params()) p->value.values = p->average.values;
  };

  while (opt.step < sched.max_steps) {
    cb.clear();
    double batch_loss = 0;
    for (int bi = 0; bi < sched.batch; ++bi) {
      const TrainInstance& inst = instances[pick(rng)];
      slots = inst.slots;
      if (lookup && sched.singleton_unk && inst.singleton_bits) {
        for (int k = 0; k < kNumFeatureSlots; ++k)
          if ((inst.singleton_bits >> k & 1) && unk_coin(rng))
            slots.word_id[k] = Vocabulary::kWordUnk;
      }
      if (chars) {
        const Sentence& s = train_corpus[inst.sent];
        for (int k = 0; k < kNumFeatureSlots; ++k) {
          int tok = slots.token[k];
          composed[k] = tok > 0 ? cb.add(model, s.tokens[tok - 1].form) : nullptr;
        }
      }
      model.score_fwd(slots, chars ? composed.data() : nullptr, ws, true, &rng);
      batch_loss += softmax_xent(ws.logits, inst.gold, nullptr, ws.probs, ws.grad_logits);
      model.score_bwd(slots, chars ? composed.data() : nullptr, ws);
    }
    if (chars)
      for (auto& e : cb.entries)
        if (!e->grad.empty()) model.compose_bwd(*e);
    float inv = 1.0f / sched.batch;  // mini-batch mean gradient
    for (auto* p : params)
      for (float& g : p->grad.values) g *= inv;
    double loss = batch_loss / sched.batch;
    double lr_now = opt.lr(opt.step + 1);
    sgd_step(params, opt);
    result.steps_run = opt.step;

    bool eval_now = opt.step % sched.eval_every == 0;
    double las = -1, uas = -1;
    if (eval_now) {
      las = eval_dev(model, dev_corpus, params, &uas);
      ++result.evals;
      if (las > best_las) {
        best_las = las;
        fails = 0;
        snapshot_best(opt.step, las);
      } else {
        ++fails;
      }
    }
    if (log) {
      *log << opt.step << '\t' << lr_now << '\t' << loss;
      if (eval_now) *log << '\t' << las << '\t' << uas;
      *log << '\n';
    }
    if (eval_now) {
      if (sched.stop_uas_target >= 0 && uas >= sched.stop_uas_target) {
        result.stop_reason = "target";
        return result;
      }
      if (fails >= sched.patience) {
        result.stop_reason = "early_stop";
        return result;
      }
    }
  }
  result.stop_reason = "max_steps";
  if (result.best_las < 0) {
    // never evaluated (max_steps < eval_every): ship the averaged state
    double uas = -1;
    double las = eval_dev(model, dev_corpus, params, &uas);
    snapshot_best(opt.step, las);
  }
  return result;
}

}  // namespace chparser
