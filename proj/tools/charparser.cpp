// Command-line front end: train / parse / eval / mask.

#include <fstream>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "chparser/eval.hpp"
#include "chparser/serialize.hpp"
#include "chparser/trainer.hpp"

using namespace chparser;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

struct CommonOpts {
  int threads = 1;
  void apply() const {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy transition-based dependency parser with character composition models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with any hyperparameter; flags override");
  CommonOpts common;
  app.add_option("--threads", common.threads, "OpenMP thread count")->capture_default_str();

  // ---- train ----
  auto* train_cmd = app.add_subcommand("train", "train a model");
  std::string train_path, dev_path, out_path, mode_str = "word", emb_path, log_path;
  uint64_t seed = 1;
  HyperParams hp;
  OptimizerState opt;
  TrainSchedule sched;
  bool single_root = true, no_single_root = false, no_singleton_unk = false;
  int pos_column = 5;
  train_cmd->add_option("--train", train_path, "training treebank (CoNLL)")->required();
  train_cmd->add_option("--dev", dev_path, "development treebank (CoNLL)")->required();
  train_cmd->add_option("--out", out_path, "output model file")->required();
  train_cmd->add_option("--mode", mode_str,
                        "word|w2v|cnn|lstm|cnn+word|cnn+w2v|lstm+word|lstm+w2v")
      ->capture_default_str();
  train_cmd->add_option("--embeddings", emb_path, "pre-trained embedding file (w2v modes)");
  train_cmd->add_option("--log", log_path, "TSV training log");
  train_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  train_cmd->add_option("--pos-column", pos_column, "1-based POS column (5=CoNLL-X, 4=CoNLL-U)")
      ->capture_default_str();
  train_cmd->add_option("--steps", sched.max_steps)->capture_default_str();
  train_cmd->add_option("--batch", sched.batch)->capture_default_str();
  train_cmd->add_option("--eval-every", sched.eval_every)->capture_default_str();
  train_cmd->add_option("--patience", sched.patience)->capture_default_str();
  train_cmd->add_option("--lr", opt.base_lr)->capture_default_str();
  train_cmd->add_option("--decay", opt.decay)->capture_default_str();
  train_cmd->add_option("--decay-every", opt.decay_every)->capture_default_str();
  train_cmd->add_option("--momentum", opt.momentum)->capture_default_str();
  train_cmd->add_option("--l2", opt.l2)->capture_default_str();
  train_cmd->add_option("--grad-norm", opt.max_grad_norm)->capture_default_str();
  train_cmd->add_option("--dropout", hp.dropout)->capture_default_str();
  train_cmd->add_option("--word-dim", hp.word_dim)->capture_default_str();
  train_cmd->add_option("--tag-dim", hp.tag_dim)->capture_default_str();
  train_cmd->add_option("--label-dim", hp.label_dim)->capture_default_str();
  train_cmd->add_option("--char-dim", hp.char_dim)->capture_default_str();
  train_cmd->add_option("--kernels", hp.kernel_lengths, "convolution kernel lengths")
      ->capture_default_str();
  train_cmd->add_option("--channels", hp.channels)->capture_default_str();
  train_cmd->add_option("--lstm-hidden", hp.lstm_hidden)->capture_default_str();
  train_cmd->add_option("--f-dim", hp.f_dim)->capture_default_str();
  train_cmd->add_option("--hidden1", hp.h1_dim)->capture_default_str();
  train_cmd->add_option("--hidden2", hp.h2_dim)->capture_default_str();
  train_cmd->add_option("--char-len", hp.char_len)->capture_default_str();
  train_cmd->add_flag("--no-single-root", no_single_root,
                      "drop the single-root-child restriction on Right");
  train_cmd->add_flag("--no-singleton-unk", no_singleton_unk,
                      "never replace singleton forms by <UNK> during training");

  // ---- parse ----
  auto* parse_cmd = app.add_subcommand("parse", "parse a treebank with a trained model");
  std::string model_path, input_path, output_path;
  int parse_pos_column = 5;
  parse_cmd->add_option("--model", model_path, "model file")->required();
  parse_cmd->add_option("--input", input_path, "input CoNLL file")->required();
  parse_cmd->add_option("--output", output_path, "output CoNLL file")->required();
  parse_cmd->add_option("--pos-column", parse_pos_column)->capture_default_str();

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "score a prediction against gold");
  std::string gold_path, pred_path, vocab_model_path;
  bool tsv = false;
  int eval_pos_column = 5;
  eval_cmd->add_option("--gold", gold_path, "gold CoNLL file")->required();
  eval_cmd->add_option("--pred", pred_path, "predicted CoNLL file")->required();
  eval_cmd->add_option("--model", vocab_model_path,
                       "model file supplying the vocabulary for IV/OOV buckets");
  eval_cmd->add_flag("--tsv", tsv, "machine-readable output");
  eval_cmd->add_option("--pos-column", eval_pos_column)->capture_default_str();

  // ---- mask ----
  auto* mask_cmd = app.add_subcommand("mask", "mask word thirds of a treebank");
  std::string mask_in, mask_out, pattern;
  int mask_pos_column = 5;
  mask_cmd->add_option("--input", mask_in)->required();
  mask_cmd->add_option("--output", mask_out)->required();
  mask_cmd->add_option("--pattern", pattern, "one of xbc axc abx axx xbx xxc")->required();
  mask_cmd->add_option("--pos-column", mask_pos_column)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  common.apply();

  try {
    if (*train_cmd) {
      ReprMode mode = parse_mode(mode_str);
      if (mode_uses_pretrained(mode) && emb_path.empty())
        throw CLI::ValidationError("--mode " + mode_str + " requires --embeddings");
      sched.singleton_unk = !no_singleton_unk;
      single_root = !no_single_root;
      auto tf = open_in(train_path);
      auto df = open_in(dev_path);
      std::vector<Sentence> train_corpus = read_conll(tf, pos_column);
      std::vector<Sentence> dev_corpus = read_conll(df, pos_column);
      std::optional<EmbeddingFile> emb;
      if (!emb_path.empty()) {
        auto ef = open_in(emb_path);
        emb = load_embeddings(ef, hp.word_dim);
      }
      std::ofstream log;
      if (!log_path.empty()) log = open_out(log_path);
      TrainResult res =
          train_parser(train_corpus, dev_corpus, mode, hp, opt, sched, seed,
                       emb ? &*emb : nullptr, log_path.empty() ? nullptr : &log, single_root);
      auto mf = open_out(out_path);
      save_model(mf, res.model);
      std::cerr << "best dev LAS " << 100.0 * res.best_las << " at step " << res.best_step
                << " (" << res.stop_reason << " after " << res.steps_run << " steps)\n";
    } else if (*parse_cmd) {
      auto mf = open_in(model_path);
      Model<float> model = load_model<float>(mf);
      auto inf = open_in(input_path);
      std::vector<Sentence> corpus = read_conll(inf, parse_pos_column, false);
      ComposeCache<float> cache(model);
      std::vector<ParseResult> pred(corpus.size());
      bool chars = mode_uses_chars(model.mode);
#pragma omp parallel for schedule(dynamic) if (!chars)
      for (size_t i = 0; i < corpus.size(); ++i)
        pred[i] = parse_sentence(corpus[i], model, chars ? &cache : nullptr);
      auto outf = open_out(output_path);
      write_conll(outf, corpus, pred, parse_pos_column);
    } else if (*eval_cmd) {
      auto gf = open_in(gold_path);
      auto pf = open_in(pred_path);
      std::vector<Sentence> gold = read_conll(gf, eval_pos_column);
      std::vector<Sentence> pred_sents = read_conll(pf, eval_pos_column, false);
      std::vector<ParseResult> pred;
      for (const Sentence& s : pred_sents) pred.push_back(gold_parse(s));
      Score sc;
      if (!vocab_model_path.empty()) {
        auto mf = open_in(vocab_model_path);
        Model<float> model = load_model<float>(mf);
        sc = score_with_buckets(gold, pred, model.vocab);
      } else {
        sc = score_corpus(gold, pred);
      }
      std::cout << report({{pred_path, sc}}, tsv);
    } else if (*mask_cmd) {
      MaskSpec spec = MaskSpec::parse(pattern);
      auto inf = open_in(mask_in);
      std::vector<Sentence> corpus = read_conll(inf, mask_pos_column);
      std::vector<Sentence> masked = mask_corpus(corpus, spec);
      std::vector<ParseResult> gold;
      for (const Sentence& s : masked) gold.push_back(gold_parse(s));
      auto outf = open_out(mask_out);
      write_conll(outf, masked, gold, mask_pos_column);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
