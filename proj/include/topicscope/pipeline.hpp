#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topicscope/cal.hpp"
#include "topicscope/classify.hpp"
#include "topicscope/corpus.hpp"
#include "topicscope/lda.hpp"
#include "topicscope/synth.hpp"

namespace topicscope {

// Declarative run configuration (JSON file; see README for the format).
// Module seeds are derived from the single global seed by fixed offsets:
// synth +1, lda +2, split +3, cal +4, linear +5.
struct RunConfig {
  uint64_t seed = 42;

  // Corpus source: exactly one of (path, synth).
  std::string corpus_path;
  std::string corpus_format = "jsonl";
  bool use_synth = false;
  SynthConfig synth;

  int min_token_length = 2;
  int min_document_frequency = 1;
  std::string stopwords_file;  // empty = built-in list

  int lda_K = 100;
  double lda_alpha = 0.0;  // 0 = use 1/K
  double lda_beta = 0.01;
  int lda_sweeps = 500;

  size_t n_relevant_train = 1257;
  size_t n_nonrelevant_train = 1500;
  double nb_smoothing = 1.0;

  LinearHyperparams linear;
  CalConfig cal;

  std::string out_dir = "runs";
};

RunConfig load_run_config(const std::string& path);
// Canonical (sorted-key) JSON echo of the config; its hash names the run dir.
std::string config_canonical_json(const RunConfig& cfg);
std::string run_dir_for(const RunConfig& cfg);

uint64_t synth_seed(const RunConfig& cfg);
uint64_t lda_seed(const RunConfig& cfg);
uint64_t split_seed(const RunConfig& cfg);
uint64_t cal_seed(const RunConfig& cfg);
uint64_t linear_seed(const RunConfig& cfg);

LdaConfig lda_config(const RunConfig& cfg);

// Loaded + tokenized corpus shared by the commands.
struct PipelineContext {
  std::vector<Document> docs;      // full corpus, tokens as vocabulary indices
  Vocabulary vocab;
  std::vector<Document> relevant;  // relevant subset in corpus order (the LDA fit set)
  std::vector<std::string> relevant_ids;
  std::string vocab_hash;
  SynthTruth truth;  // populated for synth corpora
  bool has_truth = false;
  long n_relevant = 0;
  long n_nonrelevant = 0;
  long empty_docs = 0;
};

PipelineContext load_context(const RunConfig& cfg);

// Commands. Each creates the run directory (named by config hash unless
// out_override is given), takes the directory lock and writes its artifacts.
// Returns the run directory path.
std::string cmd_ingest(const RunConfig& cfg, const std::string& out_override = "");
std::string cmd_topics(const RunConfig& cfg, const std::string& out_override = "");
std::string cmd_run_nb(const RunConfig& cfg, const std::string& out_override = "");
std::string cmd_run_cal(const RunConfig& cfg, const std::string& out_override = "");
std::string cmd_report(const RunConfig& cfg, const std::string& out_override = "");
std::string cmd_synth(const RunConfig& cfg, const std::string& out_override = "");

}  // namespace topicscope
