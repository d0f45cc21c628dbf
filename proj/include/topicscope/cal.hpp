#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "topicscope/classify.hpp"
#include "topicscope/corpus.hpp"

namespace topicscope {

struct CalConfig {
  size_t seed_batch_size = 100;
  size_t batch_size = 50;
  double target_recall = 0.813;
  size_t max_batches = 0;  // 0 = unbounded
  uint64_t rng_seed = 0;
};

enum class HaltedReason { TargetReached, Exhausted, MaxBatches };

const char* halted_reason_name(HaltedReason r);

struct CalBatch {
  int index = 0;  // 1-based
  std::vector<std::string> reviewed_ids;
  size_t cum_relevant = 0;
  double recall = 0.0;  // full-collection recall after this batch
};

struct CalTrace {
  std::vector<CalBatch> batches;
  std::vector<std::string> hit_ids;     // reviewed docs with Relevant truth label
  std::vector<std::string> missed_ids;  // relevant docs never reviewed
  HaltedReason halted_reason = HaltedReason::TargetReached;
  double final_recall = 0.0;
};

// Continuous Active Learning simulation:
//   1. review a uniform-random seed batch (oracle labels revealed);
//      while the reviewed set is single-class, review further random batches;
//   2. loop: train the linear model on all reviewed docs, score the
//      unreviewed pool, review the top batch_size by score (ties by ascending
//      document id), recompute full-collection recall;
//   3. halt when recall >= target_recall, the pool is empty, or max_batches.
// Random draws come from Rng(cfg.rng_seed) in review order.
CalTrace run_cal(const std::vector<Document>& corpus, const CalConfig& cfg,
                 const LinearHyperparams& hp, int vocab_size);

// (cumulative reviewed count, recall) per batch.
std::vector<std::pair<size_t, double>> recall_curve(const CalTrace& trace);

}  // namespace topicscope
