#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "topicscope/corpus.hpp"

namespace topicscope {

struct NbModel {
  double log_prior_rel = 0.0;
  double log_prior_non = 0.0;
  std::vector<double> log_like_rel;  // per term, Laplace smoothed
  std::vector<double> log_like_non;
  double smoothing = 1.0;
  int V = 0;
};

// Multinomial NB: P(w|c) = (count(w,c)+s) / (tokens(c)+s*V); priors are class
// document fractions.
NbModel train_nb(const std::vector<Document>& train, double smoothing, int vocab_size);

// log P(rel) - log P(non) + sum over tokens of log-likelihood ratios.
// Classification rule: relevant iff score > 0. Empty documents score the
// prior log-odds.
double score_nb(const NbModel& model, const Document& doc);

struct LinearHyperparams {
  int epochs = 20;
  double learning_rate = 0.1;  // per-epoch rate: learning_rate / (1 + epoch)
  double regularization = 1e-4;
  bool use_idf = false;
  uint64_t seed = 0;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> idf;  // empty unless use_idf
  LinearHyperparams hp;
};

// L2-regularized hinge loss over L2-normalized term-frequency vectors,
// seeded stochastic subgradient descent (Fisher-Yates epoch shuffles).
LinearModel train_linear(const std::vector<Document>& train, const LinearHyperparams& hp,
                         int vocab_size);

// dot(weights, normalized tf vector) + bias; relevant iff > 0.
double score_linear(const LinearModel& model, const Document& doc);

struct EvalMetrics {
  double recall = 0.0;
  double precision = 0.0;
  long tp = 0, fp = 0, tn = 0, fn = 0;
  bool degenerate_precision = false;  // no positive predictions
};

// predictions/truth: (document id, is-relevant). The id sets must match.
EvalMetrics evaluate(const std::vector<std::pair<std::string, bool>>& predictions,
                     const std::vector<std::pair<std::string, bool>>& truth);

struct HitSet {
  std::vector<std::string> hits;    // union of the two inputs
  std::vector<std::string> missed;  // all_relevant minus hits
};

// Union of training positives and holdout-predicted-relevant ids; inputs must
// be disjoint (they come from disjoint splits).
HitSet combined_hit_set(const std::vector<std::string>& train_positives,
                        const std::vector<std::string>& holdout_predicted_relevant,
                        const std::vector<std::string>& all_relevant);

}  // namespace topicscope
