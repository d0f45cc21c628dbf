#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "topicscope/corpus.hpp"

namespace topicscope {

struct LdaConfig {
  int K = 100;
  double alpha = 0.01;  // symmetric document-topic prior; default 1/K
  double beta = 0.01;   // symmetric topic-word prior
  int n_sweeps = 500;
  uint64_t seed = 0;
};

inline LdaConfig make_lda_config(int K) {
  LdaConfig cfg;
  cfg.K = K;
  cfg.alpha = 1.0 / K;
  return cfg;
}

struct TopicDistribution {
  std::vector<double> theta;
};

// Collapsed-sampler state. topic_word is stored word-major (w*K + k) for the
// sampler's inner loop; word_topic_count() gives the logical K x V view.
struct LdaState {
  int K = 0;
  int V = 0;
  std::vector<std::vector<int>> z;         // per doc, per token position
  std::vector<std::vector<int>> doc_topic; // D rows of K counts
  std::vector<int> topic_word;             // V*K, word-major
  std::vector<long> topic_totals;          // K
  std::vector<int> doc_len;                // tokens per doc

  int word_topic_count(int k, int w) const { return topic_word[static_cast<size_t>(w) * K + k]; }
  long total_tokens() const {
    long t = 0;
    for (long x : topic_totals) t += x;
    return t;
  }
};

// Called after each completed Gibbs sweep (1-based sweep index).
using SweepObserver = std::function<void(const LdaState&, int sweep)>;

// Collapsed Gibbs sampling. Draw order: one init pass assigning every token
// uniformly (doc-major, token-minor), then n_sweeps full sweeps in the same
// order, one next_double() per token resample. Empty documents are skipped.
LdaState fit(const std::vector<Document>& docs, int vocab_size, const LdaConfig& cfg,
             const SweepObserver& observer = nullptr);

// theta[k] = (doc_topic[d][k] + alpha) / (doc_len[d] + K*alpha).
TopicDistribution doc_topic_distribution(const LdaState& state, const LdaConfig& cfg, size_t d);

// Index of the largest entry; ties broken by lowest index.
int dominant_topic(const TopicDistribution& dist);

// n terms by descending topic count; ties (including zero counts when n
// exceeds the nonzero terms) broken lexicographically.
std::vector<std::string> topic_top_words(const LdaState& state, const Vocabulary& vocab, int k, int n);

// exp(- mean token log-likelihood) under smoothed theta and phi.
double perplexity(const LdaState& state, const LdaConfig& cfg, const std::vector<Document>& docs);

// Exact-roundtrip JSON serialization (integer count matrices).
void save_model(const LdaState& state, const LdaConfig& cfg, const std::string& vocab_hash,
                const std::string& path);
struct LoadedModel {
  LdaState state;
  LdaConfig cfg;
  std::string vocab_hash;
};
LoadedModel load_model(const std::string& path);

// Brute-force recount of all four count structures from z; true iff every
// count matches state exactly.
bool counts_consistent(const LdaState& state, const std::vector<Document>& docs);

}  // namespace topicscope
