#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "topicscope/corpus.hpp"
#include "topicscope/coverage.hpp"

namespace topicscope {

struct SynthConfig {
  int K = 100;
  int V = 1000;
  size_t n_relevant = 1676;
  size_t n_nonrelevant = 2000;
  int doc_len_min = 6;
  int doc_len_max = 18;
  double popularity_exponent = -1.0;  // topic r has popularity proportional to r^exponent
  double dominant_mass = 0.5;         // fraction of a relevant doc's tokens from its topic block
  // Background shift strength: fraction of a non-relevant doc's tokens drawn
  // from a topic block (topic drawn from the same popularity law); the rest
  // of both classes is uniform background over V. The (dominant_mass,
  // nonrelevant_topic_mass) gap controls class separability.
  double nonrelevant_topic_mass = 0.2;
  int min_topic_docs = 1;  // floor on per-topic relevant doc counts
  uint64_t seed = 0;
};

struct SynthTruth {
  std::map<std::string, int> topic_of;          // relevant doc id -> truth topic
  std::vector<std::vector<double>> topic_word;  // per-topic word distributions used
};

struct SynthResult {
  std::vector<Document> docs;  // relevant block first, then non-relevant
  SynthTruth truth;
  std::vector<long> truth_topic_counts;  // relevant docs per topic
};

// Exact realization of the popularity law: topic t in [1..K] gets a share
// proportional to t^exponent of n documents, apportioned by largest
// remainder, then raised to min_docs by taking documents from the largest
// topics. Deterministic.
std::vector<long> popularity_quota(int K, size_t n, double exponent, int min_docs);

// LDA generative story with disjoint dominant blocks of floor(V/K) words per
// topic. Relevant docs draw a truth topic from the popularity quota; tokens
// come from the topic block with probability dominant_mass, else uniform
// background. Non-relevant docs use nonrelevant_topic_mass instead (topic
// drawn per document from the popularity law). Texts use synthetic terms
// ("w" + fixed-width base-26 index) so the standard tokenizer reproduces the
// generated token streams exactly.
SynthResult generate(const SynthConfig& cfg);

// Coverage computed from truth topics instead of fitted topics.
CoverageReport truth_coverage(const SynthTruth& truth, int K,
                              const std::vector<std::string>& hits,
                              const std::vector<std::string>& missed);

// Standard JSONL corpus plus truth sidecar (doc id -> truth topic).
void write_corpus_jsonl(const std::vector<Document>& docs, const std::string& path);
void write_truth_sidecar(const SynthTruth& truth, const std::string& path);
SynthTruth load_truth_sidecar(const std::string& path);

// Greedy one-to-one alignment of fitted topics to truth topics by contingency
// overlap; returns the fraction of docs whose aligned fitted dominant topic
// equals the truth topic.
double aligned_agreement(const TopicMap& fitted, const std::map<std::string, int>& truth, int K);

}  // namespace topicscope
