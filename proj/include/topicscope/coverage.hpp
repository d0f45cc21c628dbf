#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "topicscope/corpus.hpp"
#include "topicscope/lda.hpp"

namespace topicscope {

struct CoverageReport {
  int K = 0;
  std::vector<long> hit_topic_counts;     // per-topic doc counts over the hit set
  std::vector<long> missed_topic_counts;  // same over the missed set
  std::set<int> hit_topics;               // topics with count > 0
  std::set<int> missed_topics;
  std::set<int> novel_in_missed;  // missed_topics minus hit_topics
  long excluded_empty_docs = 0;
};

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

// Topic map for coverage: document id -> dominant topic, or -1 for documents
// with no defined distribution (empty after tokenization).
using TopicMap = std::map<std::string, int>;

// Dominant topic per document under the fitted model; docs must be the list
// the model was fitted on (same indexing).
TopicMap dominant_topic_map(const LdaState& state, const LdaConfig& cfg,
                            const std::vector<Document>& docs);

// Core tally: hits and missed must be disjoint and every id must appear in
// topic_of.
CoverageReport coverage_from_topics(const TopicMap& topic_of, int K,
                                    const std::vector<std::string>& hits,
                                    const std::vector<std::string>& missed);

CoverageReport coverage_report(const LdaState& state, const LdaConfig& cfg,
                               const std::vector<Document>& docs,
                               const std::vector<std::string>& hits,
                               const std::vector<std::string>& missed);

// Count of documents in ids whose dominant topic is k, for every k.
std::vector<long> topic_histogram(const LdaState& state, const LdaConfig& cfg,
                                  const std::vector<Document>& docs,
                                  const std::vector<std::string>& ids);

// Least squares on (log rank, log count) of the nonzero counts sorted
// descending. Needs >= 2 nonzero counts. Constant counts fit exactly
// (exponent 0, r_squared 1).
PowerLawFit power_law_fit(const std::vector<double>& counts);

// Independence heuristic: recall_a * recall_b.
double expected_overlap(double recall_a, double recall_b);

// |hits_a intersect hits_b| / |all_relevant|; both hit sets must be subsets
// of all_relevant.
double observed_overlap(const std::vector<std::string>& hits_a,
                        const std::vector<std::string>& hits_b,
                        const std::vector<std::string>& all_relevant);

}  // namespace topicscope
