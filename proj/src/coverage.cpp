#include "topicscope/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "topicscope/errors.hpp"

namespace topicscope {

TopicMap dominant_topic_map(const LdaState& state, const LdaConfig& cfg,
                            const std::vector<Document>& docs) {
  TopicMap out;
  for (size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].tokens.empty()) {
      out[docs[d].id] = -1;
    } else {
      out[docs[d].id] = dominant_topic(doc_topic_distribution(state, cfg, d));
    }
  }
  return out;
}

CoverageReport coverage_from_topics(const TopicMap& topic_of, int K,
                                    const std::vector<std::string>& hits,
                                    const std::vector<std::string>& missed) {
  std::set<std::string> hit_set(hits.begin(), hits.end());
  for (const auto& id : missed)
    if (hit_set.count(id))
      throw ValidationError("hit and missed sets overlap on id \"" + id + "\"");

  CoverageReport rep;
  rep.K = K;
  rep.hit_topic_counts.assign(K, 0);
  rep.missed_topic_counts.assign(K, 0);
  auto tally = [&](const std::vector<std::string>& ids, std::vector<long>& counts) {
    for (const auto& id : ids) {
      auto it = topic_of.find(id);
      if (it == topic_of.end())
        throw ValidationError("unknown document id \"" + id + "\" in coverage input");
      if (it->second < 0) {
        rep.excluded_empty_docs += 1;
        continue;
      }
      if (it->second >= K)
        throw ValidationError("topic id out of range for document \"" + id + "\"");
      counts[it->second] += 1;
    }
  };
  tally(hits, rep.hit_topic_counts);
  tally(missed, rep.missed_topic_counts);
  for (int k = 0; k < K; ++k) {
    if (rep.hit_topic_counts[k] > 0) rep.hit_topics.insert(k);
    if (rep.missed_topic_counts[k] > 0) rep.missed_topics.insert(k);
  }
  for (int k : rep.missed_topics)
    if (!rep.hit_topics.count(k)) rep.novel_in_missed.insert(k);
  return rep;
}

CoverageReport coverage_report(const LdaState& state, const LdaConfig& cfg,
                               const std::vector<Document>& docs,
                               const std::vector<std::string>& hits,
                               const std::vector<std::string>& missed) {
  return coverage_from_topics(dominant_topic_map(state, cfg, docs), cfg.K, hits, missed);
}

std::vector<long> topic_histogram(const LdaState& state, const LdaConfig& cfg,
                                  const std::vector<Document>& docs,
                                  const std::vector<std::string>& ids) {
  TopicMap topic_of = dominant_topic_map(state, cfg, docs);
  std::vector<long> counts(cfg.K, 0);
  for (const auto& id : ids) {
    auto it = topic_of.find(id);
    if (it == topic_of.end())
      throw ValidationError("unknown document id \"" + id + "\" in histogram input");
    if (it->second >= 0) counts[it->second] += 1;
  }
  return counts;
}

PowerLawFit power_law_fit(const std::vector<double>& counts) {
  std::vector<double> nonzero;
  for (double c : counts)
    if (c > 0) nonzero.push_back(c);
  if (nonzero.size() < 2)
    throw ValidationError("power-law fit needs at least 2 nonzero counts, got " +
                          std::to_string(nonzero.size()));
  std::sort(nonzero.begin(), nonzero.end(), std::greater<double>());

  const size_t n = nonzero.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs(n), ys(n);
  for (size_t i = 0; i < n; ++i) {
    xs[i] = std::log(static_cast<double>(i + 1));
    ys[i] = std::log(nonzero[i]);
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  PowerLawFit fit;
  fit.n_points = static_cast<int>(n);
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (size_t i = 0; i < n; ++i) {
    const double pred = fit.intercept + fit.exponent * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  if (fit.r_squared < 0) fit.r_squared = 0;
  if (fit.r_squared > 1) fit.r_squared = 1;
  return fit;
}

double expected_overlap(double recall_a, double recall_b) {
  if (recall_a < 0 || recall_a > 1 || recall_b < 0 || recall_b > 1)
    throw ValidationError("recalls must lie in [0, 1]");
  return recall_a * recall_b;
}

double observed_overlap(const std::vector<std::string>& hits_a,
                        const std::vector<std::string>& hits_b,
                        const std::vector<std::string>& all_relevant) {
  if (all_relevant.empty()) throw ValidationError("observed_overlap: all_relevant must be nonempty");
  std::set<std::string> rel(all_relevant.begin(), all_relevant.end());
  std::set<std::string> a(hits_a.begin(), hits_a.end());
  for (const auto& id : a)
    if (!rel.count(id)) throw ValidationError("hit id \"" + id + "\" not in the relevant set");
  size_t inter = 0;
  std::set<std::string> b(hits_b.begin(), hits_b.end());
  for (const auto& id : b) {
    if (!rel.count(id)) throw ValidationError("hit id \"" + id + "\" not in the relevant set");
    if (a.count(id)) ++inter;
  }
  return static_cast<double>(inter) / static_cast<double>(rel.size());
}

}  // namespace topicscope
