#include "topicscope/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "topicscope/errors.hpp"
#include "topicscope/rng.hpp"

namespace topicscope {

std::vector<long> popularity_quota(int K, size_t n, double exponent, int min_docs) {
  std::vector<double> p(K);
  double sum = 0.0;
  for (int t = 0; t < K; ++t) {
    p[t] = std::pow(static_cast<double>(t + 1), exponent);
    sum += p[t];
  }
  std::vector<long> base(K);
  std::vector<double> frac(K);
  long assigned = 0;
  for (int t = 0; t < K; ++t) {
    const double raw = p[t] / sum * static_cast<double>(n);
    base[t] = static_cast<long>(std::floor(raw));
    frac[t] = raw - std::floor(raw);
    assigned += base[t];
  }
  long rem = static_cast<long>(n) - assigned;
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return frac[a] > frac[b]; });
  for (long i = 0; i < rem; ++i) base[order[i]] += 1;

  if (min_docs > 1) {
    long need = 0;
    for (int t = 0; t < K; ++t) {
      if (base[t] < min_docs) {
        need += min_docs - base[t];
        base[t] = min_docs;
      }
    }
    while (need > 0) {
      int imax = 0;
      for (int t = 1; t < K; ++t)
        if (base[t] > base[imax]) imax = t;
      base[imax] -= 1;
      --need;
    }
  }
  long total = 0;
  for (long c : base) total += c;
  if (total != static_cast<long>(n))
    throw ValidationError("popularity quota failed to apportion exactly (floor too high for n?)");
  return base;
}

namespace {

std::string word_name(int w, int width) {
  std::string s(width, 'a');
  for (int i = width - 1; i >= 0; --i) {
    s[i] = static_cast<char>('a' + w % 26);
    w /= 26;
  }
  return "w" + s;
}

std::string doc_id(const char* prefix, size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%06zu", prefix, i);
  return buf;
}

}  // namespace

SynthResult generate(const SynthConfig& cfg) {
  if (cfg.K < 1) throw ValidationError("synth K must be >= 1");
  if (cfg.V < cfg.K) throw ValidationError("synth requires V >= K");
  if (cfg.doc_len_min < 1 || cfg.doc_len_max < cfg.doc_len_min)
    throw ValidationError("synth doc length range invalid");
  if (cfg.dominant_mass <= 0.0 || cfg.dominant_mass > 1.0)
    throw ValidationError("dominant_mass must be in (0, 1]");
  if (cfg.nonrelevant_topic_mass < 0.0 || cfg.nonrelevant_topic_mass > 1.0)
    throw ValidationError("nonrelevant_topic_mass must be in [0, 1]");

  const int B = cfg.V / cfg.K;  // words per topic block
  int width = 1;
  for (int cap = 26; cap < cfg.V; cap *= 26) ++width;

  std::vector<std::string> words(cfg.V);
  for (int w = 0; w < cfg.V; ++w) words[w] = word_name(w, width);

  // Popularity law over topics.
  std::vector<double> pop(cfg.K);
  double pop_sum = 0.0;
  for (int t = 0; t < cfg.K; ++t) {
    pop[t] = std::pow(static_cast<double>(t + 1), cfg.popularity_exponent);
    pop_sum += pop[t];
  }
  std::vector<double> pop_cum(cfg.K);
  double acc = 0.0;
  for (int t = 0; t < cfg.K; ++t) {
    acc += pop[t] / pop_sum;
    pop_cum[t] = acc;
  }
  pop_cum[cfg.K - 1] = 1.0;

  SynthResult res;
  res.truth_topic_counts = popularity_quota(cfg.K, cfg.n_relevant, cfg.popularity_exponent,
                                            cfg.min_topic_docs);

  res.truth.topic_word.assign(cfg.K, std::vector<double>(cfg.V, 0.0));
  for (int t = 0; t < cfg.K; ++t) {
    for (int w = 0; w < cfg.V; ++w) {
      double pr = (1.0 - cfg.dominant_mass) / cfg.V;
      if (w >= t * B && w < (t + 1) * B) pr += cfg.dominant_mass / B;
      res.truth.topic_word[t][w] = pr;
    }
  }

  Rng rng(cfg.seed);
  const int len_span = cfg.doc_len_max - cfg.doc_len_min + 1;
  auto gen_tokens = [&](int topic, double topical_mass) {
    const int len = cfg.doc_len_min + static_cast<int>(rng.next_below(len_span));
    std::string text;
    for (int i = 0; i < len; ++i) {
      int w;
      if (rng.next_double() < topical_mass) {
        w = topic * B + static_cast<int>(rng.next_below(B));
      } else {
        w = static_cast<int>(rng.next_below(cfg.V));
      }
      if (!text.empty()) text += ' ';
      text += words[w];
    }
    return text;
  };
  auto draw_topic = [&]() {
    const double u = rng.next_double();
    return static_cast<int>(std::lower_bound(pop_cum.begin(), pop_cum.end(), u) - pop_cum.begin());
  };

  // Relevant docs: topic blocks in rank order; draw order is doc-major.
  size_t idx = 0;
  for (int t = 0; t < cfg.K; ++t) {
    for (long c = 0; c < res.truth_topic_counts[t]; ++c) {
      Document d;
      d.id = doc_id("r", idx++);
      d.label = Label::Relevant;
      d.text = gen_tokens(t, cfg.dominant_mass);
      res.truth.topic_of[d.id] = t;
      res.docs.push_back(std::move(d));
    }
  }
  // Non-relevant docs: per-document topic from the same popularity law.
  for (size_t i = 0; i < cfg.n_nonrelevant; ++i) {
    Document d;
    d.id = doc_id("n", i);
    d.label = Label::NonRelevant;
    const int t = cfg.nonrelevant_topic_mass > 0.0 ? draw_topic() : 0;
    d.text = gen_tokens(t, cfg.nonrelevant_topic_mass);
    res.docs.push_back(std::move(d));
  }
  return res;
}

CoverageReport truth_coverage(const SynthTruth& truth, int K,
                              const std::vector<std::string>& hits,
                              const std::vector<std::string>& missed) {
  return coverage_from_topics(truth.topic_of, K, hits, missed);
}

void write_corpus_jsonl(const std::vector<Document>& docs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write corpus file: " + path);
  for (const auto& d : docs) {
    nlohmann::json j;
    j["id"] = d.id;
    j["text"] = d.text;
    j["label"] = d.label == Label::Relevant ? "relevant" : "nonrelevant";
    out << j.dump() << "\n";
  }
}

void write_truth_sidecar(const SynthTruth& truth, const std::string& path) {
  nlohmann::json j;
  for (const auto& [id, t] : truth.topic_of) j[id] = t;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write truth sidecar: " + path);
  out << j.dump(2) << "\n";
}

SynthTruth load_truth_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open truth sidecar: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": malformed truth sidecar: " + e.what());
  }
  SynthTruth truth;
  for (auto it = j.begin(); it != j.end(); ++it) truth.topic_of[it.key()] = it.value().get<int>();
  return truth;
}

double aligned_agreement(const TopicMap& fitted, const std::map<std::string, int>& truth, int K) {
  // Contingency table fitted x truth over docs present in both maps.
  std::vector<std::vector<long>> table(K, std::vector<long>(K, 0));
  long total = 0;
  for (const auto& [id, ft] : fitted) {
    auto it = truth.find(id);
    if (it == truth.end()) continue;
    ++total;  // docs without a fitted topic (ft < 0) count as disagreement
    if (ft < 0) continue;
    table[ft][it->second] += 1;
  }
  if (total == 0) return 0.0;

  // Greedy: repeatedly take the largest remaining cell, match that pair.
  std::vector<bool> used_f(K, false), used_t(K, false);
  long agree = 0;
  for (int step = 0; step < K; ++step) {
    long best = -1;
    int bf = -1, bt = -1;
    for (int f = 0; f < K; ++f) {
      if (used_f[f]) continue;
      for (int t = 0; t < K; ++t) {
        if (used_t[t]) continue;
        if (table[f][t] > best) {
          best = table[f][t];
          bf = f;
          bt = t;
        }
      }
    }
    if (bf < 0) break;
    used_f[bf] = true;
    used_t[bt] = true;
    agree += best;
  }
  return static_cast<double>(agree) / static_cast<double>(total);
}

}  // namespace topicscope
