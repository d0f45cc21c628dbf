#include "topicscope/lda.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "topicscope/errors.hpp"
#include "topicscope/rng.hpp"

namespace topicscope {

LdaState fit(const std::vector<Document>& docs, int vocab_size, const LdaConfig& cfg,
             const SweepObserver& observer) {
  if (cfg.K < 1 || cfg.alpha <= 0 || cfg.beta <= 0 || cfg.n_sweeps < 1)
    throw ValidationError("invalid LDA config: require K >= 1, alpha > 0, beta > 0, n_sweeps >= 1");
  if (docs.empty()) throw ValidationError("LDA fit requires a non-empty document list");
  bool any = false;
  for (const auto& d : docs) any = any || !d.tokens.empty();
  if (!any) throw ValidationError("LDA fit requires at least one non-empty document");

  const int K = cfg.K;
  LdaState st;
  st.K = K;
  st.V = vocab_size;
  st.z.resize(docs.size());
  st.doc_topic.assign(docs.size(), std::vector<int>(K, 0));
  st.topic_word.assign(static_cast<size_t>(vocab_size) * K, 0);
  st.topic_totals.assign(K, 0);
  st.doc_len.resize(docs.size());

  Rng rng(cfg.seed);

  // Init pass: uniform random assignment, doc-major token-minor.
  for (size_t d = 0; d < docs.size(); ++d) {
    const auto& toks = docs[d].tokens;
    st.doc_len[d] = static_cast<int>(toks.size());
    st.z[d].resize(toks.size());
    for (size_t i = 0; i < toks.size(); ++i) {
      int k = static_cast<int>(rng.next_below(K));
      st.z[d][i] = k;
      st.doc_topic[d][k] += 1;
      st.topic_word[static_cast<size_t>(toks[i]) * K + k] += 1;
      st.topic_totals[k] += 1;
    }
  }

  const double vbeta = vocab_size * cfg.beta;
  std::vector<double> inv_denom(K), cum(K);
  for (int k = 0; k < K; ++k) inv_denom[k] = 1.0 / (st.topic_totals[k] + vbeta);

  for (int sweep = 1; sweep <= cfg.n_sweeps; ++sweep) {
    for (size_t d = 0; d < docs.size(); ++d) {
      const auto& toks = docs[d].tokens;
      int* dt = st.doc_topic[d].data();
      for (size_t i = 0; i < toks.size(); ++i) {
        const int w = toks[i];
        const int old_k = st.z[d][i];
        int* wt = &st.topic_word[static_cast<size_t>(w) * K];

        dt[old_k] -= 1;
        wt[old_k] -= 1;
        st.topic_totals[old_k] -= 1;
        inv_denom[old_k] = 1.0 / (st.topic_totals[old_k] + vbeta);

        double total = 0.0;
        for (int k = 0; k < K; ++k) {
          total += (dt[k] + cfg.alpha) * (wt[k] + cfg.beta) * inv_denom[k];
          cum[k] = total;
        }
        const double u = rng.next_double() * total;
        int new_k = K - 1;
        for (int k = 0; k < K; ++k) {
          if (u < cum[k]) {
            new_k = k;
            break;
          }
        }

        st.z[d][i] = new_k;
        dt[new_k] += 1;
        wt[new_k] += 1;
        st.topic_totals[new_k] += 1;
        inv_denom[new_k] = 1.0 / (st.topic_totals[new_k] + vbeta);
      }
    }
    if (observer) observer(st, sweep);
  }
  return st;
}

TopicDistribution doc_topic_distribution(const LdaState& state, const LdaConfig& cfg, size_t d) {
  if (d >= state.doc_topic.size()) throw ValidationError("document index out of range");
  if (state.doc_len[d] == 0)
    throw ValidationError("undefined distribution: document " + std::to_string(d) +
                          " is empty (excluded from coverage)");
  TopicDistribution out;
  out.theta.resize(state.K);
  const double denom = state.doc_len[d] + state.K * cfg.alpha;
  for (int k = 0; k < state.K; ++k)
    out.theta[k] = (state.doc_topic[d][k] + cfg.alpha) / denom;
  return out;
}

int dominant_topic(const TopicDistribution& dist) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(dist.theta.size()); ++k)
    if (dist.theta[k] > dist.theta[best]) best = k;
  return best;
}

std::vector<std::string> topic_top_words(const LdaState& state, const Vocabulary& vocab, int k, int n) {
  if (k < 0 || k >= state.K)
    throw ValidationError("topic id " + std::to_string(k) + " out of range for K=" +
                          std::to_string(state.K));
  std::vector<int> order(state.V);
  for (int w = 0; w < state.V; ++w) order[w] = w;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ca = state.word_topic_count(k, a), cb = state.word_topic_count(k, b);
    if (ca != cb) return ca > cb;
    return vocab.terms[a] < vocab.terms[b];
  });
  if (n > state.V) n = state.V;
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(vocab.terms[order[i]]);
  return out;
}

double perplexity(const LdaState& state, const LdaConfig& cfg, const std::vector<Document>& docs) {
  const double vbeta = state.V * cfg.beta;
  double ll = 0.0;
  long n_tokens = 0;
  for (size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].tokens.empty()) continue;
    TopicDistribution dist = doc_topic_distribution(state, cfg, d);
    for (int w : docs[d].tokens) {
      double p = 0.0;
      for (int k = 0; k < state.K; ++k) {
        const double phi = (state.word_topic_count(k, w) + cfg.beta) / (state.topic_totals[k] + vbeta);
        p += dist.theta[k] * phi;
      }
      ll += std::log(p);
      ++n_tokens;
    }
  }
  return std::exp(-ll / static_cast<double>(n_tokens));
}

bool counts_consistent(const LdaState& state, const std::vector<Document>& docs) {
  std::vector<std::vector<int>> dt(docs.size(), std::vector<int>(state.K, 0));
  std::vector<int> tw(static_cast<size_t>(state.V) * state.K, 0);
  std::vector<long> tt(state.K, 0);
  for (size_t d = 0; d < docs.size(); ++d) {
    if (state.z[d].size() != docs[d].tokens.size()) return false;
    for (size_t i = 0; i < docs[d].tokens.size(); ++i) {
      const int k = state.z[d][i];
      if (k < 0 || k >= state.K) return false;
      dt[d][k] += 1;
      tw[static_cast<size_t>(docs[d].tokens[i]) * state.K + k] += 1;
      tt[k] += 1;
    }
  }
  if (dt != state.doc_topic || tw != state.topic_word || tt != state.topic_totals) return false;
  for (size_t d = 0; d < docs.size(); ++d) {
    long row = 0;
    for (int k = 0; k < state.K; ++k) row += dt[d][k];
    if (row != static_cast<long>(docs[d].tokens.size())) return false;
  }
  long grand = 0, expect = 0;
  for (int k = 0; k < state.K; ++k) grand += tt[k];
  for (const auto& doc : docs) expect += static_cast<long>(doc.tokens.size());
  return grand == expect;
}

void save_model(const LdaState& state, const LdaConfig& cfg, const std::string& vocab_hash,
                const std::string& path) {
  nlohmann::json j;
  j["config"] = {{"K", cfg.K},
                 {"alpha", cfg.alpha},
                 {"beta", cfg.beta},
                 {"n_sweeps", cfg.n_sweeps},
                 {"seed", cfg.seed}};
  j["vocab_hash"] = vocab_hash;
  j["V"] = state.V;
  j["doc_len"] = state.doc_len;
  j["doc_topic"] = state.doc_topic;
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 0; k < state.K; ++k) {
    std::vector<int> row(state.V);
    for (int w = 0; w < state.V; ++w) row[w] = state.word_topic_count(k, w);
    rows.push_back(row);
  }
  j["topic_word"] = rows;
  j["topic_totals"] = state.topic_totals;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write model file: " + path);
  out << j.dump(2) << "\n";
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": malformed model JSON: " + e.what());
  }
  LoadedModel m;
  m.cfg.K = j.at("config").at("K").get<int>();
  m.cfg.alpha = j.at("config").at("alpha").get<double>();
  m.cfg.beta = j.at("config").at("beta").get<double>();
  m.cfg.n_sweeps = j.at("config").at("n_sweeps").get<int>();
  m.cfg.seed = j.at("config").at("seed").get<uint64_t>();
  m.vocab_hash = j.at("vocab_hash").get<std::string>();
  m.state.K = m.cfg.K;
  m.state.V = j.at("V").get<int>();
  m.state.doc_len = j.at("doc_len").get<std::vector<int>>();
  m.state.doc_topic = j.at("doc_topic").get<std::vector<std::vector<int>>>();
  m.state.topic_totals = j.at("topic_totals").get<std::vector<long>>();
  m.state.topic_word.assign(static_cast<size_t>(m.state.V) * m.state.K, 0);
  const auto& rows = j.at("topic_word");
  for (int k = 0; k < m.state.K; ++k)
    for (int w = 0; w < m.state.V; ++w)
      m.state.topic_word[static_cast<size_t>(w) * m.state.K + k] = rows[k][w].get<int>();
  return m;
}

}  // namespace topicscope
