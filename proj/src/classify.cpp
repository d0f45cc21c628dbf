#include "topicscope/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "topicscope/errors.hpp"
#include "topicscope/rng.hpp"

namespace topicscope {

NbModel train_nb(const std::vector<Document>& train, double smoothing, int vocab_size) {
  if (smoothing <= 0) throw ValidationError("NB smoothing must be > 0");
  long n_rel = 0, n_non = 0;
  std::vector<long> count_rel(vocab_size, 0), count_non(vocab_size, 0);
  long tokens_rel = 0, tokens_non = 0;
  for (const auto& d : train) {
    const bool rel = d.label == Label::Relevant;
    (rel ? n_rel : n_non) += 1;
    for (int w : d.tokens) {
      if (rel) {
        count_rel[w] += 1;
        ++tokens_rel;
      } else {
        count_non[w] += 1;
        ++tokens_non;
      }
    }
  }
  if (n_rel == 0 || n_non == 0)
    throw ValidationError("NB training requires at least one document of each class");

  NbModel m;
  m.smoothing = smoothing;
  m.V = vocab_size;
  m.log_prior_rel = std::log(static_cast<double>(n_rel) / (n_rel + n_non));
  m.log_prior_non = std::log(static_cast<double>(n_non) / (n_rel + n_non));
  m.log_like_rel.resize(vocab_size);
  m.log_like_non.resize(vocab_size);
  const double denom_rel = tokens_rel + smoothing * vocab_size;
  const double denom_non = tokens_non + smoothing * vocab_size;
  for (int w = 0; w < vocab_size; ++w) {
    m.log_like_rel[w] = std::log((count_rel[w] + smoothing) / denom_rel);
    m.log_like_non[w] = std::log((count_non[w] + smoothing) / denom_non);
  }
  return m;
}

double score_nb(const NbModel& model, const Document& doc) {
  double s = model.log_prior_rel - model.log_prior_non;
  for (int w : doc.tokens) s += model.log_like_rel[w] - model.log_like_non[w];
  return s;
}

namespace {

// L2-normalized term-frequency vector as a sparse (index, value) list.
std::vector<std::pair<int, double>> tf_features(const Document& doc, const std::vector<double>& idf) {
  std::map<int, double> tf;
  for (int w : doc.tokens) tf[w] += 1.0;
  if (!idf.empty())
    for (auto& [w, v] : tf) v *= idf[w];
  double norm = 0.0;
  for (const auto& [w, v] : tf) norm += v * v;
  norm = std::sqrt(norm);
  std::vector<std::pair<int, double>> out;
  out.reserve(tf.size());
  for (const auto& [w, v] : tf) out.emplace_back(w, norm > 0 ? v / norm : 0.0);
  return out;
}

}  // namespace

LinearModel train_linear(const std::vector<Document>& train, const LinearHyperparams& hp,
                         int vocab_size) {
  bool has_rel = false, has_non = false;
  for (const auto& d : train) (d.label == Label::Relevant ? has_rel : has_non) = true;
  if (!has_rel || !has_non)
    throw ValidationError("linear training requires both classes present");

  LinearModel m;
  m.hp = hp;
  m.weights.assign(vocab_size, 0.0);
  m.bias = 0.0;
  if (hp.use_idf) {
    m.idf.assign(vocab_size, 0.0);
    std::vector<long> df(vocab_size, 0);
    for (const auto& d : train) {
      std::set<int> uniq(d.tokens.begin(), d.tokens.end());
      for (int w : uniq) df[w] += 1;
    }
    for (int w = 0; w < vocab_size; ++w)
      m.idf[w] = std::log((1.0 + train.size()) / (1.0 + df[w])) + 1.0;
  }
  if (hp.epochs <= 0) return m;

  std::vector<std::vector<std::pair<int, double>>> feats(train.size());
  std::vector<double> y(train.size());
  for (size_t i = 0; i < train.size(); ++i) {
    feats[i] = tf_features(train[i], m.idf);
    y[i] = train[i].label == Label::Relevant ? 1.0 : -1.0;
  }

  Rng rng(hp.seed);
  std::vector<size_t> order(train.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    const double lr = hp.learning_rate / (1.0 + epoch);
    rng.shuffle(order);
    for (size_t i : order) {
      double margin = m.bias;
      for (const auto& [w, v] : feats[i]) margin += m.weights[w] * v;
      margin *= y[i];
      const double shrink = 1.0 - lr * hp.regularization;
      for (double& wgt : m.weights) wgt *= shrink;
      if (margin < 1.0) {
        for (const auto& [w, v] : feats[i]) m.weights[w] += lr * y[i] * v;
        m.bias += lr * y[i];
      }
    }
  }
  return m;
}

double score_linear(const LinearModel& model, const Document& doc) {
  double s = model.bias;
  for (const auto& [w, v] : tf_features(doc, model.idf)) s += model.weights[w] * v;
  return s;
}

EvalMetrics evaluate(const std::vector<std::pair<std::string, bool>>& predictions,
                     const std::vector<std::pair<std::string, bool>>& truth) {
  std::unordered_map<std::string, bool> pred;
  for (const auto& [id, p] : predictions) {
    if (!pred.emplace(id, p).second)
      throw ValidationError("duplicate prediction for document id \"" + id + "\"");
  }
  if (pred.size() != truth.size())
    throw ValidationError("prediction and truth id sets differ in size");
  EvalMetrics m;
  std::unordered_map<std::string, bool> seen_truth;
  for (const auto& [id, is_rel] : truth) {
    if (!seen_truth.emplace(id, true).second)
      throw ValidationError("duplicate truth label for document id \"" + id + "\"");
    auto it = pred.find(id);
    if (it == pred.end())
      throw ValidationError("prediction missing for document id \"" + id + "\"");
    const bool p = it->second;
    if (p && is_rel) ++m.tp;
    else if (p && !is_rel) ++m.fp;
    else if (!p && is_rel) ++m.fn;
    else ++m.tn;
  }
  m.recall = (m.tp + m.fn) > 0 ? static_cast<double>(m.tp) / (m.tp + m.fn) : 0.0;
  if (m.tp + m.fp > 0) {
    m.precision = static_cast<double>(m.tp) / (m.tp + m.fp);
  } else {
    m.precision = 0.0;
    m.degenerate_precision = true;
  }
  return m;
}

HitSet combined_hit_set(const std::vector<std::string>& train_positives,
                        const std::vector<std::string>& holdout_predicted_relevant,
                        const std::vector<std::string>& all_relevant) {
  std::set<std::string> hits(train_positives.begin(), train_positives.end());
  for (const auto& id : holdout_predicted_relevant) {
    if (hits.count(id))
      throw ValidationError("split contract violated: id \"" + id +
                            "\" appears in both training positives and holdout hits");
    hits.insert(id);
  }
  HitSet out;
  std::set<std::string> rel(all_relevant.begin(), all_relevant.end());
  for (const auto& id : all_relevant) {
    if (hits.count(id)) out.hits.push_back(id);
    else out.missed.push_back(id);
  }
  // every hit must be a known relevant id
  for (const auto& id : hits)
    if (!rel.count(id))
      throw ValidationError("hit id \"" + id + "\" is not in the relevant set");
  return out;
}

}  // namespace topicscope
