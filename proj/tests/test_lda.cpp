#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "topicscope/errors.hpp"
#include "topicscope/lda.hpp"

using namespace topicscope;

namespace {

// Documents over an inline vocabulary: each entry is a token-index list.
std::vector<Document> docs_from_tokens(const std::vector<std::vector<int>>& toks) {
  std::vector<Document> docs(toks.size());
  for (size_t i = 0; i < toks.size(); ++i) {
    docs[i].id = "d" + std::to_string(i);
    docs[i].tokens = toks[i];
    docs[i].empty_after_tokenize = toks[i].empty();
  }
  return docs;
}

// 40 docs, two disjoint 2-word vocabularies {0,1} and {2,3}.
std::vector<Document> disjoint_fixture() {
  std::vector<std::vector<int>> toks;
  for (int i = 0; i < 20; ++i) toks.push_back({0, 1, 0, 1, i % 2, 0});
  for (int i = 0; i < 20; ++i) toks.push_back({2, 3, 2, 3, 2 + i % 2, 2});
  return docs_from_tokens(toks);
}

}  // namespace

TEST_CASE("fit with K=1 assigns everything to topic 0") {
  auto docs = docs_from_tokens({{0, 1, 2}, {2, 2}, {}});
  LdaConfig cfg = make_lda_config(1);
  cfg.n_sweeps = 5;
  cfg.seed = 3;
  auto state = fit(docs, 3, cfg);
  for (const auto& zd : state.z)
    for (int z : zd) CHECK(z == 0);
  CHECK(state.topic_totals[0] == 5);
  CHECK(counts_consistent(state, docs));
  auto dist = doc_topic_distribution(state, cfg, 0);
  CHECK(dist.theta == std::vector<double>{1.0});
}

TEST_CASE("fit separates disjoint vocabularies") {
  auto docs = disjoint_fixture();
  LdaConfig cfg = make_lda_config(2);
  cfg.n_sweeps = 200;
  cfg.seed = 17;
  auto state = fit(docs, 4, cfg);
  CHECK(counts_consistent(state, docs));

  // Each topic's mass should sit almost entirely on one 2-word block.
  for (int k = 0; k < 2; ++k) {
    long lo = state.word_topic_count(k, 0) + state.word_topic_count(k, 1);
    long hi = state.word_topic_count(k, 2) + state.word_topic_count(k, 3);
    CHECK(std::max(lo, hi) >= 9 * std::min(lo, hi));
  }
  // And the blocks land in different topics.
  long block0_topic0 = state.word_topic_count(0, 0) + state.word_topic_count(0, 1);
  long block0_topic1 = state.word_topic_count(1, 0) + state.word_topic_count(1, 1);
  CHECK(block0_topic0 != block0_topic1);
}

TEST_CASE("fit is deterministic and seed-sensitive") {
  auto docs = disjoint_fixture();
  LdaConfig cfg = make_lda_config(2);
  cfg.n_sweeps = 30;
  cfg.seed = 5;
  auto a = fit(docs, 4, cfg);
  auto b = fit(docs, 4, cfg);
  CHECK(a.z == b.z);
  CHECK(a.topic_word == b.topic_word);

  cfg.seed = 6;
  auto c = fit(docs, 4, cfg);
  CHECK(a.z != c.z);
}

TEST_CASE("fit validates input") {
  std::vector<Document> docs = docs_from_tokens({{}, {}});
  LdaConfig cfg = make_lda_config(2);
  CHECK_THROWS_AS(fit(docs, 4, cfg), ValidationError);
  std::vector<Document> none;
  CHECK_THROWS_AS(fit(none, 4, cfg), ValidationError);
}

TEST_CASE("doc_topic_distribution reproduces the smoothed association vector") {
  // Hand-built state: one 3-token document entirely on topic 16, K=100.
  LdaState state;
  state.K = 100;
  state.V = 3;
  state.z = {{16, 16, 16}};
  state.doc_topic.assign(1, std::vector<int>(100, 0));
  state.doc_topic[0][16] = 3;
  state.doc_len = {3};
  state.topic_word.assign(static_cast<size_t>(3) * 100, 0);
  state.topic_totals.assign(100, 0);

  LdaConfig cfg = make_lda_config(100);
  CHECK(cfg.alpha == doctest::Approx(0.01));
  auto dist = doc_topic_distribution(state, cfg, 0);

  char buf[16];
  std::snprintf(buf, sizeof buf, "%.4f", dist.theta[16]);
  CHECK(std::string(buf) == "0.7525");
  double sum = 0.0;
  for (int k = 0; k < 100; ++k) {
    if (k != 16) {
      std::snprintf(buf, sizeof buf, "%.4f", dist.theta[k]);
      CHECK(std::string(buf) == "0.0025");
    }
    sum += dist.theta[k];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dominant_topic(dist) == 16);
}

TEST_CASE("doc_topic_distribution symmetry and errors") {
  LdaState state;
  state.K = 2;
  state.V = 2;
  state.z = {{0, 0, 1, 1}, {}};
  state.doc_topic = {{2, 2}, {0, 0}};
  state.doc_len = {4, 0};
  state.topic_word.assign(4, 0);
  state.topic_totals.assign(2, 0);

  LdaConfig cfg;
  cfg.K = 2;
  cfg.alpha = 0.5;
  auto dist = doc_topic_distribution(state, cfg, 0);
  CHECK(dist.theta[0] == doctest::Approx(0.5));
  CHECK(dist.theta[1] == doctest::Approx(0.5));

  CHECK_THROWS_WITH_AS(doc_topic_distribution(state, cfg, 1),
                       doctest::Contains("undefined distribution"), ValidationError);
}

TEST_CASE("dominant_topic tie-breaks to lowest index") {
  CHECK(dominant_topic({{0.25, 0.25, 0.25, 0.25}}) == 0);
  CHECK(dominant_topic({{0.1, 0.8, 0.1}}) == 1);
  CHECK(dominant_topic({{0.2, 0.4, 0.4}}) == 1);
}

TEST_CASE("topic_top_words ordering and fallback") {
  Vocabulary vocab;
  vocab.terms = {"court", "judge", "tennis"};
  for (int i = 0; i < 3; ++i) vocab.index[vocab.terms[i]] = i;

  LdaState state;
  state.K = 1;
  state.V = 3;
  state.topic_word.assign(3, 0);
  state.topic_word[0 * 1 + 0] = 5;  // court
  state.topic_word[1 * 1 + 0] = 3;  // judge
  state.topic_totals = {8};

  CHECK(topic_top_words(state, vocab, 0, 2) == std::vector<std::string>{"court", "judge"});
  // n beyond the nonzero terms: zero-count terms follow lexicographically.
  CHECK(topic_top_words(state, vocab, 0, 3) ==
        std::vector<std::string>{"court", "judge", "tennis"});
  CHECK_THROWS_AS(topic_top_words(state, vocab, 1, 2), ValidationError);

  // Count ties break lexicographically.
  LdaState tied;
  tied.K = 1;
  tied.V = 3;
  tied.topic_word = {2, 2, 2};
  tied.topic_totals = {6};
  CHECK(topic_top_words(tied, vocab, 0, 3) ==
        std::vector<std::string>{"court", "judge", "tennis"});
}

TEST_CASE("top words of the disjoint fixture stay within their block") {
  auto docs = disjoint_fixture();
  LdaConfig cfg = make_lda_config(2);
  cfg.n_sweeps = 200;
  cfg.seed = 17;
  auto state = fit(docs, 4, cfg);

  Vocabulary vocab;
  vocab.terms = {"aa", "ab", "xa", "xb"};
  for (int i = 0; i < 4; ++i) vocab.index[vocab.terms[i]] = i;

  for (int k = 0; k < 2; ++k) {
    auto words = topic_top_words(state, vocab, k, 2);
    bool low = words[0][0] == 'a';
    for (const auto& w : words) CHECK((w[0] == 'a') == low);
  }
}

TEST_CASE("perplexity limits") {
  // Single word, single topic: the model predicts it with probability ~1.
  auto docs = docs_from_tokens({{0, 0, 0}});
  LdaConfig cfg = make_lda_config(1);
  cfg.beta = 1e-9;  // keep smoothing negligible for the analytic limit
  cfg.n_sweeps = 2;
  auto state = fit(docs, 1, cfg);
  CHECK(perplexity(state, cfg, docs) == doctest::Approx(1.0).epsilon(1e-6));

  // Uninformative model over V words: perplexity approaches V.
  const int V = 8;
  std::vector<std::vector<int>> toks;
  for (int d = 0; d < 16; ++d) {
    std::vector<int> t;
    for (int i = 0; i < V; ++i) t.push_back(i);
    toks.push_back(t);
  }
  auto udocs = docs_from_tokens(toks);
  LdaConfig ucfg = make_lda_config(1);
  ucfg.beta = 1000.0;  // huge smoothing flattens topic-word estimates to uniform
  ucfg.n_sweeps = 1;
  auto ustate = fit(udocs, V, ucfg);
  CHECK(perplexity(ustate, ucfg, udocs) == doctest::Approx(V).epsilon(0.05));
}

TEST_CASE("perplexity trends down over sweeps on structured data") {
  auto docs = disjoint_fixture();
  LdaConfig cfg = make_lda_config(2);
  cfg.n_sweeps = 120;
  cfg.seed = 2;
  std::vector<double> per_sweep;
  fit(docs, 4, cfg, [&](const LdaState& s, int) { per_sweep.push_back(perplexity(s, cfg, docs)); });
  REQUIRE(per_sweep.size() == 120);
  double early = 0, late = 0;
  for (int i = 0; i < 5; ++i) early += per_sweep[i];
  for (int i = 115; i < 120; ++i) late += per_sweep[i];
  CHECK(late < early);
}

TEST_CASE("observer sees consistent counts after every sweep") {
  auto docs = disjoint_fixture();
  LdaConfig cfg = make_lda_config(3);
  cfg.n_sweeps = 25;
  cfg.seed = 9;
  int calls = 0;
  long tokens = 0;
  for (const auto& d : docs) tokens += static_cast<long>(d.tokens.size());
  fit(docs, 4, cfg, [&](const LdaState& s, int sweep) {
    ++calls;
    CHECK(sweep == calls);
    CHECK(s.total_tokens() == tokens);
    CHECK(counts_consistent(s, docs));
  });
  CHECK(calls == 25);
}

TEST_CASE("model JSON round trip is exact") {
  auto docs = disjoint_fixture();
  LdaConfig cfg = make_lda_config(2);
  cfg.n_sweeps = 40;
  cfg.seed = 123;
  auto state = fit(docs, 4, cfg);

  const std::string path = "/tmp/ts_lda_model.json";
  save_model(state, cfg, "cafebabe", path);
  auto loaded = load_model(path);
  CHECK(loaded.vocab_hash == "cafebabe");
  CHECK(loaded.cfg.K == cfg.K);
  CHECK(loaded.cfg.alpha == cfg.alpha);
  CHECK(loaded.cfg.beta == cfg.beta);
  CHECK(loaded.cfg.n_sweeps == cfg.n_sweeps);
  CHECK(loaded.cfg.seed == cfg.seed);
  CHECK(loaded.state.K == state.K);
  CHECK(loaded.state.V == state.V);
  CHECK(loaded.state.doc_topic == state.doc_topic);
  CHECK(loaded.state.topic_word == state.topic_word);
  CHECK(loaded.state.topic_totals == state.topic_totals);
  CHECK(loaded.state.doc_len == state.doc_len);

  // Distributions derived from the reloaded state match exactly.
  for (size_t d = 0; d < docs.size(); ++d) {
    auto a = doc_topic_distribution(state, cfg, d);
    auto b = doc_topic_distribution(loaded.state, loaded.cfg, d);
    CHECK(a.theta == b.theta);
  }
  std::remove(path.c_str());
}
