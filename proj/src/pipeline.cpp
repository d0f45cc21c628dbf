#include "topicscope/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "topicscope/coverage.hpp"
#include "topicscope/errors.hpp"
#include "topicscope/io_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace topicscope {

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (j.contains(key)) return j.at(key).get<T>();
  return fallback;
}

json require_obj(const json& j, const char* key) {
  if (!j.contains(key)) return json::object();
  if (!j.at(key).is_object()) throw ValidationError(std::string("config field \"") + key + "\" must be an object");
  return j.at(key);
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": malformed config JSON: " + e.what());
  }

  RunConfig cfg;
  cfg.seed = get_or<uint64_t>(j, "seed", cfg.seed);
  cfg.out_dir = get_or<std::string>(j, "out_dir", cfg.out_dir);

  const json corpus = require_obj(j, "corpus");
  const bool has_path = corpus.contains("path");
  const bool has_synth = corpus.contains("synth");
  if (has_path == has_synth)
    throw ValidationError("config must specify exactly one corpus source: corpus.path or corpus.synth");
  if (has_path) {
    cfg.corpus_path = corpus.at("path").get<std::string>();
    cfg.corpus_format = get_or<std::string>(corpus, "format", cfg.corpus_format);
  } else {
    cfg.use_synth = true;
    const json s = corpus.at("synth");
    cfg.synth.K = get_or<int>(s, "K", cfg.synth.K);
    cfg.synth.V = get_or<int>(s, "V", cfg.synth.V);
    cfg.synth.n_relevant = get_or<size_t>(s, "n_relevant", cfg.synth.n_relevant);
    cfg.synth.n_nonrelevant = get_or<size_t>(s, "n_nonrelevant", cfg.synth.n_nonrelevant);
    cfg.synth.doc_len_min = get_or<int>(s, "doc_len_min", cfg.synth.doc_len_min);
    cfg.synth.doc_len_max = get_or<int>(s, "doc_len_max", cfg.synth.doc_len_max);
    cfg.synth.popularity_exponent = get_or<double>(s, "popularity_exponent", cfg.synth.popularity_exponent);
    cfg.synth.dominant_mass = get_or<double>(s, "dominant_mass", cfg.synth.dominant_mass);
    cfg.synth.nonrelevant_topic_mass =
        get_or<double>(s, "nonrelevant_topic_mass", cfg.synth.nonrelevant_topic_mass);
    cfg.synth.min_topic_docs = get_or<int>(s, "min_topic_docs", cfg.synth.min_topic_docs);
  }

  const json tok = require_obj(j, "tokenizer");
  cfg.min_token_length = get_or<int>(tok, "min_token_length", cfg.min_token_length);
  cfg.min_document_frequency = get_or<int>(tok, "min_document_frequency", cfg.min_document_frequency);
  cfg.stopwords_file = get_or<std::string>(tok, "stopwords_file", cfg.stopwords_file);

  const json lda = require_obj(j, "lda");
  cfg.lda_K = get_or<int>(lda, "K", cfg.lda_K);
  cfg.lda_alpha = get_or<double>(lda, "alpha", cfg.lda_alpha);
  cfg.lda_beta = get_or<double>(lda, "beta", cfg.lda_beta);
  cfg.lda_sweeps = get_or<int>(lda, "n_sweeps", cfg.lda_sweeps);

  const json split = require_obj(j, "split");
  cfg.n_relevant_train = get_or<size_t>(split, "n_relevant_train", cfg.n_relevant_train);
  cfg.n_nonrelevant_train = get_or<size_t>(split, "n_nonrelevant_train", cfg.n_nonrelevant_train);

  const json nb = require_obj(j, "nb");
  cfg.nb_smoothing = get_or<double>(nb, "smoothing", cfg.nb_smoothing);

  const json lin = require_obj(j, "linear");
  cfg.linear.epochs = get_or<int>(lin, "epochs", cfg.linear.epochs);
  cfg.linear.learning_rate = get_or<double>(lin, "learning_rate", cfg.linear.learning_rate);
  cfg.linear.regularization = get_or<double>(lin, "regularization", cfg.linear.regularization);
  cfg.linear.use_idf = get_or<bool>(lin, "use_idf", cfg.linear.use_idf);

  const json cal = require_obj(j, "cal");
  cfg.cal.seed_batch_size = get_or<size_t>(cal, "seed_batch_size", cfg.cal.seed_batch_size);
  cfg.cal.batch_size = get_or<size_t>(cal, "batch_size", cfg.cal.batch_size);
  cfg.cal.target_recall = get_or<double>(cal, "target_recall", cfg.cal.target_recall);
  cfg.cal.max_batches = get_or<size_t>(cal, "max_batches", cfg.cal.max_batches);
  return cfg;
}

uint64_t synth_seed(const RunConfig& cfg) { return cfg.seed + 1; }
uint64_t lda_seed(const RunConfig& cfg) { return cfg.seed + 2; }
uint64_t split_seed(const RunConfig& cfg) { return cfg.seed + 3; }
uint64_t cal_seed(const RunConfig& cfg) { return cfg.seed + 4; }
uint64_t linear_seed(const RunConfig& cfg) { return cfg.seed + 5; }

LdaConfig lda_config(const RunConfig& cfg) {
  LdaConfig c;
  c.K = cfg.lda_K;
  c.alpha = cfg.lda_alpha > 0 ? cfg.lda_alpha : 1.0 / cfg.lda_K;
  c.beta = cfg.lda_beta;
  c.n_sweeps = cfg.lda_sweeps;
  c.seed = lda_seed(cfg);
  return c;
}

std::string config_canonical_json(const RunConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["out_dir"] = cfg.out_dir;
  if (cfg.use_synth) {
    j["corpus"]["synth"] = {{"K", cfg.synth.K},
                            {"V", cfg.synth.V},
                            {"n_relevant", cfg.synth.n_relevant},
                            {"n_nonrelevant", cfg.synth.n_nonrelevant},
                            {"doc_len_min", cfg.synth.doc_len_min},
                            {"doc_len_max", cfg.synth.doc_len_max},
                            {"popularity_exponent", cfg.synth.popularity_exponent},
                            {"dominant_mass", cfg.synth.dominant_mass},
                            {"nonrelevant_topic_mass", cfg.synth.nonrelevant_topic_mass},
                            {"min_topic_docs", cfg.synth.min_topic_docs}};
  } else {
    j["corpus"] = {{"path", cfg.corpus_path}, {"format", cfg.corpus_format}};
  }
  j["tokenizer"] = {{"min_token_length", cfg.min_token_length},
                    {"min_document_frequency", cfg.min_document_frequency},
                    {"stopwords_file", cfg.stopwords_file}};
  j["lda"] = {{"K", cfg.lda_K}, {"alpha", cfg.lda_alpha}, {"beta", cfg.lda_beta}, {"n_sweeps", cfg.lda_sweeps}};
  j["split"] = {{"n_relevant_train", cfg.n_relevant_train},
                {"n_nonrelevant_train", cfg.n_nonrelevant_train}};
  j["nb"] = {{"smoothing", cfg.nb_smoothing}};
  j["linear"] = {{"epochs", cfg.linear.epochs},
                 {"learning_rate", cfg.linear.learning_rate},
                 {"regularization", cfg.linear.regularization},
                 {"use_idf", cfg.linear.use_idf}};
  j["cal"] = {{"seed_batch_size", cfg.cal.seed_batch_size},
              {"batch_size", cfg.cal.batch_size},
              {"target_recall", cfg.cal.target_recall},
              {"max_batches", cfg.cal.max_batches}};
  return j.dump();
}

std::string run_dir_for(const RunConfig& cfg) {
  return cfg.out_dir + "/run-" + hex64(fnv1a64(config_canonical_json(cfg)));
}

PipelineContext load_context(const RunConfig& cfg) {
  PipelineContext ctx;
  if (cfg.use_synth) {
    SynthConfig sc = cfg.synth;
    sc.seed = synth_seed(cfg);
    SynthResult res = generate(sc);
    ctx.docs = std::move(res.docs);
    ctx.truth = std::move(res.truth);
    ctx.has_truth = true;
  } else {
    ctx.docs = load_corpus(cfg.corpus_path, cfg.corpus_format);
  }

  TokenizerConfig tok;
  tok.min_token_length = cfg.min_token_length;
  tok.min_document_frequency = cfg.min_document_frequency;
  if (cfg.stopwords_file.empty()) {
    const auto& words = default_stopwords();
    tok.stopwords.insert(words.begin(), words.end());
  } else {
    tok.stopwords = load_stopwords(cfg.stopwords_file);
  }
  ctx.vocab = build_vocabulary(ctx.docs, tok);

  std::string joined;
  for (const auto& t : ctx.vocab.terms) {
    joined += t;
    joined += '\n';
  }
  ctx.vocab_hash = hex64(fnv1a64(joined));

  for (const auto& d : ctx.docs) {
    if (d.label == Label::Relevant) {
      ctx.relevant.push_back(d);
      ctx.relevant_ids.push_back(d.id);
      ++ctx.n_relevant;
    } else {
      ++ctx.n_nonrelevant;
    }
    if (d.empty_after_tokenize) ++ctx.empty_docs;
  }
  return ctx;
}

namespace {

std::string prepare_run_dir(const RunConfig& cfg, const std::string& out_override) {
  const std::string dir = out_override.empty() ? run_dir_for(cfg) : out_override;
  fs::create_directories(dir);
  return dir;
}

void write_json_artifact(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json load_json_artifact(const std::string& path, const char* what) {
  if (!fs::exists(path))
    throw IntegrityError(std::string("missing ") + what + " artifact: " + path);
  std::ifstream in(path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IntegrityError(path + ": malformed artifact JSON: " + e.what());
  }
  return j;
}

json config_echo(const RunConfig& cfg) {
  json echo = json::parse(config_canonical_json(cfg));
  echo["derived_seeds"] = {{"synth", synth_seed(cfg)},
                           {"lda", lda_seed(cfg)},
                           {"split", split_seed(cfg)},
                           {"cal", cal_seed(cfg)},
                           {"linear", linear_seed(cfg)}};
  return echo;
}

std::string histogram_csv(const std::vector<long>& counts) {
  std::string out = "topic,count\n";
  for (size_t k = 0; k < counts.size(); ++k)
    out += csv_row({std::to_string(k), std::to_string(counts[k])});
  return out;
}

json coverage_json(const CoverageReport& rep) {
  json j;
  j["K"] = rep.K;
  j["hit_topic_counts"] = rep.hit_topic_counts;
  j["missed_topic_counts"] = rep.missed_topic_counts;
  j["hit_topics"] = std::vector<int>(rep.hit_topics.begin(), rep.hit_topics.end());
  j["missed_topics"] = std::vector<int>(rep.missed_topics.begin(), rep.missed_topics.end());
  j["novel_in_missed"] = std::vector<int>(rep.novel_in_missed.begin(), rep.novel_in_missed.end());
  j["n_hit_topics"] = rep.hit_topics.size();
  j["n_missed_topics"] = rep.missed_topics.size();
  j["n_novel_in_missed"] = rep.novel_in_missed.size();
  j["excluded_empty_docs"] = rep.excluded_empty_docs;
  return j;
}

json power_law_json(const PowerLawFit& fit) {
  return {{"exponent", fit.exponent},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"n_points", fit.n_points}};
}

std::string power_law_csv(const std::vector<long>& counts, const PowerLawFit& fit) {
  std::vector<long> nonzero;
  for (long c : counts)
    if (c > 0) nonzero.push_back(c);
  std::sort(nonzero.begin(), nonzero.end(), std::greater<long>());
  std::string out = "rank,count,predicted\n";
  for (size_t i = 0; i < nonzero.size(); ++i) {
    const double pred =
        std::exp(fit.intercept + fit.exponent * std::log(static_cast<double>(i + 1)));
    out += csv_row({std::to_string(i + 1), std::to_string(nonzero[i]), fmt_double(pred)});
  }
  return out;
}

json metrics_json(const EvalMetrics& m) {
  return {{"recall", m.recall},      {"precision", m.precision},
          {"tp", m.tp},              {"fp", m.fp},
          {"tn", m.tn},              {"fn", m.fn},
          {"degenerate_precision", m.degenerate_precision}};
}

}  // namespace

std::string cmd_ingest(const RunConfig& cfg, const std::string& out_override) {
  const std::string dir = prepare_run_dir(cfg, out_override);
  DirLock lock(dir);
  PipelineContext ctx = load_context(cfg);
  json j;
  j["n_relevant"] = ctx.n_relevant;
  j["n_nonrelevant"] = ctx.n_nonrelevant;
  j["n_documents"] = ctx.n_relevant + ctx.n_nonrelevant;
  j["vocabulary_size"] = ctx.vocab.size();
  j["empty_documents"] = ctx.empty_docs;
  j["vocab_hash"] = ctx.vocab_hash;
  j["config"] = config_echo(cfg);
  write_json_artifact(dir + "/corpus_stats.json", j);
  return dir;
}

std::string cmd_topics(const RunConfig& cfg, const std::string& out_override) {
  const std::string dir = prepare_run_dir(cfg, out_override);
  DirLock lock(dir);
  PipelineContext ctx = load_context(cfg);
  const LdaConfig lcfg = lda_config(cfg);
  LdaState state = fit(ctx.relevant, ctx.vocab.size(), lcfg);
  save_model(state, lcfg, ctx.vocab_hash, dir + "/model.json");

  std::string top_csv = "topic,rank,term,count\n";
  for (int k = 0; k < lcfg.K; ++k) {
    auto terms = topic_top_words(state, ctx.vocab, k, 15);
    for (size_t r = 0; r < terms.size(); ++r) {
      const int w = ctx.vocab.index.at(terms[r]);
      top_csv += csv_row({std::to_string(k), std::to_string(r + 1), terms[r],
                          std::to_string(state.word_topic_count(k, w))});
    }
  }
  write_text_file(dir + "/top_words.csv", top_csv);

  const std::vector<long> hist = topic_histogram(state, lcfg, ctx.relevant, ctx.relevant_ids);
  write_text_file(dir + "/histogram_relevant.csv", histogram_csv(hist));

  std::vector<double> counts(hist.begin(), hist.end());
  const PowerLawFit fit_res = power_law_fit(counts);
  write_json_artifact(dir + "/power_law.json", power_law_json(fit_res));
  write_text_file(dir + "/power_law.csv", power_law_csv(hist, fit_res));
  return dir;
}

std::string cmd_run_nb(const RunConfig& cfg, const std::string& out_override) {
  const std::string dir = prepare_run_dir(cfg, out_override);
  DirLock lock(dir);
  if (!fs::exists(dir + "/model.json"))
    throw IntegrityError("missing fitted topic model artifact: " + dir +
                         "/model.json (run the topics command first)");
  PipelineContext ctx = load_context(cfg);
  LoadedModel model = load_model(dir + "/model.json");
  if (model.vocab_hash != ctx.vocab_hash)
    throw IntegrityError("model.json was fitted on a different vocabulary (hash mismatch)");

  SplitSpec spec{cfg.n_relevant_train, cfg.n_nonrelevant_train, split_seed(cfg)};
  auto [train, holdout] = split_train_holdout(ctx.docs, spec);
  NbModel nb = train_nb(train, cfg.nb_smoothing, ctx.vocab.size());

  std::vector<std::pair<std::string, bool>> preds, truth;
  std::vector<std::string> train_pos, holdout_tp;
  for (const auto& d : train)
    if (d.label == Label::Relevant) train_pos.push_back(d.id);
  for (const auto& d : holdout) {
    const bool p = score_nb(nb, d) > 0.0;
    preds.emplace_back(d.id, p);
    truth.emplace_back(d.id, d.label == Label::Relevant);
    if (p && d.label == Label::Relevant) holdout_tp.push_back(d.id);
  }
  const EvalMetrics holdout_metrics = evaluate(preds, truth);
  HitSet hit_set = combined_hit_set(train_pos, holdout_tp, ctx.relevant_ids);
  const double combined_recall =
      static_cast<double>(hit_set.hits.size()) / static_cast<double>(ctx.relevant_ids.size());

  json j;
  j["holdout"] = metrics_json(holdout_metrics);
  j["combined_recall"] = combined_recall;
  j["n_hits"] = hit_set.hits.size();
  j["n_missed"] = hit_set.missed.size();
  j["hit_ids"] = hit_set.hits;
  j["missed_ids"] = hit_set.missed;
  j["split"] = {{"n_relevant_train", cfg.n_relevant_train},
                {"n_nonrelevant_train", cfg.n_nonrelevant_train},
                {"seed", split_seed(cfg)}};
  j["smoothing"] = cfg.nb_smoothing;
  write_json_artifact(dir + "/nb_metrics.json", j);

  const CoverageReport rep =
      coverage_report(model.state, model.cfg, ctx.relevant, hit_set.hits, hit_set.missed);
  write_json_artifact(dir + "/nb_coverage.json", coverage_json(rep));
  write_text_file(dir + "/nb_hit_histogram.csv", histogram_csv(rep.hit_topic_counts));
  write_text_file(dir + "/nb_missed_histogram.csv", histogram_csv(rep.missed_topic_counts));
  return dir;
}

std::string cmd_run_cal(const RunConfig& cfg, const std::string& out_override) {
  const std::string dir = prepare_run_dir(cfg, out_override);
  DirLock lock(dir);
  if (!fs::exists(dir + "/model.json"))
    throw IntegrityError("missing fitted topic model artifact: " + dir +
                         "/model.json (run the topics command first)");
  PipelineContext ctx = load_context(cfg);
  LoadedModel model = load_model(dir + "/model.json");
  if (model.vocab_hash != ctx.vocab_hash)
    throw IntegrityError("model.json was fitted on a different vocabulary (hash mismatch)");

  CalConfig ccfg = cfg.cal;
  ccfg.rng_seed = cal_seed(cfg);
  LinearHyperparams hp = cfg.linear;
  hp.seed = linear_seed(cfg);
  const CalTrace trace = run_cal(ctx.docs, ccfg, hp, ctx.vocab.size());

  size_t reviewed_total = 0;
  json batches = json::array();
  for (const auto& b : trace.batches) {
    reviewed_total += b.reviewed_ids.size();
    batches.push_back({{"index", b.index},
                       {"n_reviewed", b.reviewed_ids.size()},
                       {"cum_relevant", b.cum_relevant},
                       {"recall", b.recall}});
  }
  json j;
  j["batches"] = batches;
  j["halted_reason"] = halted_reason_name(trace.halted_reason);
  j["final_recall"] = trace.final_recall;
  j["n_reviewed"] = reviewed_total;
  j["review_precision"] =
      reviewed_total > 0 ? static_cast<double>(trace.hit_ids.size()) / reviewed_total : 0.0;
  j["n_hits"] = trace.hit_ids.size();
  j["n_missed"] = trace.missed_ids.size();
  j["hit_ids"] = trace.hit_ids;
  j["missed_ids"] = trace.missed_ids;
  j["config"] = {{"seed_batch_size", ccfg.seed_batch_size},
                 {"batch_size", ccfg.batch_size},
                 {"target_recall", ccfg.target_recall},
                 {"max_batches", ccfg.max_batches},
                 {"rng_seed", ccfg.rng_seed}};
  write_json_artifact(dir + "/cal_trace.json", j);

  std::string curve = "reviewed_count,recall\n";
  for (const auto& [count, recall] : recall_curve(trace))
    curve += csv_row({std::to_string(count), fmt_double(recall)});
  write_text_file(dir + "/cal_recall_curve.csv", curve);

  const CoverageReport rep =
      coverage_report(model.state, model.cfg, ctx.relevant, trace.hit_ids, trace.missed_ids);
  write_json_artifact(dir + "/cal_coverage.json", coverage_json(rep));
  write_text_file(dir + "/cal_hit_histogram.csv", histogram_csv(rep.hit_topic_counts));
  write_text_file(dir + "/cal_missed_histogram.csv", histogram_csv(rep.missed_topic_counts));
  return dir;
}

namespace {

void check_coverage_consistent(const json& cov, const char* what) {
  const auto hit_counts = cov.at("hit_topic_counts").get<std::vector<long>>();
  const auto missed_counts = cov.at("missed_topic_counts").get<std::vector<long>>();
  std::set<int> hit_topics, missed_topics, novel;
  for (size_t k = 0; k < hit_counts.size(); ++k)
    if (hit_counts[k] > 0) hit_topics.insert(static_cast<int>(k));
  for (size_t k = 0; k < missed_counts.size(); ++k)
    if (missed_counts[k] > 0) missed_topics.insert(static_cast<int>(k));
  for (int k : missed_topics)
    if (!hit_topics.count(k)) novel.insert(k);
  const auto stored_hit = cov.at("hit_topics").get<std::set<int>>();
  const auto stored_missed = cov.at("missed_topics").get<std::set<int>>();
  const auto stored_novel = cov.at("novel_in_missed").get<std::set<int>>();
  if (stored_hit != hit_topics || stored_missed != missed_topics || stored_novel != novel)
    throw IntegrityError(std::string(what) + ": topic sets are inconsistent with the stored counts");
}

}  // namespace

std::string cmd_report(const RunConfig& cfg, const std::string& out_override) {
  const std::string dir = prepare_run_dir(cfg, out_override);
  DirLock lock(dir);
  PipelineContext ctx = load_context(cfg);

  const json nb_metrics = load_json_artifact(dir + "/nb_metrics.json", "NB metrics");
  const json nb_cov = load_json_artifact(dir + "/nb_coverage.json", "NB coverage");
  const json cal_trace = load_json_artifact(dir + "/cal_trace.json", "CAL trace");
  const json cal_cov = load_json_artifact(dir + "/cal_coverage.json", "CAL coverage");
  const json power = load_json_artifact(dir + "/power_law.json", "power-law fit");

  // Integrity: every count recomputable from the artifacts.
  const auto n_rel = static_cast<size_t>(ctx.n_relevant);
  const auto nb_hits = nb_metrics.at("hit_ids").get<std::vector<std::string>>();
  const auto nb_missed = nb_metrics.at("missed_ids").get<std::vector<std::string>>();
  if (nb_hits.size() != nb_metrics.at("n_hits").get<size_t>() ||
      nb_missed.size() != nb_metrics.at("n_missed").get<size_t>() ||
      nb_hits.size() + nb_missed.size() != n_rel)
    throw IntegrityError("nb_metrics.json: hit/missed counts do not partition the relevant set");
  const auto cal_hits = cal_trace.at("hit_ids").get<std::vector<std::string>>();
  const auto cal_missed = cal_trace.at("missed_ids").get<std::vector<std::string>>();
  if (cal_hits.size() != cal_trace.at("n_hits").get<size_t>() ||
      cal_hits.size() + cal_missed.size() != n_rel)
    throw IntegrityError("cal_trace.json: hit/missed counts do not partition the relevant set");
  check_coverage_consistent(nb_cov, "nb_coverage.json");
  check_coverage_consistent(cal_cov, "cal_coverage.json");
  const double nb_recall = nb_metrics.at("combined_recall").get<double>();
  if (std::abs(nb_recall - static_cast<double>(nb_hits.size()) / n_rel) > 1e-12)
    throw IntegrityError("nb_metrics.json: combined_recall inconsistent with hit count");
  const double cal_recall = cal_trace.at("final_recall").get<double>();
  if (std::abs(cal_recall - static_cast<double>(cal_hits.size()) / n_rel) > 1e-12)
    throw IntegrityError("cal_trace.json: final_recall inconsistent with hit count");

  const double observed = observed_overlap(nb_hits, cal_hits, ctx.relevant_ids);
  const double expected = expected_overlap(nb_recall, cal_recall);

  json j;
  j["config"] = config_echo(cfg);
  j["nb"] = {{"recall", nb_recall},
             {"precision", nb_metrics.at("holdout").at("precision")},
             {"precision_degenerate", nb_metrics.at("holdout").at("degenerate_precision")},
             {"holdout_recall", nb_metrics.at("holdout").at("recall")},
             {"n_hits", nb_hits.size()},
             {"n_missed", nb_missed.size()},
             {"n_hit_topics", nb_cov.at("n_hit_topics")},
             {"n_missed_topics", nb_cov.at("n_missed_topics")},
             {"n_novel_in_missed", nb_cov.at("n_novel_in_missed")}};
  j["cal"] = {{"recall", cal_recall},
              {"precision", cal_trace.at("review_precision")},
              {"n_hits", cal_hits.size()},
              {"n_missed", cal_missed.size()},
              {"n_hit_topics", cal_cov.at("n_hit_topics")},
              {"n_missed_topics", cal_cov.at("n_missed_topics")},
              {"n_novel_in_missed", cal_cov.at("n_novel_in_missed")},
              {"halted_reason", cal_trace.at("halted_reason")}};
  j["power_law"] = power;
  j["overlap"] = {{"observed", observed}, {"expected", expected}};
  write_json_artifact(dir + "/summary.json", j);

  std::string txt;
  txt += "Experiment summary\n";
  txt += "==================\n";
  txt += "Relevant documents: " + std::to_string(n_rel) + "\n\n";
  txt += "NB protocol: recall " + fmt_double(nb_recall) + ", holdout precision " +
         fmt_double(nb_metrics.at("holdout").at("precision").get<double>()) + "\n";
  txt += "  hits " + std::to_string(nb_hits.size()) + ", missed " + std::to_string(nb_missed.size()) +
         ", hit topics " + std::to_string(nb_cov.at("n_hit_topics").get<long>()) + ", missed topics " +
         std::to_string(nb_cov.at("n_missed_topics").get<long>()) + ", novel in missed " +
         std::to_string(nb_cov.at("n_novel_in_missed").get<long>()) + "\n";
  txt += "CAL protocol: recall " + fmt_double(cal_recall) + ", review precision " +
         fmt_double(cal_trace.at("review_precision").get<double>()) + ", halted: " +
         cal_trace.at("halted_reason").get<std::string>() + "\n";
  txt += "  hits " + std::to_string(cal_hits.size()) + ", missed " + std::to_string(cal_missed.size()) +
         ", hit topics " + std::to_string(cal_cov.at("n_hit_topics").get<long>()) + ", missed topics " +
         std::to_string(cal_cov.at("n_missed_topics").get<long>()) + ", novel in missed " +
         std::to_string(cal_cov.at("n_novel_in_missed").get<long>()) + "\n";
  txt += "Power law (full relevant set): exponent " +
         fmt_double(power.at("exponent").get<double>()) + ", r^2 " +
         fmt_double(power.at("r_squared").get<double>()) + "\n";
  txt += "Hit-set overlap: observed " + fmt_double(observed) + ", expected under independence " +
         fmt_double(expected) + "\n";
  write_text_file(dir + "/summary.txt", txt);
  return dir;
}

std::string cmd_synth(const RunConfig& cfg, const std::string& out_override) {
  if (!cfg.use_synth)
    throw ValidationError("synth command requires a corpus.synth config section");
  const std::string dir = prepare_run_dir(cfg, out_override);
  DirLock lock(dir);
  SynthConfig sc = cfg.synth;
  sc.seed = synth_seed(cfg);
  SynthResult res = generate(sc);
  write_corpus_jsonl(res.docs, dir + "/corpus.jsonl");
  write_truth_sidecar(res.truth, dir + "/truth.json");
  return dir;
}

}  // namespace topicscope
