#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "topicscope/errors.hpp"
#include "topicscope/io_util.hpp"
#include "topicscope/pipeline.hpp"

using namespace topicscope;
namespace fs = std::filesystem;

namespace {

std::string write_config(const std::string& name, const std::string& body) {
  std::string path = "/tmp/ts_cfg_" + name + ".json";
  write_text_file(path, body);
  return path;
}

const char* kSmallSynthConfig = R"({
  "seed": 11,
  "corpus": {"synth": {"K": 8, "V": 80, "n_relevant": 120, "n_nonrelevant": 140,
                       "min_topic_docs": 3}},
  "lda": {"K": 8, "n_sweeps": 40},
  "split": {"n_relevant_train": 80, "n_nonrelevant_train": 100},
  "cal": {"seed_batch_size": 30, "batch_size": 15, "target_recall": 0.8}
})";

void clean_dir(const std::string& dir) { fs::remove_all(dir); }

}  // namespace

TEST_CASE("load_run_config defaults and parsing") {
  auto path = write_config("defaults", R"({"corpus": {"path": "x.jsonl"}})");
  RunConfig cfg = load_run_config(path);
  CHECK(cfg.seed == 42);
  CHECK(cfg.corpus_path == "x.jsonl");
  CHECK(cfg.corpus_format == "jsonl");
  CHECK_FALSE(cfg.use_synth);
  CHECK(cfg.min_token_length == 2);
  CHECK(cfg.min_document_frequency == 1);
  CHECK(cfg.lda_K == 100);
  CHECK(cfg.lda_alpha == 0.0);
  CHECK(cfg.lda_beta == 0.01);
  CHECK(cfg.lda_sweeps == 500);
  CHECK(cfg.n_relevant_train == 1257);
  CHECK(cfg.n_nonrelevant_train == 1500);
  CHECK(cfg.nb_smoothing == 1.0);
  CHECK(cfg.linear.epochs == 20);
  CHECK(cfg.cal.target_recall == 0.813);
  CHECK(cfg.out_dir == "runs");

  auto synth_path = write_config("synth", kSmallSynthConfig);
  RunConfig synth_cfg = load_run_config(synth_path);
  CHECK(synth_cfg.use_synth);
  CHECK(synth_cfg.synth.K == 8);
  CHECK(synth_cfg.synth.n_relevant == 120);
  CHECK(synth_cfg.synth.min_topic_docs == 3);
  CHECK(synth_cfg.lda_K == 8);
  CHECK(synth_cfg.cal.target_recall == 0.8);
  CHECK(synth_cfg.cal.batch_size == 15);
}

TEST_CASE("load_run_config rejects bad sources") {
  auto both = write_config("both", R"({"corpus": {"path": "x", "synth": {"K": 2}}})");
  CHECK_THROWS_AS(load_run_config(both), ValidationError);
  auto neither = write_config("neither", R"({"corpus": {}})");
  CHECK_THROWS_AS(load_run_config(neither), ValidationError);
  auto malformed = write_config("mal", "{nope");
  CHECK_THROWS_AS(load_run_config(malformed), ParseError);
  CHECK_THROWS_AS(load_run_config("/tmp/ts_cfg_missing_no_such.json"), ValidationError);
}

TEST_CASE("seed derivation offsets") {
  RunConfig cfg;
  cfg.seed = 100;
  CHECK(synth_seed(cfg) == 101);
  CHECK(lda_seed(cfg) == 102);
  CHECK(split_seed(cfg) == 103);
  CHECK(cal_seed(cfg) == 104);
  CHECK(linear_seed(cfg) == 105);

  CHECK(lda_config(cfg).seed == 102);
  CHECK(lda_config(cfg).alpha == doctest::Approx(1.0 / cfg.lda_K));  // 0 means 1/K
  cfg.lda_alpha = 0.2;
  CHECK(lda_config(cfg).alpha == 0.2);
}

TEST_CASE("run_dir_for is a stable config hash") {
  auto path = write_config("hash", kSmallSynthConfig);
  RunConfig a = load_run_config(path);
  RunConfig b = load_run_config(path);
  CHECK(run_dir_for(a) == run_dir_for(b));
  CHECK(run_dir_for(a).rfind("runs/run-", 0) == 0);

  b.seed = 12;
  CHECK(run_dir_for(a) != run_dir_for(b));
  b = a;
  b.nb_smoothing = 2.0;
  CHECK(run_dir_for(a) != run_dir_for(b));
  CHECK(config_canonical_json(a) == config_canonical_json(load_run_config(path)));
}

TEST_CASE("load_context on synth carries truth and counts") {
  RunConfig cfg = load_run_config(write_config("ctx", kSmallSynthConfig));
  PipelineContext ctx = load_context(cfg);
  CHECK(ctx.docs.size() == 260);
  CHECK(ctx.n_relevant == 120);
  CHECK(ctx.n_nonrelevant == 140);
  CHECK(ctx.relevant.size() == 120);
  CHECK(ctx.relevant_ids.size() == 120);
  CHECK(ctx.has_truth);
  CHECK(ctx.truth.topic_of.size() == 120);
  CHECK(ctx.vocab.size() > 0);
  CHECK(ctx.vocab_hash.size() == 16);
}

TEST_CASE("full command sequence produces byte-identical reruns") {
  RunConfig cfg = load_run_config(write_config("run", kSmallSynthConfig));
  const std::string dir1 = "/tmp/ts_run_a", dir2 = "/tmp/ts_run_b";
  clean_dir(dir1);
  clean_dir(dir2);

  for (const std::string& dir : {dir1, dir2}) {
    cmd_ingest(cfg, dir);
    cmd_topics(cfg, dir);
    cmd_run_nb(cfg, dir);
    cmd_run_cal(cfg, dir);
    cmd_report(cfg, dir);
  }

  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir1)) {
    const std::string name = entry.path().filename().string();
    ++files;
    CAPTURE(name);
    CHECK(read_text_file(dir1 + "/" + name) == read_text_file(dir2 + "/" + name));
  }
  CHECK(files >= 16);  // all artifacts present

  // Summary numbers cross-check against the protocol artifacts they cite.
  const std::string summary = read_text_file(dir1 + "/summary.json");
  const std::string nb = read_text_file(dir1 + "/nb_metrics.json");
  CHECK(summary.find("\"observed\"") != std::string::npos);
  CHECK(summary.find("\"expected\"") != std::string::npos);
  CHECK(nb.find("\"combined_recall\"") != std::string::npos);

  clean_dir(dir1);
  clean_dir(dir2);
}

TEST_CASE("protocol commands demand the fitted model") {
  RunConfig cfg = load_run_config(write_config("nomodel", kSmallSynthConfig));
  const std::string dir = "/tmp/ts_run_nomodel";
  clean_dir(dir);
  CHECK_THROWS_WITH_AS(cmd_run_nb(cfg, dir), doctest::Contains("model.json"), IntegrityError);
  CHECK_THROWS_WITH_AS(cmd_run_cal(cfg, dir), doctest::Contains("model.json"), IntegrityError);
  clean_dir(dir);
}

TEST_CASE("report names the missing artifact") {
  RunConfig cfg = load_run_config(write_config("noartifacts", kSmallSynthConfig));
  const std::string dir = "/tmp/ts_run_report_missing";
  clean_dir(dir);
  cmd_ingest(cfg, dir);
  cmd_topics(cfg, dir);
  cmd_run_nb(cfg, dir);
  // CAL never ran: report must fail and say which file is absent.
  CHECK_THROWS_WITH_AS(cmd_report(cfg, dir), doctest::Contains("cal_trace.json"), IntegrityError);
  clean_dir(dir);
}

TEST_CASE("report rejects tampered artifacts") {
  RunConfig cfg = load_run_config(write_config("tamper", kSmallSynthConfig));
  const std::string dir = "/tmp/ts_run_tamper";
  clean_dir(dir);
  cmd_ingest(cfg, dir);
  cmd_topics(cfg, dir);
  cmd_run_nb(cfg, dir);
  cmd_run_cal(cfg, dir);

  // Flip the recorded combined recall so it no longer matches the hit list.
  auto nb = nlohmann::json::parse(read_text_file(dir + "/nb_metrics.json"));
  nb["combined_recall"] = 0.123;
  write_text_file(dir + "/nb_metrics.json", nb.dump(2) + "\n");
  CHECK_THROWS_AS(cmd_report(cfg, dir), IntegrityError);
  clean_dir(dir);
}

TEST_CASE("run directory lock excludes concurrent writers") {
  RunConfig cfg = load_run_config(write_config("lock", kSmallSynthConfig));
  const std::string dir = "/tmp/ts_run_lock";
  clean_dir(dir);
  fs::create_directories(dir);
  {
    DirLock held(dir);
    CHECK_THROWS_AS(cmd_ingest(cfg, dir), ValidationError);
  }
  // Lock released on destruction: the command now proceeds.
  cmd_ingest(cfg, dir);
  CHECK(fs::exists(dir + "/corpus_stats.json"));
  CHECK_FALSE(fs::exists(dir + "/.lock"));
  clean_dir(dir);
}

TEST_CASE("ingest stats reflect the corpus") {
  RunConfig cfg = load_run_config(write_config("stats", kSmallSynthConfig));
  const std::string dir = "/tmp/ts_run_stats";
  clean_dir(dir);
  cmd_ingest(cfg, dir);
  const std::string stats = read_text_file(dir + "/corpus_stats.json");
  CHECK(stats.find("\"n_relevant\": 120") != std::string::npos);
  CHECK(stats.find("\"n_nonrelevant\": 140") != std::string::npos);
  CHECK(stats.find("\"n_documents\": 260") != std::string::npos);
  clean_dir(dir);
}

TEST_CASE("synth command emits a loadable corpus and sidecar") {
  RunConfig cfg = load_run_config(write_config("synthcmd", kSmallSynthConfig));
  const std::string dir = "/tmp/ts_run_synthcmd";
  clean_dir(dir);
  cmd_synth(cfg, dir);
  CHECK(fs::exists(dir + "/corpus.jsonl"));
  CHECK(fs::exists(dir + "/truth.json"));
  auto docs = load_corpus(dir + "/corpus.jsonl", "jsonl");
  CHECK(docs.size() == 260);

  // A file-backed config pointing at the emitted corpus reproduces the counts.
  auto file_cfg_path = write_config("fromfile", std::string(R"({"corpus": {"path": ")") +
                                                    dir + R"(/corpus.jsonl"}})");
  RunConfig file_cfg = load_run_config(file_cfg_path);
  PipelineContext ctx = load_context(file_cfg);
  CHECK(ctx.n_relevant == 120);
  CHECK(ctx.n_nonrelevant == 140);
  CHECK_FALSE(ctx.has_truth);
  clean_dir(dir);

  RunConfig not_synth;
  not_synth.corpus_path = "whatever.jsonl";
  CHECK_THROWS_AS(cmd_synth(not_synth, "/tmp/ts_run_synthcmd2"), ValidationError);
}
