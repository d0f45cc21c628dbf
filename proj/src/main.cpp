#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "topicscope/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"topicscope: topic coverage analysis for document retrieval protocols"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  uint64_t seed_override = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration JSON file")->required();
    sub->add_option("--out", out_override, "write artifacts to this directory instead of the config-hash run dir");
    sub->add_option("--seed", seed_override, "override the global seed from the config")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* ingest = app.add_subcommand("ingest", "load the corpus and write corpus statistics");
  CLI::App* topics = app.add_subcommand("topics", "fit the topic model over the relevant documents");
  CLI::App* run_nb = app.add_subcommand("run-nb", "split/train/score retrieval protocol with coverage");
  CLI::App* run_cal = app.add_subcommand("run-cal", "active-learning retrieval protocol with coverage");
  CLI::App* report = app.add_subcommand("report", "cross-check artifacts and write the run summary");
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus and truth sidecar");
  for (CLI::App* sub : {ingest, topics, run_nb, run_cal, report, synth}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    topicscope::RunConfig cfg = topicscope::load_run_config(config_path);
    if (seed_set) cfg.seed = seed_override;
    std::string dir;
    if (ingest->parsed()) dir = topicscope::cmd_ingest(cfg, out_override);
    else if (topics->parsed()) dir = topicscope::cmd_topics(cfg, out_override);
    else if (run_nb->parsed()) dir = topicscope::cmd_run_nb(cfg, out_override);
    else if (run_cal->parsed()) dir = topicscope::cmd_run_cal(cfg, out_override);
    else if (report->parsed()) dir = topicscope::cmd_report(cfg, out_override);
    else if (synth->parsed()) dir = topicscope::cmd_synth(cfg, out_override);
    std::cout << dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
