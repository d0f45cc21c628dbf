#include "topicscope/cal.hpp"

#include <algorithm>

#include "topicscope/errors.hpp"
#include "topicscope/rng.hpp"

namespace topicscope {

const char* halted_reason_name(HaltedReason r) {
  switch (r) {
    case HaltedReason::TargetReached: return "target_reached";
    case HaltedReason::Exhausted: return "exhausted";
    case HaltedReason::MaxBatches: return "max_batches";
  }
  return "unknown";
}

CalTrace run_cal(const std::vector<Document>& corpus, const CalConfig& cfg,
                 const LinearHyperparams& hp, int vocab_size) {
  if (cfg.seed_batch_size < 1 || cfg.batch_size < 1)
    throw ValidationError("CAL batch sizes must be >= 1");
  if (cfg.target_recall <= 0.0 || cfg.target_recall > 1.0)
    throw ValidationError("CAL target_recall must be in (0, 1]");
  size_t total_relevant = 0;
  for (const auto& d : corpus)
    if (d.label == Label::Relevant) ++total_relevant;
  if (total_relevant == 0)
    throw ValidationError("CAL requires at least one relevant document in the corpus");

  const size_t n = corpus.size();
  Rng rng(cfg.rng_seed);
  std::vector<bool> reviewed(n, false);
  size_t n_reviewed = 0, n_reviewed_relevant = 0;
  bool seen_rel = false, seen_non = false;

  CalTrace trace;
  auto review_batch = [&](const std::vector<size_t>& batch) {
    CalBatch rec;
    rec.index = static_cast<int>(trace.batches.size()) + 1;
    for (size_t i : batch) {
      reviewed[i] = true;
      ++n_reviewed;
      rec.reviewed_ids.push_back(corpus[i].id);
      if (corpus[i].label == Label::Relevant) {
        ++n_reviewed_relevant;
        seen_rel = true;
      } else {
        seen_non = true;
      }
    }
    rec.cum_relevant = n_reviewed_relevant;
    rec.recall = static_cast<double>(n_reviewed_relevant) / static_cast<double>(total_relevant);
    trace.batches.push_back(std::move(rec));
  };

  auto random_batch = [&](size_t want) {
    // Fisher-Yates draw over the unreviewed pool, in corpus order.
    std::vector<size_t> pool;
    pool.reserve(n - n_reviewed);
    for (size_t i = 0; i < n; ++i)
      if (!reviewed[i]) pool.push_back(i);
    if (want > pool.size()) want = pool.size();
    std::vector<size_t> batch;
    batch.reserve(want);
    size_t remaining = pool.size();
    for (size_t j = 0; j < want; ++j) {
      size_t pick = rng.next_index(remaining);
      batch.push_back(pool[pick]);
      pool[pick] = pool[remaining - 1];
      --remaining;
    }
    return batch;
  };

  enum class Halt { None, Target, Exhausted, MaxBatches };
  auto check_halt = [&]() {
    if (trace.batches.back().recall >= cfg.target_recall) return Halt::Target;
    if (n_reviewed == n) return Halt::Exhausted;
    if (cfg.max_batches > 0 && trace.batches.size() >= cfg.max_batches) return Halt::MaxBatches;
    return Halt::None;
  };

  review_batch(random_batch(cfg.seed_batch_size));
  Halt halt = check_halt();

  while (halt == Halt::None) {
    if (!seen_rel || !seen_non) {
      // Cold start: linear training needs both classes.
      review_batch(random_batch(cfg.batch_size));
      halt = check_halt();
      continue;
    }
    std::vector<Document> train;
    train.reserve(n_reviewed);
    for (size_t i = 0; i < n; ++i)
      if (reviewed[i]) train.push_back(corpus[i]);
    LinearModel model = train_linear(train, hp, vocab_size);

    std::vector<std::pair<double, size_t>> scored;  // (score, index)
    scored.reserve(n - n_reviewed);
    for (size_t i = 0; i < n; ++i)
      if (!reviewed[i]) scored.emplace_back(score_linear(model, corpus[i]), i);
    const size_t take = std::min(cfg.batch_size, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                      [&](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return corpus[a.second].id < corpus[b.second].id;
                      });
    std::vector<size_t> batch;
    batch.reserve(take);
    for (size_t j = 0; j < take; ++j) batch.push_back(scored[j].second);
    review_batch(batch);
    halt = check_halt();
  }

  trace.halted_reason = halt == Halt::Target      ? HaltedReason::TargetReached
                        : halt == Halt::Exhausted ? HaltedReason::Exhausted
                                                  : HaltedReason::MaxBatches;
  trace.final_recall = trace.batches.back().recall;
  for (size_t i = 0; i < n; ++i) {
    if (corpus[i].label != Label::Relevant) continue;
    if (reviewed[i]) trace.hit_ids.push_back(corpus[i].id);
    else trace.missed_ids.push_back(corpus[i].id);
  }
  return trace;
}

std::vector<std::pair<size_t, double>> recall_curve(const CalTrace& trace) {
  std::vector<std::pair<size_t, double>> out;
  size_t cum = 0;
  for (const auto& b : trace.batches) {
    cum += b.reviewed_ids.size();
    out.emplace_back(cum, b.recall);
  }
  return out;
}

}  // namespace topicscope
