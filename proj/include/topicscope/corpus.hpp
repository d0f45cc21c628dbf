#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace topicscope {

enum class Label { Relevant, NonRelevant };

struct Document {
  std::string id;
  std::string text;
  Label label = Label::NonRelevant;
  std::vector<int> tokens;   // vocabulary indices, filled by build_vocabulary
  bool empty_after_tokenize = false;
};

struct Vocabulary {
  std::vector<std::string> terms;              // lexicographically sorted
  std::unordered_map<std::string, int> index;  // term -> position in terms
  int size() const { return static_cast<int>(terms.size()); }
};

struct TokenizerConfig {
  std::set<std::string> stopwords;
  int min_token_length = 2;
  int min_document_frequency = 1;
};

struct SplitSpec {
  size_t n_relevant_train = 0;
  size_t n_nonrelevant_train = 0;
  uint64_t seed = 0;
};

// format is "jsonl" (one {"id","text","label"} object per line) or
// "csv" (header id,text,label; RFC-4180 quoting).
std::vector<Document> load_corpus(const std::string& path, const std::string& format);

// Lowercase, split on any non-ASCII-alphabetic byte, drop short tokens and
// stopwords. Deterministic, order preserving.
std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& cfg);

// Tokenizes every document, keeps terms whose document frequency is at least
// cfg.min_document_frequency, sorts terms lexicographically and rewrites each
// document's tokens as vocabulary indices (out-of-vocabulary tokens dropped).
Vocabulary build_vocabulary(std::vector<Document>& docs, const TokenizerConfig& cfg);

// Draws exactly n_relevant_train relevant and n_nonrelevant_train non-relevant
// documents without replacement (relevant pool sampled first, then
// non-relevant). Both halves keep corpus order.
std::pair<std::vector<Document>, std::vector<Document>> split_train_holdout(
    const std::vector<Document>& docs, const SplitSpec& spec);

// Built-in English stopword list (mirrored in data/stopwords_english.txt).
const std::vector<std::string>& default_stopwords();

// One lowercase word per line, UTF-8.
std::set<std::string> load_stopwords(const std::string& path);

TokenizerConfig default_tokenizer_config();

}  // namespace topicscope
