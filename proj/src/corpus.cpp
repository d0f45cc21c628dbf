#include "topicscope/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "topicscope/errors.hpp"
#include "topicscope/rng.hpp"

namespace topicscope {

namespace {

const char* kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
    "any", "are", "aren", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "cannot", "could", "couldn", "d",
    "did", "didn", "do", "does", "doesn", "doing", "don", "down", "during", "each",
    "few", "for", "from", "further", "had", "hadn", "has", "hasn", "have", "haven",
    "having", "he", "her", "here", "hers", "herself", "him", "himself", "his", "how",
    "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just",
    "ll", "m", "ma", "me", "might", "more", "most", "must", "mustn", "my",
    "myself", "no", "nor", "not", "now", "o", "of", "off", "on", "once",
    "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "re",
    "s", "same", "shall", "shan", "she", "should", "shouldn", "so", "some", "such",
    "t", "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there",
    "these", "they", "this", "those", "through", "to", "too", "under", "until", "up",
    "ve", "very", "was", "wasn", "we", "were", "weren", "what", "when", "where",
    "which", "while", "who", "whom", "why", "will", "with", "won", "would", "wouldn",
    "y", "you", "your", "yours", "yourself", "yourselves",
};

Label parse_label(const std::string& s, size_t line) {
  if (s == "relevant") return Label::Relevant;
  if (s == "nonrelevant") return Label::NonRelevant;
  throw ValidationError("line " + std::to_string(line) + ": unknown label \"" + s +
                        "\" (expected \"relevant\" or \"nonrelevant\")");
}

std::vector<Document> load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus file: " + path);
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed JSON record: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("text") || !rec.contains("label") ||
        !rec["id"].is_string() || !rec["text"].is_string() || !rec["label"].is_string()) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": record must be an object with string fields id, text, label");
    }
    Document d;
    d.id = rec["id"].get<std::string>();
    d.text = rec["text"].get<std::string>();
    d.label = parse_label(rec["label"].get<std::string>(), lineno);
    if (!seen.insert(d.id).second)
      throw ValidationError("duplicate document id \"" + d.id + "\" at line " + std::to_string(lineno));
    docs.push_back(std::move(d));
  }
  return docs;
}

// Minimal RFC-4180 reader: quoted fields may contain commas, newlines and "" escapes.
std::vector<Document> load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open corpus file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::vector<std::vector<std::string>> rows;
  std::vector<size_t> row_lines;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  size_t lineno = 1, row_start = 1;
  auto end_field = [&]() { row.push_back(field); field.clear(); };
  auto end_row = [&]() {
    end_field();
    if (row.size() != 1 || !row[0].empty()) {  // skip blank lines
      rows.push_back(row);
      row_lines.push_back(row_start);
    }
    row.clear();
    row_start = lineno;
  };
  for (size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++lineno;
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty())
        throw ParseError(path + ":" + std::to_string(lineno) + ": stray quote inside unquoted field");
      in_quotes = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      ++lineno;
      end_row();
    } else {
      field += c;
    }
  }
  if (in_quotes) throw ParseError(path + ":" + std::to_string(lineno) + ": unterminated quoted field");
  if (!field.empty() || row.size() > 0) end_row();

  if (rows.empty()) return {};
  const auto& header = rows[0];
  if (header.size() != 3 || header[0] != "id" || header[1] != "text" || header[2] != "label")
    throw ParseError(path + ":" + std::to_string(row_lines[0]) + ": expected CSV header id,text,label");

  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != 3)
      throw ParseError(path + ":" + std::to_string(row_lines[r]) + ": expected 3 fields, got " +
                       std::to_string(cells.size()));
    Document d;
    d.id = cells[0];
    d.text = cells[1];
    d.label = parse_label(cells[2], row_lines[r]);
    if (!seen.insert(d.id).second)
      throw ValidationError("duplicate document id \"" + d.id + "\" at line " +
                            std::to_string(row_lines[r]));
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace

const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words(std::begin(kStopwords), std::end(kStopwords));
  return words;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stopword file: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) out.insert(line);
  }
  return out;
}

TokenizerConfig default_tokenizer_config() {
  TokenizerConfig cfg;
  const auto& words = default_stopwords();
  cfg.stopwords.insert(words.begin(), words.end());
  return cfg;
}

std::vector<Document> load_corpus(const std::string& path, const std::string& format) {
  if (format == "jsonl") return load_jsonl(path);
  if (format == "csv") return load_csv(path);
  throw ValidationError("unknown corpus format \"" + format + "\" (expected jsonl or csv)");
}

std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& cfg) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&]() {
    if (static_cast<int>(cur.size()) >= cfg.min_token_length && !cfg.stopwords.count(cur))
      out.push_back(cur);
    cur.clear();
  };
  for (unsigned char c : text) {
    if (c < 128 && std::isalpha(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      flush();
    }
  }
  if (!cur.empty()) flush();
  return out;
}

Vocabulary build_vocabulary(std::vector<Document>& docs, const TokenizerConfig& cfg) {
  std::vector<std::vector<std::string>> raw(docs.size());
  std::map<std::string, int> df;  // ordered: gives lexicographic terms for free
  for (size_t i = 0; i < docs.size(); ++i) {
    raw[i] = tokenize(docs[i].text, cfg);
    std::unordered_set<std::string> uniq(raw[i].begin(), raw[i].end());
    for (const auto& t : uniq) df[t] += 1;
  }

  Vocabulary vocab;
  for (const auto& [term, count] : df) {
    if (count >= cfg.min_document_frequency) {
      vocab.index.emplace(term, static_cast<int>(vocab.terms.size()));
      vocab.terms.push_back(term);
    }
  }

  bool any_nonempty = false;
  for (size_t i = 0; i < docs.size(); ++i) {
    docs[i].tokens.clear();
    for (const auto& t : raw[i]) {
      auto it = vocab.index.find(t);
      if (it != vocab.index.end()) docs[i].tokens.push_back(it->second);
    }
    docs[i].empty_after_tokenize = docs[i].tokens.empty();
    any_nonempty = any_nonempty || !docs[i].tokens.empty();
  }
  if (!docs.empty() && !any_nonempty)
    throw ValidationError("all documents are empty after tokenization and frequency filtering");
  return vocab;
}

std::pair<std::vector<Document>, std::vector<Document>> split_train_holdout(
    const std::vector<Document>& docs, const SplitSpec& spec) {
  std::vector<size_t> rel, non;
  for (size_t i = 0; i < docs.size(); ++i)
    (docs[i].label == Label::Relevant ? rel : non).push_back(i);
  if (spec.n_relevant_train > rel.size())
    throw ValidationError("split needs " + std::to_string(spec.n_relevant_train) +
                          " relevant training documents but corpus has only " +
                          std::to_string(rel.size()));
  if (spec.n_nonrelevant_train > non.size())
    throw ValidationError("split needs " + std::to_string(spec.n_nonrelevant_train) +
                          " non-relevant training documents but corpus has only " +
                          std::to_string(non.size()));

  // Draw order: relevant pool first, then non-relevant pool.
  Rng rng(spec.seed);
  std::vector<bool> in_train(docs.size(), false);
  for (size_t j : rng.sample_indices(rel.size(), spec.n_relevant_train)) in_train[rel[j]] = true;
  for (size_t j : rng.sample_indices(non.size(), spec.n_nonrelevant_train)) in_train[non[j]] = true;

  std::vector<Document> train, holdout;
  for (size_t i = 0; i < docs.size(); ++i)
    (in_train[i] ? train : holdout).push_back(docs[i]);
  return {std::move(train), std::move(holdout)};
}

}  // namespace topicscope
