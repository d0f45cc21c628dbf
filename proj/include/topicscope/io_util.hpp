#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace topicscope {

// Shortest round-trip decimal form (std::to_chars); byte-stable across runs.
std::string fmt_double(double x);

uint64_t fnv1a64(const std::string& s);
std::string hex64(uint64_t x);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// CSV line from pre-formatted cells (quotes any cell containing , " or newline).
std::string csv_row(const std::vector<std::string>& cells);

// Exclusive lock on a directory: creates <dir>/.lock, failing if it already
// exists; removes it on destruction.
class DirLock {
 public:
  explicit DirLock(const std::string& dir);
  ~DirLock();
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  std::string path_;
};

}  // namespace topicscope
