#pragma once

#include <stdexcept>
#include <string>

namespace topicscope {

// Bad input data or violated operation precondition.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file content; message names the offending line where possible.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Cross-artifact consistency failure detected at report time.
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace topicscope
