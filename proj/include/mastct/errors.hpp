#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mastct {

// Malformed tree expression or input file. `position` is a byte offset for
// tree expressions and a 1-based line number for line-oriented files.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position, const char* unit = "offset")
      : std::runtime_error(what + " at " + unit + " " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A brute-force oracle refused an instance above its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition and domain-invariant violations are reported with
// std::invalid_argument.

}  // namespace mastct
