#ifndef PIWORD_ERRORS_HPP
#define PIWORD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace piword {

// Malformed textual input (terms, formulas, regexes, fragment specs, files).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(std::string msg) : std::runtime_error(std::move(msg)), position_(0) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A configured bound was exceeded (word length, node budget, monoid order, ...).
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// A structural invariant failed to hold (bad multiplication table, foreign
// letter, unassigned variable, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

}  // namespace piword

#endif  // PIWORD_ERRORS_HPP
