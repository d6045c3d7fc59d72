#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixed {

// Malformed text input (formulas, sequents, proof files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  explicit ParseError(const std::string& msg) : std::runtime_error(msg), pos_(0) {}

  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// An operation was called on inputs violating its documented hypotheses.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mixed
