#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blackboard {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated entity invariant: duplicate id, dangling reference, bad arity.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Network generation could not produce a traversable link set within the attempt cap.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Path search or traversal was handed a network it cannot work on.
class TraversalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed save or change file. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace blackboard
