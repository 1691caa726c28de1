#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace headcount {

// Caller passed values outside an operation's domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Embedding lengths disagree, either between two vectors or against the run's dimension.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base for anything wrong with a detection stream. Carries the 1-based line
// number and, once known, the frame_id of the offending record.
class StreamError : public std::runtime_error {
 public:
  StreamError(const std::string& what, std::size_t line,
              std::optional<std::int64_t> frame_id = std::nullopt);

  std::size_t line() const { return line_; }
  std::optional<std::int64_t> frame_id() const { return frame_id_; }

 private:
  std::size_t line_;
  std::optional<std::int64_t> frame_id_;
};

class ParseError : public StreamError {
 public:
  using StreamError::StreamError;
};

class StreamOrderError : public StreamError {
 public:
  using StreamError::StreamError;
};

class StreamDimensionError : public StreamError {
 public:
  using StreamError::StreamError;
};

}  // namespace headcount
