#include "headcount/errors.hpp"

namespace headcount {

namespace {

std::string decorate(const std::string& what, std::size_t line,
                     std::optional<std::int64_t> frame_id) {
  std::string out = "line " + std::to_string(line);
  if (frame_id) out += " (frame_id " + std::to_string(*frame_id) + ")";
  return out + ": " + what;
}

}  // namespace

StreamError::StreamError(const std::string& what, std::size_t line,
                         std::optional<std::int64_t> frame_id)
    : std::runtime_error(decorate(what, line, frame_id)), line_(line), frame_id_(frame_id) {}

}  // namespace headcount
