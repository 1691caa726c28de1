#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "headcount/lighting.hpp"

namespace headcount {

// Normalized frame coordinates, origin top-left, y grows downward.
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double center_x() const { return 0.5 * (x_min + x_max); }
  double center_y() const { return 0.5 * (y_min + y_max); }
  bool valid() const;

  bool operator==(const BoundingBox&) const = default;
};

// Builds a box of the given size centered on (cx, cy). Throws InvalidInput if
// the result would leave the unit square.
BoundingBox box_around(double cx, double cy, double width, double height);

using Embedding = std::vector<double>;

inline constexpr std::size_t kDefaultEmbeddingDim = 1024;
// Crop shape the upstream feature extractor is fed with (height, width, channels).
inline constexpr int kCropHeight = 120;
inline constexpr int kCropWidth = 120;
inline constexpr int kCropChannels = 3;

enum class ObjectClass { Head, Chair, Trolley, Bag };

std::string_view to_string(ObjectClass c);
std::optional<ObjectClass> parse_object_class(std::string_view s);

struct DetectionRecord {
  ObjectClass class_label = ObjectClass::Head;
  double confidence = 0.0;
  BoundingBox box;
  Embedding embedding;  // may be empty for distraction classes

  bool operator==(const DetectionRecord&) const = default;
};

struct FrameRecord {
  std::int64_t frame_id = 0;
  std::int64_t timestamp_ms = 0;
  std::optional<LightingMode> lighting;
  std::vector<DetectionRecord> detections;

  bool operator==(const FrameRecord&) const = default;
};

// Head detections at or above min_confidence, in input order.
std::vector<DetectionRecord> filter_heads(const FrameRecord& frame, double min_confidence);

// One frame as a single JSON object on one line (no trailing newline).
std::string serialize_frame(const FrameRecord& frame);

// Parses one line without cross-record checks. `line_no` only decorates errors.
FrameRecord parse_frame_line(std::string_view line, std::size_t line_no = 1);

// Sequential reader over a line-delimited detection stream. Enforces strictly
// increasing frame_id, non-decreasing timestamps and a single embedding length
// for the whole run (fixed up front, or taken from the first embedding seen).
class StreamParser {
 public:
  explicit StreamParser(std::istream& in,
                        std::optional<std::size_t> embedding_dim = std::nullopt);

  // Next frame, or nullopt at end of input. Blank lines are skipped.
  std::optional<FrameRecord> next();

  std::size_t line() const { return line_; }
  std::optional<std::size_t> embedding_dim() const { return dim_; }

 private:
  std::istream& in_;
  std::optional<std::size_t> dim_;
  std::optional<std::int64_t> last_frame_id_;
  std::int64_t last_ts_ = 0;
  std::size_t line_ = 0;
};

// Reads a whole stream eagerly.
std::vector<FrameRecord> parse_stream(std::istream& in,
                                      std::optional<std::size_t> embedding_dim = std::nullopt);

}  // namespace headcount
