#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "headcount/ingest.hpp"
#include "headcount/region.hpp"

namespace headcount {

enum class FeatureMetric { CosineDistance, EuclideanDistance };

std::string_view to_string(FeatureMetric m);
std::optional<FeatureMetric> parse_feature_metric(std::string_view s);

struct TrackerConfig {
  double feature_threshold = 0.35;  // T
  double spatial_threshold = 0.25;  // D, normalized units
  int miss_limit = 5;               // E
  FeatureMetric feature_metric = FeatureMetric::CosineDistance;

  bool valid() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using TrackId = std::int64_t;

struct TrackedObject {
  TrackId id = 0;
  Embedding embedding;
  Point center;
  BoundingBox box;
  int e_count = 0;  // consecutive frames without a match
  std::vector<Region> region_history;
  std::int64_t last_seen_frame = 0;
};

// Cosine: 1 - cos(a, b), clamped to [0, 2]. Euclidean: |a - b|.
// Throws DimensionError on length mismatch, InvalidInput on a zero vector under cosine.
double feature_distance(std::span<const double> a, std::span<const double> b,
                        FeatureMetric metric);

double spatial_distance(Point p, Point q);

// Dense row-major matrix; rows are registered tracks, columns new detections.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> values() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct DistanceMatrices {
  Matrix feature;  // M
  Matrix spatial;  // N
};

DistanceMatrices build_matrices(std::span<const TrackedObject> registered,
                                std::span<const DetectionRecord> detections,
                                const TrackerConfig& config);

struct AssignmentResult {
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (track row, detection column)
  std::vector<std::size_t> unmatched_registered;
  std::vector<std::size_t> unmatched_detections;
};

// Greedy association: take the smallest remaining feature distance; accept it
// when neither side is taken and the spatial distance is within D, otherwise
// retire that entry. Stops after min(m, n) matches or when no entry is below T.
// Ties go to the lowest row, then the lowest column. `matrices.feature` is
// consumed: every visited entry is overwritten with T.
AssignmentResult associate(DistanceMatrices& matrices, const TrackerConfig& config);

struct StepReport {
  std::vector<TrackId> created;
  std::vector<TrackId> matched;
  std::vector<TrackId> evicted;
};

// Owns the registered-object list for one stream. Not thread-safe; one
// frame loop drives it.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config, RegionLayout layout = {});

  // `detections` must already be head-filtered.
  StepReport step(std::span<const DetectionRecord> detections, std::int64_t frame_id);

  const std::vector<TrackedObject>& objects() const { return objects_; }
  std::vector<TrackedObject>& objects() { return objects_; }
  TrackedObject* find(TrackId id);

  const TrackerConfig& config() const { return config_; }
  const RegionLayout& layout() const { return layout_; }
  TrackId next_id() const { return next_id_; }

 private:
  TrackerConfig config_;
  RegionLayout layout_;
  std::vector<TrackedObject> objects_;  // creation order
  TrackId next_id_ = 1;
};

}  // namespace headcount
