#include "headcount/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "headcount/errors.hpp"

namespace headcount {

std::string_view to_string(FeatureMetric m) {
  return m == FeatureMetric::CosineDistance ? "cosine" : "euclidean";
}

std::optional<FeatureMetric> parse_feature_metric(std::string_view s) {
  if (s == "cosine") return FeatureMetric::CosineDistance;
  if (s == "euclidean") return FeatureMetric::EuclideanDistance;
  return std::nullopt;
}

bool TrackerConfig::valid() const {
  return std::isfinite(feature_threshold) && feature_threshold > 0.0 &&
         std::isfinite(spatial_threshold) && spatial_threshold > 0.0 && miss_limit >= 0;
}

double feature_distance(std::span<const double> a, std::span<const double> b,
                        FeatureMetric metric) {
  if (a.size() != b.size())
    throw DimensionError("embedding lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));

  if (metric == FeatureMetric::EuclideanDistance) {
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      double d = a[k] - b[k];
      sq += d * d;
    }
    return std::sqrt(sq);
  }

  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    aa += a[k] * a[k];
    bb += b[k] * b[k];
  }
  if (aa == 0.0 || bb == 0.0) throw InvalidInput("cosine distance of a zero vector");
  double dist = 1.0 - dot / (std::sqrt(aa) * std::sqrt(bb));
  return std::clamp(dist, 0.0, 2.0);
}

double spatial_distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DistanceMatrices build_matrices(std::span<const TrackedObject> registered,
                                std::span<const DetectionRecord> detections,
                                const TrackerConfig& config) {
  DistanceMatrices out{Matrix(registered.size(), detections.size()),
                       Matrix(registered.size(), detections.size())};
  for (std::size_t i = 0; i < registered.size(); ++i) {
    for (std::size_t j = 0; j < detections.size(); ++j) {
      const auto& det = detections[j];
      out.feature(i, j) =
          feature_distance(registered[i].embedding, det.embedding, config.feature_metric);
      out.spatial(i, j) =
          spatial_distance(registered[i].center, {det.box.center_x(), det.box.center_y()});
    }
  }
  return out;
}

AssignmentResult associate(DistanceMatrices& matrices, const TrackerConfig& config) {
  Matrix& cost = matrices.feature;
  const Matrix& gate = matrices.spatial;
  const std::size_t m = cost.rows();
  const std::size_t n = cost.cols();
  const double threshold = config.feature_threshold;

  // Each pass of the greedy loop takes the current minimum and overwrites it
  // with T, so the visit order is simply the entries below T sorted by
  // (value, row, col). Entries at or above T are never visited.
  struct Entry {
    double value;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Entry> order;
  order.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cost(i, j) < threshold) order.push_back({cost(i, j), i, j});
  std::sort(order.begin(), order.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.value, x.i, x.j) < std::tie(y.value, y.i, y.j);
  });

  AssignmentResult result;
  std::vector<bool> row_taken(m, false), col_taken(n, false);
  const std::size_t limit = std::min(m, n);
  for (const Entry& e : order) {
    if (result.matches.size() >= limit) break;
    cost(e.i, e.j) = threshold;
    if (row_taken[e.i] || col_taken[e.j] || gate(e.i, e.j) > config.spatial_threshold) continue;
    row_taken[e.i] = true;
    col_taken[e.j] = true;
    result.matches.emplace_back(e.i, e.j);
  }

  for (std::size_t i = 0; i < m; ++i)
    if (!row_taken[i]) result.unmatched_registered.push_back(i);
  for (std::size_t j = 0; j < n; ++j)
    if (!col_taken[j]) result.unmatched_detections.push_back(j);
  return result;
}

Tracker::Tracker(TrackerConfig config, RegionLayout layout)
    : config_(config), layout_(layout) {
  if (!config_.valid()) throw InvalidInput("tracker config needs T > 0, D > 0, E >= 0");
  if (!layout_.valid()) throw InvalidInput("region layout lines are out of order");
}

TrackedObject* Tracker::find(TrackId id) {
  auto it = std::find_if(objects_.begin(), objects_.end(),
                         [id](const TrackedObject& o) { return o.id == id; });
  return it == objects_.end() ? nullptr : &*it;
}

StepReport Tracker::step(std::span<const DetectionRecord> detections, std::int64_t frame_id) {
  StepReport report;
  DistanceMatrices matrices = build_matrices(objects_, detections, config_);
  AssignmentResult assignment = associate(matrices, config_);

  for (auto [i, j] : assignment.matches) {
    TrackedObject& obj = objects_[i];
    const DetectionRecord& det = detections[j];
    obj.embedding = det.embedding;
    obj.box = det.box;
    obj.center = {det.box.center_x(), det.box.center_y()};
    obj.e_count = 0;
    obj.last_seen_frame = frame_id;
    report.matched.push_back(obj.id);
  }
  for (std::size_t i : assignment.unmatched_registered) ++objects_[i].e_count;

  for (std::size_t j : assignment.unmatched_detections) {
    const DetectionRecord& det = detections[j];
    TrackedObject obj;
    obj.id = next_id_++;
    obj.embedding = det.embedding;
    obj.box = det.box;
    obj.center = {det.box.center_x(), det.box.center_y()};
    obj.region_history.push_back(classify_region(obj.center.y, layout_));
    obj.last_seen_frame = frame_id;
    report.created.push_back(obj.id);
    objects_.push_back(std::move(obj));
  }

  std::erase_if(objects_, [&](const TrackedObject& o) {
    if (o.e_count <= config_.miss_limit) return false;
    report.evicted.push_back(o.id);
    return true;
  });
  return report;
}

}  // namespace headcount
