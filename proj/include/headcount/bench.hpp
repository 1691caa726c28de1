#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "headcount/config.hpp"

namespace headcount {

struct LatencyStats {
  std::size_t samples = 0;
  double p50_us = 0.0;
  double p95_us = 0.0;
  double p99_us = 0.0;
  double max_fps = 0.0;  // 1e6 / p95
};

// Per-frame latency grouped by how many heads the frame carried.
struct BenchReport {
  std::map<std::size_t, LatencyStats> groups;
};

inline constexpr std::size_t kWarmupFrames = 50;

// Collects per-frame durations and folds them into a BenchReport.
class LatencyRecorder {
 public:
  explicit LatencyRecorder(std::size_t warmup = kWarmupFrames) : warmup_(warmup) {}

  void record(std::size_t heads, std::int64_t nanoseconds);
  BenchReport report() const;

 private:
  std::size_t warmup_;
  std::size_t seen_ = 0;
  std::map<std::size_t, std::vector<std::int64_t>> samples_;
};

// Nearest-rank percentile over an unsorted sample, q in (0, 100].
double percentile(std::vector<std::int64_t> values, double q);

nlohmann::ordered_json bench_to_json(const BenchReport& report);

// Replays pre-generated scenario streams through fresh engines `repetitions`
// times, timing only Engine::process.
BenchReport bench(const std::vector<std::string>& scenarios, int repetitions,
                  const EngineConfig& config);

// Frames with exactly `people` heads and as many live tracks, replayed
// `frames` times; isolates per-track cost.
BenchReport bench_track_counts(std::size_t max_people, std::size_t frames,
                               const EngineConfig& config);

}  // namespace headcount
