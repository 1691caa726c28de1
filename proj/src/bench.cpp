#include "headcount/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "headcount/engine.hpp"
#include "headcount/errors.hpp"
#include "headcount/simulator.hpp"

namespace headcount {

namespace {

std::int64_t time_frame(Engine& engine, const FrameRecord& frame, std::size_t& heads) {
  auto t0 = std::chrono::steady_clock::now();
  FrameOutcome o = engine.process(frame);
  auto t1 = std::chrono::steady_clock::now();
  heads = o.heads;
  return std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
}

}  // namespace

double percentile(std::vector<std::int64_t> values, double q) {
  if (values.empty()) throw InvalidInput("percentile of an empty sample");
  if (!(q > 0.0 && q <= 100.0)) throw InvalidInput("percentile rank must lie in (0, 100]");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(values.size())));
  return static_cast<double>(values[std::max<std::size_t>(rank, 1) - 1]);
}

void LatencyRecorder::record(std::size_t heads, std::int64_t nanoseconds) {
  if (seen_++ < warmup_) return;
  samples_[heads].push_back(nanoseconds);
}

BenchReport LatencyRecorder::report() const {
  BenchReport r;
  for (const auto& [heads, ns] : samples_) {
    LatencyStats s;
    s.samples = ns.size();
    s.p50_us = percentile(ns, 50) / 1000.0;
    s.p95_us = percentile(ns, 95) / 1000.0;
    s.p99_us = percentile(ns, 99) / 1000.0;
    s.max_fps = 1e6 / std::max(s.p95_us, 1e-3);
    r.groups[heads] = s;
  }
  return r;
}

nlohmann::ordered_json bench_to_json(const BenchReport& report) {
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& [heads, s] : report.groups) {
    nlohmann::ordered_json g;
    g["tracks"] = heads;
    g["samples"] = s.samples;
    g["p50_us"] = s.p50_us;
    g["p95_us"] = s.p95_us;
    g["p99_us"] = s.p99_us;
    g["max_fps"] = s.max_fps;
    groups.push_back(std::move(g));
  }
  nlohmann::ordered_json out;
  out["groups"] = std::move(groups);
  return out;
}

BenchReport bench(const std::vector<std::string>& scenarios, int repetitions,
                  const EngineConfig& config) {
  validate(config);
  sim::CatalogOptions opts;
  opts.seed = 1;
  opts.embedding_dim = config.embedding_dim;
  opts.layout = config.layout;
  opts.miss_limit = config.tracker.miss_limit;

  std::vector<std::vector<FrameRecord>> streams;
  for (const auto& spec : sim::scenario_suite(scenarios, opts))
    streams.push_back(sim::generate(spec).frames);

  LatencyRecorder recorder;
  for (int rep = 0; rep < repetitions; ++rep) {
    for (const auto& frames : streams) {
      Engine engine(config);
      for (const auto& frame : frames) {
        std::size_t heads = 0;
        std::int64_t ns = time_frame(engine, frame, heads);
        recorder.record(heads, ns);
      }
    }
  }
  return recorder.report();
}

BenchReport bench_track_counts(std::size_t max_people, std::size_t frames,
                               const EngineConfig& config) {
  validate(config);
  BenchReport report;
  auto embeddings = sim::orthonormal_embeddings(std::max<std::size_t>(max_people, 1),
                                                config.embedding_dim, 7);
  for (std::size_t people = 0; people <= max_people; ++people) {
    FrameRecord frame;
    for (std::size_t k = 0; k < people; ++k) {
      double x = (static_cast<double>(k) + 1.0) / (static_cast<double>(max_people) + 1.0);
      frame.detections.push_back({ObjectClass::Head, 0.9, box_around(x, 0.5, sim::kHeadBoxSize,
                                                                     sim::kHeadBoxSize),
                                  embeddings[k]});
    }
    Engine engine(config);
    LatencyRecorder recorder;
    for (std::size_t f = 0; f < frames + kWarmupFrames; ++f) {
      frame.frame_id = static_cast<std::int64_t>(f);
      frame.timestamp_ms = static_cast<std::int64_t>(f) * 40;
      std::size_t heads = 0;
      std::int64_t ns = time_frame(engine, frame, heads);
      recorder.record(heads, ns);
    }
    for (const auto& [heads, stats] : recorder.report().groups) report.groups[heads] = stats;
  }
  return report;
}

}  // namespace headcount
