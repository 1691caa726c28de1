#include "headcount/engine.hpp"

#include <chrono>

#include "headcount/errors.hpp"

namespace headcount {

Engine::Engine(EngineConfig config)
    : config_((validate(config), config)), tracker_(config_.tracker, config_.layout) {}

FrameOutcome Engine::process(const FrameRecord& frame, std::span<const PixelSample> pixels) {
  FrameOutcome out;
  out.frame_id = frame.frame_id;

  if (!pixels.empty())
    lighting_ = classify_lighting(pixels, config_.lighting);
  else if (frame.lighting)
    lighting_ = *frame.lighting;
  out.lighting = lighting_;

  const std::vector<DetectionRecord> heads = filter_heads(frame, config_.min_confidence);
  for (const auto& h : heads) {
    if (h.embedding.size() != config_.embedding_dim)
      throw DimensionError("frame_id " + std::to_string(frame.frame_id) + ": head embedding has " +
                           std::to_string(h.embedding.size()) + " components, configured " +
                           std::to_string(config_.embedding_dim));
  }
  out.heads = heads.size();
  out.step = tracker_.step(heads, frame.frame_id);

  // New tracks were seeded with their region inside step; only re-detected
  // tracks can move.
  for (TrackId id : out.step.matched) {
    TrackedObject* obj = tracker_.find(id);
    Region region = classify_region(obj->center.y, config_.layout);
    if (auto ev = update_history(*obj, region, frame.frame_id, frame.timestamp_ms)) {
      ledger_.tally(*ev);
      out.events.push_back(*ev);
    }
  }
  return out;
}

RunResult run(std::span<const FrameRecord> frames, const EngineConfig& config) {
  Engine engine(config);
  LatencyRecorder recorder;
  RunResult result;
  for (const auto& frame : frames) {
    auto t0 = std::chrono::steady_clock::now();
    FrameOutcome o = engine.process(frame);
    auto t1 = std::chrono::steady_clock::now();
    recorder.record(o.heads, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    ++result.frames;
  }
  result.ledger = engine.ledger();
  result.timing = recorder.report();
  return result;
}

RunResult run(std::istream& in, const EngineConfig& config) {
  validate(config);
  StreamParser parser(in, config.embedding_dim);
  Engine engine(config);
  LatencyRecorder recorder;
  RunResult result;
  while (auto frame = parser.next()) {
    auto t0 = std::chrono::steady_clock::now();
    FrameOutcome o = engine.process(*frame);
    auto t1 = std::chrono::steady_clock::now();
    recorder.record(o.heads, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    ++result.frames;
  }
  result.ledger = engine.ledger();
  result.timing = recorder.report();
  return result;
}

}  // namespace headcount
