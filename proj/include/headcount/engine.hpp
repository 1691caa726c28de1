#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "headcount/bench.hpp"
#include "headcount/config.hpp"
#include "headcount/counter.hpp"
#include "headcount/ingest.hpp"
#include "headcount/tracker.hpp"

namespace headcount {

struct FrameOutcome {
  std::int64_t frame_id = 0;
  LightingMode lighting = LightingMode::Day;
  std::size_t heads = 0;
  StepReport step;
  std::vector<CrossingEvent> events;
};

// One doorway: filter, track, then count, one frame at a time.
class Engine {
 public:
  explicit Engine(EngineConfig config);

  // Pixel samples, when given, decide the lighting mode; otherwise the
  // frame's own `lighting` field is used, falling back to the last mode seen.
  FrameOutcome process(const FrameRecord& frame, std::span<const PixelSample> pixels = {});

  const CountLedger& ledger() const { return ledger_; }
  const Tracker& tracker() const { return tracker_; }
  const EngineConfig& config() const { return config_; }
  LightingMode lighting() const { return lighting_; }

 private:
  EngineConfig config_;
  Tracker tracker_;
  CountLedger ledger_;
  LightingMode lighting_ = LightingMode::Day;
};

struct RunResult {
  CountLedger ledger;
  std::size_t frames = 0;
  BenchReport timing;
};

// Parses and processes a stream in order. Stream errors propagate as
// StreamError subclasses.
RunResult run(std::istream& in, const EngineConfig& config);
RunResult run(std::span<const FrameRecord> frames, const EngineConfig& config);

}  // namespace headcount
