#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "headcount/region.hpp"
#include "headcount/tracker.hpp"

namespace headcount {

enum class CrossingKind { Entry, Exit };

std::string_view to_string(CrossingKind k);
std::optional<CrossingKind> parse_crossing_kind(std::string_view s);

struct CrossingEvent {
  CrossingKind kind = CrossingKind::Entry;
  TrackId track_id = 0;
  std::int64_t frame_id = 0;
  std::int64_t timestamp_ms = 0;

  bool operator==(const CrossingEvent&) const = default;
};

// Appends `region` to a deduplicated region history and reports the crossing
// it completes, if any. An A that is later followed by C is an Entry; C then A
// is an Exit. After a crossing the history restarts from the terminal region.
// Returning to an anchor region without crossing also restarts from it, so the
// history never holds more than two entries.
std::optional<CrossingKind> update_history(std::vector<Region>& history, Region region);

// Same, stamped with the track and frame it happened on.
std::optional<CrossingEvent> update_history(TrackedObject& track, Region region,
                                            std::int64_t frame_id, std::int64_t timestamp_ms);

struct LedgerSnapshot {
  std::int64_t ins = 0;
  std::int64_t outs = 0;
  std::int64_t occupancy = 0;
};

class CountLedger {
 public:
  CountLedger() = default;
  // Seeds tallies without events, e.g. when resuming a count.
  CountLedger(std::int64_t ins, std::int64_t outs) : ins_(ins), outs_(outs) {}

  void tally(const CrossingEvent& event);

  std::int64_t ins() const { return ins_; }
  std::int64_t outs() const { return outs_; }
  // May go negative when monitoring starts with people already inside.
  std::int64_t occupancy() const { return ins_ - outs_; }
  const std::vector<CrossingEvent>& events() const { return events_; }
  LedgerSnapshot snapshot() const { return {ins_, outs_, occupancy()}; }

 private:
  std::int64_t ins_ = 0;
  std::int64_t outs_ = 0;
  std::vector<CrossingEvent> events_;
};

CountLedger tally(CountLedger ledger, const CrossingEvent& event);

struct AccuracyReport {
  std::int64_t total_observations = 0;
  std::int64_t error = 0;
  double accuracy_percent = 0.0;  // rounded to 2 decimals
};

// (total - error) / total * 100. Throws InvalidInput when total <= 0 or error < 0.
AccuracyReport accuracy(std::int64_t total_observations, std::int64_t error);

std::string format_percent(double value);

std::string event_to_json(const CrossingEvent& e);
std::string snapshot_to_json(const LedgerSnapshot& s);

}  // namespace headcount
