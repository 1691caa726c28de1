#include "headcount/counter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "headcount/errors.hpp"

namespace headcount {

std::string_view to_string(CrossingKind k) { return k == CrossingKind::Entry ? "entry" : "exit"; }

std::optional<CrossingKind> parse_crossing_kind(std::string_view s) {
  if (s == "entry") return CrossingKind::Entry;
  if (s == "exit") return CrossingKind::Exit;
  return std::nullopt;
}

std::optional<CrossingKind> update_history(std::vector<Region>& history, Region region) {
  if (!history.empty() && history.back() == region) return std::nullopt;
  if (region == Region::B) {
    history.push_back(region);
    return std::nullopt;
  }

  // The only anchor that can precede an A or C here is the opposite one:
  // reaching the same anchor again already collapsed the history to it.
  const Region opposite = region == Region::C ? Region::A : Region::C;
  const bool crossed = std::find(history.begin(), history.end(), opposite) != history.end();
  history.assign(1, region);
  if (!crossed) return std::nullopt;
  return region == Region::C ? CrossingKind::Entry : CrossingKind::Exit;
}

std::optional<CrossingEvent> update_history(TrackedObject& track, Region region,
                                            std::int64_t frame_id, std::int64_t timestamp_ms) {
  auto kind = update_history(track.region_history, region);
  if (!kind) return std::nullopt;
  return CrossingEvent{*kind, track.id, frame_id, timestamp_ms};
}

void CountLedger::tally(const CrossingEvent& event) {
  if (event.kind == CrossingKind::Entry)
    ++ins_;
  else
    ++outs_;
  events_.push_back(event);
}

CountLedger tally(CountLedger ledger, const CrossingEvent& event) {
  ledger.tally(event);
  return ledger;
}

AccuracyReport accuracy(std::int64_t total_observations, std::int64_t error) {
  if (total_observations <= 0) throw InvalidInput("accuracy needs at least one observation");
  if (error < 0) throw InvalidInput("error count cannot be negative");
  double raw = static_cast<double>(total_observations - error) /
               static_cast<double>(total_observations) * 100.0;
  return {total_observations, error, std::round(raw * 100.0) / 100.0};
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string event_to_json(const CrossingEvent& e) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(e.kind);
  j["track_id"] = e.track_id;
  j["frame_id"] = e.frame_id;
  j["ts_ms"] = e.timestamp_ms;
  return j.dump();
}

std::string snapshot_to_json(const LedgerSnapshot& s) {
  nlohmann::ordered_json j;
  j["ins"] = s.ins;
  j["outs"] = s.outs;
  j["occupancy"] = s.occupancy;
  return j.dump();
}

}  // namespace headcount
