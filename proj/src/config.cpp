#include "headcount/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "headcount/errors.hpp"

namespace headcount {

using nlohmann::json;

void validate(const EngineConfig& c) {
  if (!c.tracker.valid())
    throw ConfigError("tracker: feature_threshold and spatial_threshold must be > 0, miss_limit >= 0");
  if (!c.layout.valid())
    throw ConfigError(c.layout.orientation == Orientation::OutsideTop
                          ? "layout: need 0 < line_ab < line_bc < 1 for outside_top"
                          : "layout: need 0 < line_bc < line_ab < 1 for outside_bottom");
  if (!(c.min_confidence >= 0.0 && c.min_confidence <= 1.0))
    throw ConfigError("min_confidence must lie in [0, 1]");
  if (c.lighting.channel_tolerance < 0) throw ConfigError("lighting.channel_tolerance must be >= 0");
  if (!(c.lighting.agreement_fraction > 0.0 && c.lighting.agreement_fraction <= 1.0))
    throw ConfigError("lighting.agreement_fraction must lie in (0, 1]");
  if (c.lighting.sample_grid <= 0) throw ConfigError("lighting.sample_grid must be > 0");
  if (c.embedding_dim == 0) throw ConfigError("embedding_dim must be > 0");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + key + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + where + key + "'");
  }
}

}  // namespace

EngineConfig config_from_json(const json& j) {
  EngineConfig c;
  reject_unknown(j, {"tracker", "layout", "min_confidence", "lighting", "embedding_dim"}, "");

  if (auto t = j.find("tracker"); t != j.end()) {
    reject_unknown(*t, {"feature_threshold", "spatial_threshold", "miss_limit", "feature_metric"},
                   "tracker.");
    read(*t, "feature_threshold", c.tracker.feature_threshold, "tracker.");
    read(*t, "spatial_threshold", c.tracker.spatial_threshold, "tracker.");
    read(*t, "miss_limit", c.tracker.miss_limit, "tracker.");
    std::string metric(to_string(c.tracker.feature_metric));
    read(*t, "feature_metric", metric, "tracker.");
    auto m = parse_feature_metric(metric);
    if (!m) throw ConfigError("tracker.feature_metric must be \"cosine\" or \"euclidean\"");
    c.tracker.feature_metric = *m;
  }
  if (auto l = j.find("layout"); l != j.end()) {
    reject_unknown(*l, {"line_ab", "line_bc", "orientation"}, "layout.");
    read(*l, "line_ab", c.layout.line_ab, "layout.");
    read(*l, "line_bc", c.layout.line_bc, "layout.");
    std::string orientation(to_string(c.layout.orientation));
    read(*l, "orientation", orientation, "layout.");
    auto o = parse_orientation(orientation);
    if (!o) throw ConfigError("layout.orientation must be \"outside_top\" or \"outside_bottom\"");
    c.layout.orientation = *o;
  }
  read(j, "min_confidence", c.min_confidence, "");
  if (auto l = j.find("lighting"); l != j.end()) {
    reject_unknown(*l, {"channel_tolerance", "agreement_fraction", "sample_grid"}, "lighting.");
    read(*l, "channel_tolerance", c.lighting.channel_tolerance, "lighting.");
    read(*l, "agreement_fraction", c.lighting.agreement_fraction, "lighting.");
    read(*l, "sample_grid", c.lighting.sample_grid, "lighting.");
  }
  if (auto d = j.find("embedding_dim"); d != j.end()) {
    if (!d->is_number_integer() || d->get<std::int64_t>() <= 0)
      throw ConfigError("embedding_dim must be a positive integer");
    c.embedding_dim = d->get<std::size_t>();
  }
  validate(c);
  return c;
}

json config_to_json(const EngineConfig& c) {
  return {
      {"tracker",
       {{"feature_threshold", c.tracker.feature_threshold},
        {"spatial_threshold", c.tracker.spatial_threshold},
        {"miss_limit", c.tracker.miss_limit},
        {"feature_metric", to_string(c.tracker.feature_metric)}}},
      {"layout",
       {{"line_ab", c.layout.line_ab},
        {"line_bc", c.layout.line_bc},
        {"orientation", to_string(c.layout.orientation)}}},
      {"min_confidence", c.min_confidence},
      {"lighting",
       {{"channel_tolerance", c.lighting.channel_tolerance},
        {"agreement_fraction", c.lighting.agreement_fraction},
        {"sample_grid", c.lighting.sample_grid}}},
      {"embedding_dim", c.embedding_dim},
  };
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file " + path.string() + " is not valid JSON");
  return config_from_json(j);
}

}  // namespace headcount
