#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "headcount/lighting.hpp"
#include "headcount/region.hpp"
#include "headcount/tracker.hpp"

namespace headcount {

struct EngineConfig {
  TrackerConfig tracker;
  RegionLayout layout;
  double min_confidence = 0.5;
  LightingConfig lighting;
  std::size_t embedding_dim = kDefaultEmbeddingDim;
};

// Throws ConfigError naming the first bad field.
void validate(const EngineConfig& config);

// Missing keys keep their defaults; unknown keys are rejected.
EngineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const EngineConfig& config);
EngineConfig load_config(const std::filesystem::path& path);

}  // namespace headcount
