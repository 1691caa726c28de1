#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "headcount/config.hpp"
#include "headcount/simulator.hpp"

namespace headcount {

struct CalibrationGrid {
  std::vector<double> feature_thresholds;
  std::vector<double> spatial_thresholds;
  std::vector<int> miss_limits;
};

// {"T": [...], "D": [...], "E": [...]}; all three must be non-empty.
CalibrationGrid grid_from_json(const nlohmann::json& j);

struct CalibrationRow {
  TrackerConfig tracker;
  double mean_accuracy = 0.0;
  std::size_t runs = 0;
};

struct CalibrationOptions {
  std::vector<std::string> scenarios;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  sim::NoiseSpec noise;  // applied on top of each catalog scenario
};

// Best first. Ties go to smaller E, then smaller T, then smaller D.
std::vector<CalibrationRow> calibrate(const CalibrationGrid& grid,
                                      const CalibrationOptions& options,
                                      const EngineConfig& base);

nlohmann::json calibration_to_json(const std::vector<CalibrationRow>& rows);

}  // namespace headcount
