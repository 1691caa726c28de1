#include "headcount/calibrate.hpp"

#include <algorithm>
#include <span>
#include <tuple>

#include "headcount/engine.hpp"
#include "headcount/errors.hpp"

namespace headcount {

CalibrationGrid grid_from_json(const nlohmann::json& j) {
  CalibrationGrid g;
  try {
    g.feature_thresholds = j.at("T").get<std::vector<double>>();
    g.spatial_thresholds = j.at("D").get<std::vector<double>>();
    g.miss_limits = j.at("E").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("calibration grid needs numeric arrays T, D and E: ") + e.what());
  }
  if (g.feature_thresholds.empty() || g.spatial_thresholds.empty() || g.miss_limits.empty())
    throw ConfigError("calibration grid axes must be non-empty");
  return g;
}

std::vector<CalibrationRow> calibrate(const CalibrationGrid& grid,
                                      const CalibrationOptions& options,
                                      const EngineConfig& base) {
  if (grid.feature_thresholds.empty() || grid.spatial_thresholds.empty() || grid.miss_limits.empty())
    throw InvalidInput("calibration grid axes must be non-empty");
  if (options.scenarios.empty() || options.seeds.empty())
    throw InvalidInput("calibration needs scenarios and seeds");

  // Streams depend only on seed and layout, so build them once.
  struct Case {
    std::vector<FrameRecord> frames;
    sim::GroundTruth truth;
  };
  std::vector<Case> cases;
  for (std::uint64_t seed : options.seeds) {
    sim::CatalogOptions opts;
    opts.seed = seed;
    opts.embedding_dim = base.embedding_dim;
    opts.layout = base.layout;
    opts.miss_limit = base.tracker.miss_limit;
    for (auto spec : sim::scenario_suite(options.scenarios, opts)) {
      spec.noise = options.noise;
      auto g = sim::generate(spec);
      cases.push_back({std::move(g.frames), std::move(g.truth)});
    }
  }

  std::vector<CalibrationRow> rows;
  for (double t : grid.feature_thresholds) {
    for (double d : grid.spatial_thresholds) {
      for (int e : grid.miss_limits) {
        EngineConfig cfg = base;
        cfg.tracker.feature_threshold = t;
        cfg.tracker.spatial_threshold = d;
        cfg.tracker.miss_limit = e;
        validate(cfg);
        CalibrationRow row{cfg.tracker, 0.0, 0};
        double sum = 0.0;
        for (const auto& c : cases) {
          auto result = run(std::span<const FrameRecord>(c.frames), cfg);
          auto report = sim::evaluate(result.ledger, c.truth);
          if (!report) continue;
          sum += report->accuracy_percent;
          ++row.runs;
        }
        row.mean_accuracy = row.runs ? sum / static_cast<double>(row.runs) : 0.0;
        rows.push_back(row);
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const CalibrationRow& a, const CalibrationRow& b) {
    return std::make_tuple(-a.mean_accuracy, a.tracker.miss_limit, a.tracker.feature_threshold,
                           a.tracker.spatial_threshold) <
           std::make_tuple(-b.mean_accuracy, b.tracker.miss_limit, b.tracker.feature_threshold,
                           b.tracker.spatial_threshold);
  });
  return rows;
}

nlohmann::json calibration_to_json(const std::vector<CalibrationRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"T", r.tracker.feature_threshold},
                   {"D", r.tracker.spatial_threshold},
                   {"E", r.tracker.miss_limit},
                   {"mean_accuracy", r.mean_accuracy},
                   {"runs", r.runs}});
  }
  return out;
}

}  // namespace headcount
