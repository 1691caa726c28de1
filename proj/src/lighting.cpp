#include "headcount/lighting.hpp"

#include <algorithm>
#include <string>

#include "headcount/errors.hpp"

namespace headcount {

std::string_view to_string(LightingMode m) { return m == LightingMode::Night ? "night" : "day"; }

std::optional<LightingMode> parse_lighting_mode(std::string_view s) {
  if (s == "day") return LightingMode::Day;
  if (s == "night") return LightingMode::Night;
  return std::nullopt;
}

LightingMode classify_lighting(std::span<const PixelSample> samples, int channel_tolerance,
                               double agreement_fraction) {
  if (samples.empty()) throw InvalidInput("classify_lighting needs at least one sample");
  if (channel_tolerance < 0) throw InvalidInput("channel_tolerance must be >= 0");
  if (!(agreement_fraction > 0.0 && agreement_fraction <= 1.0))
    throw InvalidInput("agreement_fraction must lie in (0, 1]");

  std::size_t gray = 0;
  for (const auto& p : samples) {
    int spread = std::max({p.r, p.g, p.b}) - std::min({p.r, p.g, p.b});
    if (spread <= channel_tolerance) ++gray;
  }
  // 0.99 * 100 is not exactly 99 in binary.
  const double needed = agreement_fraction * static_cast<double>(samples.size());
  const double eps = 1e-9 * static_cast<double>(samples.size());
  return static_cast<double>(gray) + eps >= needed ? LightingMode::Night : LightingMode::Day;
}

std::vector<PixelSample> sample_grid(std::span<const std::uint8_t> rgb, int width, int height,
                                     int grid) {
  if (width <= 0 || height <= 0 || grid <= 0) throw InvalidInput("sample_grid needs positive sizes");
  if (rgb.size() != static_cast<std::size_t>(width) * height * 3)
    throw InvalidInput("rgb buffer size does not match width * height * 3");

  std::vector<PixelSample> out;
  out.reserve(static_cast<std::size_t>(grid) * grid);
  for (int gy = 0; gy < grid; ++gy) {
    int y = std::min(height - 1, static_cast<int>((gy + 0.5) * height / grid));
    for (int gx = 0; gx < grid; ++gx) {
      int x = std::min(width - 1, static_cast<int>((gx + 0.5) * width / grid));
      std::size_t at = (static_cast<std::size_t>(y) * width + x) * 3;
      out.push_back({rgb[at], rgb[at + 1], rgb[at + 2]});
    }
  }
  return out;
}

}  // namespace headcount
