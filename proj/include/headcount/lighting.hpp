#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace headcount {

enum class LightingMode { Day, Night };

std::string_view to_string(LightingMode m);
std::optional<LightingMode> parse_lighting_mode(std::string_view s);

struct PixelSample {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

struct LightingConfig {
  int channel_tolerance = 2;
  double agreement_fraction = 0.99;
  int sample_grid = 10;  // samples a grid x grid lattice
};

// IR frames come out grayscale, so a frame is Night when enough sampled pixels
// have equal channels, within channel_tolerance of each other.
LightingMode classify_lighting(std::span<const PixelSample> samples, int channel_tolerance,
                               double agreement_fraction);

inline LightingMode classify_lighting(std::span<const PixelSample> samples,
                                      const LightingConfig& cfg) {
  return classify_lighting(samples, cfg.channel_tolerance, cfg.agreement_fraction);
}

// Picks grid x grid pixels at cell centers of an interleaved RGB8 image.
std::vector<PixelSample> sample_grid(std::span<const std::uint8_t> rgb, int width, int height,
                                     int grid);

}  // namespace headcount
