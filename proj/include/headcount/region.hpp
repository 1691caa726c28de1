#pragma once

#include <optional>
#include <string_view>

namespace headcount {

// A: fully outside, B: critical band, C: fully inside.
enum class Region { A, B, C };

std::string_view to_string(Region r);

enum class Orientation { OutsideTop, OutsideBottom };

std::string_view to_string(Orientation o);
std::optional<Orientation> parse_orientation(std::string_view s);

// Two horizontal lines in normalized y. line_ab borders A and B, line_bc
// borders B and C. With OutsideTop line_ab sits above line_bc; with
// OutsideBottom the order flips.
struct RegionLayout {
  double line_ab = 0.4;
  double line_bc = 0.6;
  Orientation orientation = Orientation::OutsideTop;

  bool valid() const;
};

// Points on either line fall in B.
Region classify_region(double center_y, const RegionLayout& layout);

}  // namespace headcount
