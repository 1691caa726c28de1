#include "headcount/region.hpp"

namespace headcount {

std::string_view to_string(Region r) {
  switch (r) {
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::C: return "C";
  }
  return "?";
}

std::string_view to_string(Orientation o) {
  return o == Orientation::OutsideTop ? "outside_top" : "outside_bottom";
}

std::optional<Orientation> parse_orientation(std::string_view s) {
  if (s == "outside_top") return Orientation::OutsideTop;
  if (s == "outside_bottom") return Orientation::OutsideBottom;
  return std::nullopt;
}

bool RegionLayout::valid() const {
  auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!open_unit(line_ab) || !open_unit(line_bc)) return false;
  return orientation == Orientation::OutsideTop ? line_ab < line_bc : line_bc < line_ab;
}

Region classify_region(double center_y, const RegionLayout& layout) {
  if (layout.orientation == Orientation::OutsideTop) {
    if (center_y < layout.line_ab) return Region::A;
    if (center_y > layout.line_bc) return Region::C;
    return Region::B;
  }
  if (center_y > layout.line_ab) return Region::A;
  if (center_y < layout.line_bc) return Region::C;
  return Region::B;
}

}  // namespace headcount
