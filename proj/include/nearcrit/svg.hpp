#pragma once

#include <string>
#include <vector>

#include "nearcrit/explorer.hpp"

namespace nearcrit {

inline constexpr int kSvgMaxN = 2048;

struct SvgScene {
  const std::vector<std::uint8_t>* black = nullptr;  // 1 = black per site; required
  const InterfacePath* path = nullptr;               // drawn in red
  const InterfacePath* second_path = nullptr;        // drawn in blue (coupled pair)
  std::vector<Region> regions;                       // outlined
};

/// SVG 1.1 document: one hexagon polygon per site (class "hex"), the
/// interface as a polyline, regions outlined. Coordinates follow the unit
/// triangle embedding. Throws std::invalid_argument when N exceeds kSvgMaxN.
std::string render_svg(const TriangleDomain& domain, const SvgScene& scene);

}  // namespace nearcrit
