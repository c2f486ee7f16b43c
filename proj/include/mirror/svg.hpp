#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mirror/geometry.hpp"

namespace mirror {

struct SvgAnnotations {
  std::string title;
  std::optional<Point> endpoint;           // marked "P"
  std::vector<LatticeVector> theta_paths;  // drawn from infinity to the endpoint
  bool labels = true;                      // wall functions next to each wall
};

// Fan rays dashed, walls solid, theta paths red. Same input, same bytes.
std::string render_svg(const WallStructure& ws, const SvgAnnotations& notes = {});

}  // namespace mirror
