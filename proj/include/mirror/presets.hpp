#pragma once

#include <string>
#include <vector>

#include "mirror/geometry.hpp"

namespace mirror {

struct Preset {
  std::string name;
  ToricModel model;
  Offsets offsets;  // perturbation of the initial walls
  Point endpoint;   // theta functions are evaluated here
};

// Quartic del Pezzo surface: Bl_1 P^2 with four further blowups on its boundary.
Preset dp4_preset();
// The toric model of Bl_1 P^2 with no non-toric blowups.
Preset empty_preset();

Preset preset_by_name(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace mirror
