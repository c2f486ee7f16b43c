#include "mirror/presets.hpp"

#include "mirror/error.hpp"

namespace mirror {

namespace {

// Fan of Bl_1 P^2, listed in theta order.
std::vector<FanRay> bl1_fan() {
  const CurveClass H = CurveClass::H();
  const CurveClass E1 = CurveClass::E(1);
  return {{{-1, -1}, E1}, {{-1, 0}, H - E1}, {{1, 1}, H}, {{0, -1}, H - E1}};
}

Point at(int x, int y, int den) { return {mpq_class(x, den), mpq_class(y, den)}; }

}  // namespace

Preset dp4_preset() {
  Preset p;
  p.name = "dp4";
  p.model.fan = bl1_fan();
  p.model.blowups = {{{-1, 0}, 2}, {{1, 1}, 3}, {{1, 1}, 4}, {{0, -1}, 5}};
  // The default rule would leave three walls through the origin.
  p.offsets = {{0, at(0, 3, 7)}, {1, at(-2, 2, 7)}, {2, at(-1, 1, 7)}, {3, at(-5, 0, 7)}};
  p.endpoint = at(-16, -5, 28);
  return p;
}

Preset empty_preset() {
  Preset p;
  p.name = "empty";
  p.model.fan = bl1_fan();
  p.endpoint = at(1, 3, 7);
  return p;
}

Preset preset_by_name(const std::string& name) {
  if (name == "dp4") return dp4_preset();
  if (name == "empty") return empty_preset();
  throw MirrorError(ErrorKind::invalid_input, "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() { return {"dp4", "empty"}; }

}  // namespace mirror
