#include "mirror/lattice.hpp"

#include "mirror/error.hpp"

namespace mirror {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::mode_mismatch: return "mode_mismatch";
    case ErrorKind::tangential_crossing: return "tangential_crossing";
    case ErrorKind::degenerate_endpoint: return "degenerate_endpoint";
    case ErrorKind::degenerate_structure: return "degenerate_structure";
    case ErrorKind::triple_intersection: return "triple_intersection";
    case ErrorKind::non_unimodular: return "non_unimodular";
    case ErrorKind::non_termination: return "non_termination";
    case ErrorKind::not_expressible: return "not_expressible";
    case ErrorKind::truncated_input: return "truncated_input";
  }
  return "unknown";
}

namespace {

int half_plane(LatticeVector v) { return (v.b > 0 || (v.b == 0 && v.a > 0)) ? 0 : 1; }

}  // namespace

bool angle_less(LatticeVector v, LatticeVector w) {
  const int hv = half_plane(v);
  const int hw = half_plane(w);
  if (hv != hw) return hv < hw;
  return det(v, w) > 0;
}

const std::array<std::string_view, kClassRank>& class_names() {
  static const std::array<std::string_view, kClassRank> names{"H", "E1", "E2", "E3", "E4", "E5"};
  return names;
}

std::size_t class_index(std::string_view name) {
  const auto& names = class_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw MirrorError(ErrorKind::invalid_input, "unknown curve class name '" + std::string(name) + "'");
}

std::string to_string(LatticeVector v) {
  return "(" + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
}

std::string to_string(const Point& p) { return "(" + p.x.get_str() + "," + p.y.get_str() + ")"; }

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw MirrorError(ErrorKind::invalid_input, "cannot parse rational '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

}  // namespace mirror
