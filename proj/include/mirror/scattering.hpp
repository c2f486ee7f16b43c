#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mirror/geometry.hpp"
#include "mirror/polynomial.hpp"

namespace mirror {

// Transverse crossing of two walls, interior to both supports.
struct IntersectionEvent {
  Point point;
  std::pair<std::size_t, std::size_t> wall_ids;
  int dets = 0;  // det(vwall_i, vwall_j)
};

std::vector<IntersectionEvent> find_intersections(const WallStructure& ws);

struct ConsistencyReport {
  Point point;
  ScatteringPolynomial x_after;  // image of x after one counterclockwise loop
  ScatteringPolynomial y_after;
  std::size_t spokes = 0;        // wall and fan half-lines leaving the point
  bool consistent = false;
};

// Transports x and y once around a small loop about pt; consistent iff both come back unchanged
// in every term of l1-norm at most bound.
ConsistencyReport check_consistency_at_point(const WallStructure& ws, const Point& pt, int bound);

// Every point where a wall meets another wall, ends, or crosses a fan ray (the origin excluded),
// in lexicographic order.
std::vector<Point> audit_points(const WallStructure& ws);

// Consistency of every audit point; the report order follows audit_points.
std::vector<ConsistencyReport> audit_consistency(const WallStructure& ws, int bound);
// Single-threaded reference for audit_consistency.
std::vector<ConsistencyReport> audit_consistency_serial(const WallStructure& ws, int bound);

// Throws unless every audit point is a generic local picture: one wall line through a fan ray,
// or at most two wall lines crossing plus the single wall they emit.
void validate_generic(const WallStructure& ws);

// Extends incoming walls to lines, splits walls where they cross fan rays (transporting their
// functions through the kinks), and inserts 1 + t^{g_i+g_j} z^{-(v_i+v_j)} at every unimodular
// crossing until no crossing is left without its emitted wall.
WallStructure complete_to_consistency(const WallStructure& ws, int bound);

// Walls emitted at crossings are capped at this count before completion gives up.
inline constexpr std::size_t kMaxWalls = 4096;

}  // namespace mirror
