#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirror/lattice.hpp"
#include "mirror/polynomial.hpp"

namespace mirror {

// {base + s*dir : 0 <= s <= length}, unbounded when length is empty.
struct Ray {
  Point base;
  LatticeVector dir;
  std::optional<mpq_class> length;

  Point at(const mpq_class& s) const { return base + scaled(dir, s); }
  std::optional<Point> end() const {
    if (!length) return std::nullopt;
    return at(*length);
  }
  bool operator==(const Ray& o) const {
    return base == o.base && dir == o.dir && length == o.length;
  }
};

struct FanRay {
  LatticeVector dir;
  CurveClass kink;
  bool operator==(const FanRay&) const = default;
};

// A wall carries 1 + sum c_k t^beta_k z^{-k*vwall}; vwall is the direction of propagation and
// is parallel to the support (equal for outgoing pieces, opposite for incoming ones).
struct Wall {
  Ray support;
  ScatteringPolynomial func;
  LatticeVector vwall;
  bool operator==(const Wall&) const = default;
};

struct Blowup {
  LatticeVector dir;
  std::size_t exceptional = 1;  // index into the class basis
  bool operator==(const Blowup&) const = default;
};

struct ToricModel {
  std::vector<std::string> classes{"H", "E1", "E2", "E3", "E4", "E5"};
  std::vector<FanRay> fan;
  std::vector<Blowup> blowups;

  void validate() const;
  bool operator==(const ToricModel&) const = default;
};

struct WallStructure {
  std::vector<FanRay> fan;
  std::vector<Wall> walls;

  void validate() const;
  bool operator==(const WallStructure&) const = default;
};

// Primitive n with <n, dir> = 0 and <n, travel> < 0.
LatticeVector primitive_normal(LatticeVector dir, LatticeVector travel);

// z^v -> func^{<n,v>} z^v. Classical polynomials only.
ScatteringPolynomial cross_wall(const ScatteringPolynomial& p, const Wall& w, LatticeVector travel,
                                int bound, bool* truncated = nullptr);

// z^v -> t^{<n,v> kink} z^v.
ScatteringPolynomial cross_kink(const ScatteringPolynomial& p, const FanRay& fr,
                                LatticeVector travel);

// Single-factor wall function 1 + t^gamma z^{-v}.
ScatteringPolynomial wall_function(const CurveClass& gamma, LatticeVector v);

WallStructure build_initial_walls(const ToricModel& tm);

using Offsets = std::map<std::size_t, Point>;

// Default perturbation step.
mpq_class default_delta();
// The k-th wall (k = 0, 1, ...) on a common support is moved by k*delta along rot90(dir).
Offsets default_offsets(const WallStructure& ws);
WallStructure perturb_walls(const WallStructure& ws, const Offsets& offsets);

// Throws unless every pair of supports meets transversally in at most one point, no point is
// shared by three or more walls, and no intersection point sits on a fan ray.
void validate_transverse(const WallStructure& ws);

struct CrossingEvent {
  enum class Kind { wall, kink };
  Kind kind;
  std::size_t index;    // into walls or fan
  LatticeVector travel;
  Point point;
  mpq_class param;      // path parameter s of endpoint + s*dir
};

// Crossings of the path coming in from infinity along {endpoint + s*dir : s > 0}, ordered from
// infinity to the endpoint.
std::vector<CrossingEvent> path_crossings(const WallStructure& ws, LatticeVector dir,
                                          const Point& endpoint);

// --- plane helpers shared by the scattering and rendering code ---

// Solves p + s*d1 = q + r*d2 for non-parallel directions.
std::optional<std::pair<mpq_class, mpq_class>> intersect_lines(const Point& p, LatticeVector d1,
                                                               const Point& q, LatticeVector d2);
// Parameter of pt along the support line, if pt lies on it.
std::optional<mpq_class> param_on_line(const Ray& r, const Point& pt);
bool on_fan_ray(const FanRay& fr, const Point& pt);
// Collinear supports sharing a segment of positive length.
bool collinear_overlap(const Ray& a, const Ray& b);

}  // namespace mirror
