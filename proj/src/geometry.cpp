#include "mirror/geometry.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "mirror/error.hpp"

namespace mirror {

namespace {

bool in_range(const Ray& r, const mpq_class& s) { return s >= 0 && (!r.length || s <= *r.length); }
bool in_interior(const Ray& r, const mpq_class& s) { return s > 0 && (!r.length || s < *r.length); }

// Parameter interval along a's line; empty bounds are infinite.
struct Interval {
  std::optional<mpq_class> lo, hi;
};

Interval interval_on(const Ray& a, const Ray& b) {
  const mpq_class s0 = *param_on_line(a, b.base);
  std::optional<mpq_class> far;
  if (b.length) far = dot(a.dir, b.dir) > 0 ? mpq_class(s0 + *b.length) : mpq_class(s0 - *b.length);
  if (dot(a.dir, b.dir) > 0) return {s0, far};
  return {far, s0};
}

}  // namespace

bool collinear_overlap(const Ray& a, const Ray& b) {
  if (det(a.dir, b.dir) != 0 || !param_on_line(a, b.base)) return false;
  const Interval ia{mpq_class(0), a.length};
  const Interval ib = interval_on(a, b);
  std::optional<mpq_class> lo = ia.lo;
  if (ib.lo && (!lo || *ib.lo > *lo)) lo = ib.lo;
  std::optional<mpq_class> hi = ia.hi;
  if (ib.hi && (!hi || *ib.hi < *hi)) hi = ib.hi;
  return !lo || !hi || *lo < *hi;
}

std::optional<std::pair<mpq_class, mpq_class>> intersect_lines(const Point& p, LatticeVector d1,
                                                               const Point& q, LatticeVector d2) {
  const int D = det(d1, d2);
  if (D == 0) return std::nullopt;
  const Point w = q - p;
  mpq_class s = det(w, d2) / mpq_class(D);
  mpq_class r = -det(d1, w) / mpq_class(D);
  s.canonicalize();
  r.canonicalize();
  return std::make_pair(s, r);
}

std::optional<mpq_class> param_on_line(const Ray& r, const Point& pt) {
  const Point w = pt - r.base;
  if (det(r.dir, w) != 0) return std::nullopt;
  mpq_class s = (w.x * r.dir.a + w.y * r.dir.b) / mpq_class(dot(r.dir, r.dir));
  s.canonicalize();
  return s;
}

bool on_fan_ray(const FanRay& fr, const Point& pt) {
  if (pt.is_origin()) return false;
  auto s = param_on_line(Ray{Point{}, fr.dir, std::nullopt}, pt);
  return s && *s > 0;
}

void ToricModel::validate() const {
  if (classes.size() > kClassRank)
    throw MirrorError(ErrorKind::invalid_input, "at most 6 curve classes are supported");
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (class_index(classes[i]) != i)
      throw MirrorError(ErrorKind::invalid_input,
                        "class basis must be an initial segment of H, E1, ..., E5");
  WallStructure{fan, {}}.validate();
  if (fan.size() < 3)
    throw MirrorError(ErrorKind::invalid_input, "a complete fan needs at least three rays");
  std::vector<LatticeVector> dirs;
  for (const auto& fr : fan) dirs.push_back(fr.dir);
  std::sort(dirs.begin(), dirs.end(), angle_less);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (det(dirs[i], dirs[(i + 1) % dirs.size()]) <= 0)
      throw MirrorError(ErrorKind::invalid_input,
                        "fan rays do not cut the plane into strictly convex cones");
  for (const auto& fr : fan)
    for (std::size_t i = classes.size(); i < kClassRank; ++i)
      if (fr.kink.c[i] != 0)
        throw MirrorError(ErrorKind::invalid_input, "kink uses a class outside the basis");
  std::set<std::size_t> seen;
  for (const auto& b : blowups) {
    if (b.exceptional == 0 || b.exceptional >= classes.size())
      throw MirrorError(ErrorKind::invalid_input, "blowup class must be an exceptional class");
    if (!seen.insert(b.exceptional).second)
      throw MirrorError(ErrorKind::invalid_input, "exceptional classes must be distinct");
    if (std::none_of(fan.begin(), fan.end(), [&](const FanRay& fr) { return fr.dir == b.dir; }))
      throw MirrorError(ErrorKind::invalid_input,
                        "blowup on direction " + to_string(b.dir) + " which is not a fan ray");
  }
}

void WallStructure::validate() const {
  std::set<LatticeVector> dirs;
  for (const auto& fr : fan) {
    if (!fr.dir.is_primitive())
      throw MirrorError(ErrorKind::invalid_input, "fan direction " + to_string(fr.dir) +
                                                      " is not primitive");
    if (!dirs.insert(fr.dir).second)
      throw MirrorError(ErrorKind::invalid_input, "repeated fan direction " + to_string(fr.dir));
  }
  for (const auto& w : walls) {
    if (!w.support.dir.is_primitive() || !w.vwall.is_primitive())
      throw MirrorError(ErrorKind::invalid_input, "wall directions must be primitive");
    if (w.vwall != w.support.dir && w.vwall != -w.support.dir)
      throw MirrorError(ErrorKind::invalid_input, "wall vector is not parallel to its support");
    if (w.support.length && *w.support.length <= 0)
      throw MirrorError(ErrorKind::invalid_input, "bounded wall with non-positive length");
    if (w.func.constant_term() != 1 || !w.func.is_classical())
      throw MirrorError(ErrorKind::invalid_input, "wall function must have constant term 1");
    for (const auto& [k, c] : w.func.terms()) {
      if (k.z.is_zero()) continue;
      // z-exponent must be -j*vwall for some j >= 1
      if (det(k.z, w.vwall) != 0 || dot(k.z, w.vwall) >= 0)
        throw MirrorError(ErrorKind::invalid_input,
                          "wall function term is not a negative multiple of the wall vector");
    }
  }
}

LatticeVector primitive_normal(LatticeVector dir, LatticeVector travel) {
  if (!dir.is_primitive())
    throw MirrorError(ErrorKind::invalid_input, "direction " + to_string(dir) + " is not primitive");
  LatticeVector n = rot90(dir);
  const int s = dot(n, travel);
  if (s == 0)
    throw MirrorError(ErrorKind::tangential_crossing,
                      "travel direction " + to_string(travel) + " is parallel to " + to_string(dir));
  return s < 0 ? n : -n;
}

ScatteringPolynomial cross_wall(const ScatteringPolynomial& p, const Wall& w, LatticeVector travel,
                                int bound, bool* truncated) {
  if (!p.is_classical())
    throw MirrorError(ErrorKind::mode_mismatch, "wall crossing acts on classical polynomials");
  const LatticeVector n = primitive_normal(w.support.dir, travel);
  std::map<int, ScatteringPolynomial> powers;
  bool any_truncated = false;
  ScatteringPolynomial out;
  for (const auto& [k, c] : p.terms()) {
    const int e = dot(n, k.z);
    auto it = powers.find(e);
    if (it == powers.end()) {
      bool t = false;
      it = powers.emplace(e, poly_pow_truncated(w.func, e, bound, &t)).first;
      any_truncated = any_truncated || t;
    }
    out += poly_mul(ScatteringPolynomial::term(c, k.t, k.z), it->second, Product::classical);
  }
  if (truncated) *truncated = any_truncated;
  return out;
}

ScatteringPolynomial cross_kink(const ScatteringPolynomial& p, const FanRay& fr,
                                LatticeVector travel) {
  const LatticeVector n = primitive_normal(fr.dir, travel);
  ScatteringPolynomial out;
  for (const auto& [k, c] : p.terms()) {
    MonomialKey moved = k;
    moved.t += fr.kink * dot(n, k.z);
    out.add(moved, c);
  }
  return out;
}

ScatteringPolynomial wall_function(const CurveClass& gamma, LatticeVector v) {
  return ScatteringPolynomial::one() + ScatteringPolynomial::term(1, gamma, -v);
}

WallStructure build_initial_walls(const ToricModel& tm) {
  tm.validate();
  WallStructure ws{tm.fan, {}};
  for (const auto& b : tm.blowups) {
    // the wall lies on the fan ray and points toward the origin
    const LatticeVector v = -b.dir;
    ws.walls.push_back(Wall{Ray{Point{}, b.dir, std::nullopt},
                            wall_function(-CurveClass::E(b.exceptional), v), v});
  }
  return ws;
}

mpq_class default_delta() { return mpq_class(1, 7); }

Offsets default_offsets(const WallStructure& ws) {
  Offsets out;
  std::map<std::pair<std::pair<mpq_class, mpq_class>, LatticeVector>, int> seen;
  for (std::size_t i = 0; i < ws.walls.size(); ++i) {
    const Ray& r = ws.walls[i].support;
    int& k = seen[{{r.base.x, r.base.y}, r.dir}];
    if (k > 0) out[i] = scaled(rot90(r.dir), default_delta() * k);
    ++k;
  }
  return out;
}

void validate_transverse(const WallStructure& ws) {
  std::map<Point, std::set<std::size_t>> points;
  const auto& walls = ws.walls;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    for (std::size_t j = i + 1; j < walls.size(); ++j) {
      const Ray& a = walls[i].support;
      const Ray& b = walls[j].support;
      auto hit = intersect_lines(a.base, a.dir, b.base, b.dir);
      if (!hit) {
        if (collinear_overlap(a, b))
          throw MirrorError(ErrorKind::degenerate_structure,
                            "walls " + std::to_string(i) + " and " + std::to_string(j) +
                                " are coincident near " + to_string(b.base));
        continue;
      }
      if (in_range(a, hit->first) && in_range(b, hit->second)) {
        auto& s = points[a.at(hit->first)];
        s.insert(i);
        s.insert(j);
      }
    }
  }
  for (const auto& [pt, ids] : points) {
    if (ids.size() > 2)
      throw MirrorError(ErrorKind::triple_intersection,
                        std::to_string(ids.size()) + " walls meet at " + to_string(pt));
    if (pt.is_origin() ||
        std::any_of(ws.fan.begin(), ws.fan.end(), [&](const FanRay& f) { return on_fan_ray(f, pt); }))
      throw MirrorError(ErrorKind::degenerate_structure,
                        "wall intersection " + to_string(pt) + " lies on the fan");
  }
}

WallStructure perturb_walls(const WallStructure& ws, const Offsets& offsets) {
  WallStructure out = ws;
  for (const auto& [idx, off] : offsets) {
    if (idx >= out.walls.size())
      throw MirrorError(ErrorKind::invalid_input, "offset for missing wall " + std::to_string(idx));
    out.walls[idx].support.base = out.walls[idx].support.base + off;
  }
  validate_transverse(out);
  return out;
}

std::vector<CrossingEvent> path_crossings(const WallStructure& ws, LatticeVector dir,
                                          const Point& endpoint) {
  if (dir.is_zero()) throw MirrorError(ErrorKind::invalid_input, "path direction is zero");
  auto degenerate = [&](const std::string& why) {
    return MirrorError(ErrorKind::degenerate_endpoint,
                       "path toward " + to_string(endpoint) + " from direction " + to_string(dir) +
                           " is degenerate: " + why + "; move the endpoint");
  };
  if (endpoint.is_origin()) throw degenerate("endpoint is the fan vertex");
  const LatticeVector travel = -dir;
  std::vector<CrossingEvent> events;

  for (std::size_t i = 0; i < ws.fan.size(); ++i) {
    const FanRay& fr = ws.fan[i];
    if (on_fan_ray(fr, endpoint)) throw degenerate("endpoint lies on a fan ray");
    const Ray support{Point{}, fr.dir, std::nullopt};
    auto hit = intersect_lines(endpoint, dir, support.base, support.dir);
    if (!hit) {
      if (collinear_overlap(Ray{endpoint, dir, std::nullopt}, support))
        throw degenerate("path runs along a fan ray");
      continue;
    }
    if (hit->first <= 0 || hit->second < 0) continue;
    if (hit->second == 0) throw degenerate("path passes through the fan vertex");
    events.push_back({CrossingEvent::Kind::kink, i, travel, support.at(hit->second), hit->first});
  }
  for (std::size_t i = 0; i < ws.walls.size(); ++i) {
    const Ray& support = ws.walls[i].support;
    if (auto s = param_on_line(support, endpoint); s && in_range(support, *s))
      throw degenerate("endpoint lies on wall " + std::to_string(i));
    auto hit = intersect_lines(endpoint, dir, support.base, support.dir);
    if (!hit) {
      if (collinear_overlap(Ray{endpoint, dir, std::nullopt}, support))
        throw degenerate("path runs along a wall");
      continue;
    }
    if (hit->first <= 0 || !in_range(support, hit->second)) continue;
    if (!in_interior(support, hit->second)) throw degenerate("path passes through a wall endpoint");
    events.push_back({CrossingEvent::Kind::wall, i, travel, support.at(hit->second), hit->first});
  }
  std::sort(events.begin(), events.end(), [](const CrossingEvent& a, const CrossingEvent& b) {
    if (a.param != b.param) return a.param > b.param;
    return std::tie(a.kind, a.index) < std::tie(b.kind, b.index);
  });
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].param == events[i - 1].param)
      throw degenerate("path passes through the crossing point " + to_string(events[i].point));
  return events;
}

}  // namespace mirror
