#include "mirror/scattering.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <map>
#include <set>
#include <tuple>

#include "mirror/error.hpp"

namespace mirror {

namespace {

bool in_interior(const Ray& r, const mpq_class& s) { return s > 0 && (!r.length || s < *r.length); }

bool is_incoming(const Wall& w) { return w.support.dir == -w.vwall; }

struct SingleFactor {
  CurveClass gamma;
  LatticeVector v;
};

SingleFactor single_factor(const Wall& w) {
  const auto& terms = w.func.terms();
  if (terms.size() == 2 && w.func.constant_term() == 1) {
    for (const auto& [k, c] : terms) {
      if (k.z.is_zero()) continue;
      if (c == 1 && k.qhalf == 0 && k.z == -w.vwall) return {k.t, w.vwall};
    }
  }
  throw MirrorError(ErrorKind::invalid_input,
                    "wall function is not of the form 1 + t^g z^{-v} at " +
                        to_string(w.support.base));
}

// A wall line cut into pieces (at its base or at fan rays) is crossed at a cut point through the
// outgoing piece that starts there; the piece it continues carries the same direction.
bool continued_at(const std::vector<Wall>& walls, std::size_t i, const Point& pt) {
  const Wall& w = walls[i];
  if (w.support.dir != w.vwall) return false;
  for (std::size_t k = 0; k < walls.size(); ++k) {
    if (k == i || walls[k].vwall != w.vwall) continue;
    const Ray& r = walls[k].support;
    if (r.dir == -w.vwall ? r.base == pt : r.end() == pt) return true;
  }
  return false;
}

bool crosses_at(const std::vector<Wall>& walls, std::size_t i, const mpq_class& s, const Point& pt) {
  return in_interior(walls[i].support, s) || (s == 0 && continued_at(walls, i, pt));
}

std::optional<Point> interior_crossing(const std::vector<Wall>& walls, std::size_t i,
                                       std::size_t j) {
  const Ray& a = walls[i].support;
  const Ray& b = walls[j].support;
  auto hit = intersect_lines(a.base, a.dir, b.base, b.dir);
  if (!hit) return std::nullopt;
  const Point pt = a.at(hit->first);
  if (!crosses_at(walls, i, hit->first, pt) || !crosses_at(walls, j, hit->second, pt))
    return std::nullopt;
  return pt;
}

struct Spoke {
  LatticeVector dir;
  bool fan = false;
  std::size_t index = 0;
};

std::vector<Spoke> spokes_at(const WallStructure& ws, const Point& pt) {
  std::vector<Spoke> spokes;
  for (std::size_t i = 0; i < ws.walls.size(); ++i) {
    const Ray& r = ws.walls[i].support;
    auto s = param_on_line(r, pt);
    if (!s || *s < 0 || (r.length && *s > *r.length)) continue;
    if (*s == 0) {
      spokes.push_back({r.dir, false, i});
    } else if (r.length && *s == *r.length) {
      spokes.push_back({-r.dir, false, i});
    } else {
      spokes.push_back({r.dir, false, i});
      spokes.push_back({-r.dir, false, i});
    }
  }
  for (std::size_t i = 0; i < ws.fan.size(); ++i) {
    if (!on_fan_ray(ws.fan[i], pt)) continue;
    spokes.push_back({ws.fan[i].dir, true, i});
    spokes.push_back({-ws.fan[i].dir, true, i});
  }
  std::stable_sort(spokes.begin(), spokes.end(),
                   [](const Spoke& a, const Spoke& b) { return angle_less(a.dir, b.dir); });
  return spokes;
}

// Cuts the path of a wall at the fan rays it crosses, carrying its function through each kink.
class Tracer {
 public:
  explicit Tracer(const std::vector<FanRay>& fan) : fan_(fan) {}

  // Pieces of {start + s*v}: s > 0 for a ray, all s for a line. For a line, f0 is the function
  // far upstream; for a ray, the function at start.
  std::vector<Wall> trace(const Point& start, LatticeVector v, ScatteringPolynomial f0,
                          bool full_line) const {
    std::vector<std::pair<mpq_class, std::size_t>> cuts;
    for (std::size_t i = 0; i < fan_.size(); ++i) {
      const LatticeVector u = fan_[i].dir;
      auto hit = intersect_lines(start, v, Point{}, u);
      if (!hit) {
        if (collinear_overlap(Ray{Point{}, u, std::nullopt},
                              Ray{start, full_line ? -v : v, std::nullopt}) ||
            (full_line && collinear_overlap(Ray{Point{}, u, std::nullopt},
                                            Ray{start, v, std::nullopt})))
          throw MirrorError(ErrorKind::degenerate_structure,
                            "wall through " + to_string(start) + " runs along a fan ray; perturb it");
        continue;
      }
      const auto& [s, r] = *hit;
      if (r < 0 || (!full_line && s < 0)) continue;
      if (r == 0)
        throw MirrorError(ErrorKind::degenerate_structure,
                          "wall through " + to_string(start) + " passes through the fan vertex");
      if (!full_line && s == 0)
        throw MirrorError(ErrorKind::degenerate_structure,
                          "wall emitted on the fan ray at " + to_string(start));
      cuts.emplace_back(s, i);
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<Wall> pieces;
    ScatteringPolynomial f = std::move(f0);
    auto point_at = [&](const mpq_class& s) { return start + scaled(v, s); };
    std::optional<mpq_class> from;
    if (full_line) {
      if (cuts.empty()) {
        pieces.push_back(Wall{Ray{start, -v, std::nullopt}, f, v});
        from = mpq_class(0);
      } else {
        pieces.push_back(Wall{Ray{point_at(cuts.front().first), -v, std::nullopt}, f, v});
      }
    } else {
      from = mpq_class(0);
    }
    for (const auto& [s, i] : cuts) {
      if (from) pieces.push_back(Wall{Ray{point_at(*from), v, mpq_class(s - *from)}, f, v});
      f = cross_kink(f, fan_[i], v);
      from = s;
    }
    pieces.push_back(Wall{Ray{point_at(*from), v, std::nullopt}, f, v});
    return pieces;
  }

  // Function carried past pt by a wall moving along v, if pt sits on fan rays.
  ScatteringPolynomial through(const Point& pt, LatticeVector v, ScatteringPolynomial f) const {
    for (const auto& fr : fan_)
      if (on_fan_ray(fr, pt)) f = cross_kink(f, fr, v);
    return f;
  }

  bool crosses_fan(const Ray& r) const {
    for (const auto& fr : fan_) {
      auto hit = intersect_lines(r.base, r.dir, Point{}, fr.dir);
      if (hit && hit->second > 0 && in_interior(r, hit->first)) return true;
    }
    return false;
  }

 private:
  const std::vector<FanRay>& fan_;
};

bool has_wall_from(const std::vector<Wall>& walls, const Point& base, LatticeVector v) {
  return std::any_of(walls.begin(), walls.end(), [&](const Wall& w) {
    return w.vwall == v && w.support.dir == v && w.support.base == base;
  });
}

std::vector<Wall> normalize(const WallStructure& ws, const Tracer& tracer) {
  std::vector<Wall> out;
  const auto& in = ws.walls;
  for (const Wall& w : in) {
    const Ray& r = w.support;
    if (is_incoming(w)) {
      if (r.length)
        throw MirrorError(ErrorKind::invalid_input, "incoming wall pieces must be unbounded");
      if (r.base.is_origin())
        throw MirrorError(ErrorKind::degenerate_structure,
                          "wall ends at the fan vertex; perturb the structure first");
      if (tracer.crosses_fan(r)) {
        auto line = tracer.trace(r.base, w.vwall, w.func, true);
        out.insert(out.end(), line.begin(), line.end());
        continue;
      }
      out.push_back(w);
      if (!has_wall_from(in, r.base, w.vwall)) {
        auto rest = tracer.trace(r.base, w.vwall, tracer.through(r.base, w.vwall, w.func), false);
        out.insert(out.end(), rest.begin(), rest.end());
      }
      continue;
    }
    if (tracer.crosses_fan(r)) {
      auto rest = tracer.trace(r.base, w.vwall, w.func, false);
      out.insert(out.end(), rest.begin(), rest.end());
      continue;
    }
    out.push_back(w);
    if (auto e = r.end(); e && !has_wall_from(in, *e, w.vwall)) {
      auto rest = tracer.trace(*e, w.vwall, tracer.through(*e, w.vwall, w.func), false);
      out.insert(out.end(), rest.begin(), rest.end());
    }
  }
  // Several inputs may regrow the same continuation.
  std::vector<Wall> unique;
  for (auto& w : out)
    if (std::find(unique.begin(), unique.end(), w) == unique.end()) unique.push_back(std::move(w));
  return unique;
}

struct Pending {
  int degree;
  Point point;
  std::size_t i;
  std::size_t j;

  bool operator<(const Pending& o) const {
    if (degree != o.degree) return degree < o.degree;
    if (!(point == o.point)) return point < o.point;
    return std::tie(i, j) < std::tie(o.i, o.j);
  }
};

}  // namespace

std::vector<IntersectionEvent> find_intersections(const WallStructure& ws) {
  std::vector<IntersectionEvent> out;
  for (std::size_t i = 0; i < ws.walls.size(); ++i)
    for (std::size_t j = i + 1; j < ws.walls.size(); ++j)
      if (auto q = interior_crossing(ws.walls, i, j))
        out.push_back({*q, {i, j}, det(ws.walls[i].vwall, ws.walls[j].vwall)});
  std::stable_sort(out.begin(), out.end(), [](const IntersectionEvent& a, const IntersectionEvent& b) {
    return a.point < b.point;
  });
  return out;
}

ConsistencyReport check_consistency_at_point(const WallStructure& ws, const Point& pt, int bound) {
  if (pt.is_origin())
    throw MirrorError(ErrorKind::degenerate_structure, "the fan vertex has no consistency loop");
  const auto spokes = spokes_at(ws, pt);
  const auto x = ScatteringPolynomial::term(1, {}, {1, 0});
  const auto y = ScatteringPolynomial::term(1, {}, {0, 1});
  ConsistencyReport rep{pt, x, y, spokes.size(), false};

  // Kink crossings are monomial automorphisms K, and W_f K = K W_{K^{-1} f}. Moving every twist
  // to the end of the loop keeps truncation on the genuine wall functions; the twists cancel.
  std::array<CurveClass, 2> twist{};  // images of (1,0) and (0,1)
  auto apply = [&](const ScatteringPolynomial& p, int sign) {
    ScatteringPolynomial out;
    for (const auto& [k, c] : p.terms())
      out.add({k.z, k.t + (twist[0] * k.z.a + twist[1] * k.z.b) * sign, k.qhalf}, c);
    return out;
  };
  for (const Spoke& sp : spokes) {
    const LatticeVector travel = rot90(sp.dir);
    if (sp.fan) {
      const FanRay& fr = ws.fan[sp.index];
      const LatticeVector n = primitive_normal(fr.dir, travel);
      twist[0] += fr.kink * n.a;
      twist[1] += fr.kink * n.b;
    } else {
      Wall w = ws.walls[sp.index];
      w.func = apply(w.func, -1);
      rep.x_after = cross_wall(rep.x_after, w, travel, bound);
      rep.y_after = cross_wall(rep.y_after, w, travel, bound);
    }
  }
  rep.x_after = apply(rep.x_after, 1);
  rep.y_after = apply(rep.y_after, 1);
  rep.consistent = truncate_l1(rep.x_after - x, bound).is_zero() &&
                   truncate_l1(rep.y_after - y, bound).is_zero();
  return rep;
}

std::vector<Point> audit_points(const WallStructure& ws) {
  std::set<Point> pts;
  for (const auto& e : find_intersections(ws)) pts.insert(e.point);
  for (const auto& w : ws.walls) {
    pts.insert(w.support.base);
    if (auto e = w.support.end()) pts.insert(*e);
  }
  pts.erase(Point{});
  return {pts.begin(), pts.end()};
}

std::vector<ConsistencyReport> audit_consistency_serial(const WallStructure& ws, int bound) {
  std::vector<ConsistencyReport> out;
  for (const auto& p : audit_points(ws)) out.push_back(check_consistency_at_point(ws, p, bound));
  return out;
}

std::vector<ConsistencyReport> audit_consistency(const WallStructure& ws, int bound) {
  const auto pts = audit_points(ws);
  std::vector<ConsistencyReport> out(pts.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = check_consistency_at_point(ws, pts[i], bound);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void validate_generic(const WallStructure& ws) {
  for (const auto& pt : audit_points(ws)) {
    const auto spokes = spokes_at(ws, pt);
    std::vector<LatticeVector> wall_dirs;
    std::size_t fan_spokes = 0;
    for (const auto& sp : spokes) {
      if (sp.fan) ++fan_spokes;
      else wall_dirs.push_back(sp.dir);
    }
    std::sort(wall_dirs.begin(), wall_dirs.end());
    if (std::adjacent_find(wall_dirs.begin(), wall_dirs.end()) != wall_dirs.end())
      throw MirrorError(ErrorKind::degenerate_structure,
                        "coincident walls leave " + to_string(pt) + " in the same direction");
    std::size_t lines = 0;
    std::size_t loose = 0;
    for (auto d : wall_dirs) {
      if (std::binary_search(wall_dirs.begin(), wall_dirs.end(), -d)) ++lines;
      else ++loose;
    }
    lines /= 2;
    const bool ok = fan_spokes > 0 ? (lines == 1 && loose == 0 && fan_spokes == 2)
                                   : (lines == 1 && loose == 0) || (lines == 2 && loose <= 1);
    if (!ok) {
      if (fan_spokes == 0 && lines + loose >= 3)
        throw MirrorError(ErrorKind::triple_intersection,
                          std::to_string(lines + loose) + " walls meet at " + to_string(pt));
      throw MirrorError(ErrorKind::degenerate_structure,
                        "non-generic wall configuration at " + to_string(pt));
    }
  }
}

WallStructure complete_to_consistency(const WallStructure& ws, int bound) {
  ws.validate();
  const Tracer tracer(ws.fan);
  std::vector<Wall> walls = normalize(ws, tracer);
  for (const auto& w : walls) single_factor(w);

  std::set<Pending> queue;
  auto enqueue = [&](std::size_t i, std::size_t j) {
    if (auto q = interior_crossing(walls, i, j)) {
      const int deg = anticanonical_degree(single_factor(walls[i]).gamma +
                                           single_factor(walls[j]).gamma);
      queue.insert({deg, *q, std::min(i, j), std::max(i, j)});
    }
  };
  for (std::size_t i = 0; i < walls.size(); ++i)
    for (std::size_t j = i + 1; j < walls.size(); ++j) enqueue(i, j);

  std::set<Point> processed;
  while (!queue.empty()) {
    const Pending ev = *queue.begin();
    queue.erase(queue.begin());
    if (!processed.insert(ev.point).second)
      throw MirrorError(ErrorKind::triple_intersection,
                        "more than two walls cross at " + to_string(ev.point));
    const auto fi = single_factor(walls[ev.i]);
    const auto fj = single_factor(walls[ev.j]);
    const int d = det(fi.v, fj.v);
    if (d != 1 && d != -1)
      throw MirrorError(ErrorKind::non_unimodular,
                        "walls with vectors " + to_string(fi.v) + " and " + to_string(fj.v) +
                            " cross at " + to_string(ev.point) + " with determinant " +
                            std::to_string(d));
    const LatticeVector v = fi.v + fj.v;
    if (has_wall_from(walls, ev.point, v)) continue;
    const CurveClass gamma = fi.gamma + fj.gamma;
    if (anticanonical_degree(gamma) > bound || walls.size() >= kMaxWalls)
      throw MirrorError(ErrorKind::non_termination,
                        "completion did not close within bound " + std::to_string(bound) +
                            "; frontier wall at " + to_string(ev.point) + " with class degree " +
                            std::to_string(anticanonical_degree(gamma)) + " and " +
                            std::to_string(walls.size()) + " walls");
    const std::size_t first = walls.size();
    for (auto& piece : tracer.trace(ev.point, v, wall_function(gamma, v), false))
      walls.push_back(std::move(piece));
    for (std::size_t k = first; k < walls.size(); ++k)
      for (std::size_t m = 0; m < first; ++m) enqueue(m, k);
  }

  WallStructure out{ws.fan, std::move(walls)};
  for (std::size_t i = 0; i < out.walls.size(); ++i)
    for (std::size_t j = i + 1; j < out.walls.size(); ++j)
      if (collinear_overlap(out.walls[i].support, out.walls[j].support))
        throw MirrorError(ErrorKind::degenerate_structure,
                          "completion produced coincident walls near " +
                              to_string(out.walls[j].support.base));
  validate_generic(out);
  return out;
}

}  // namespace mirror
