#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>
#include <vector>

#include "mirror/error.hpp"
#include "mirror/presets.hpp"
#include "mirror/scattering.hpp"
#include "support.hpp"

using namespace mirror;
using testing::cls;
using testing::poly;

namespace {

Wall line_piece(Point base, LatticeVector dir, const char* f, LatticeVector vwall) {
  return Wall{Ray{std::move(base), dir, std::nullopt}, poly(f), vwall};
}

// Both halves of the line through base, propagating along vwall.
std::vector<Wall> full_line(const Point& base, LatticeVector vwall, const char* f) {
  return {line_piece(base, -vwall, f, vwall), line_piece(base, vwall, f, vwall)};
}

WallStructure completed(const Preset& p, int bound = 20) {
  return complete_to_consistency(perturb_walls(build_initial_walls(p.model), p.offsets), bound);
}

Preset alternative_dp4() {
  Preset p = dp4_preset();
  auto at = [](int x, int y) { return Point{mpq_class(x, 7), mpq_class(y, 7)}; };
  p.offsets = {{0, at(0, 4)}, {1, at(-3, 2)}, {2, at(-2, 1)}, {3, at(-6, 0)}};
  return p;
}

// Wall-wall crossings, wall ends and wall/fan crossings found by brute force over all pairs.
std::set<std::pair<mpq_class, mpq_class>> brute_force_points(const WallStructure& ws) {
  std::set<std::pair<mpq_class, mpq_class>> out;
  auto on = [](const Ray& r, const Point& p) {
    const mpq_class dx = p.x - r.base.x, dy = p.y - r.base.y;
    if (dx * r.dir.b - dy * r.dir.a != 0) return false;
    const mpq_class s = (dx * r.dir.a + dy * r.dir.b) / mpq_class(dot(r.dir, r.dir));
    return s >= 0 && (!r.length || s <= *r.length);
  };
  auto meet = [&](const Ray& a, const Ray& b) {
    const int d = det(a.dir, b.dir);
    if (d == 0) return;
    // a.base + s a.dir = b.base + r b.dir
    const mpq_class ex = b.base.x - a.base.x, ey = b.base.y - a.base.y;
    const mpq_class s = (ex * b.dir.b - ey * b.dir.a) / d;
    const Point p = a.at(s);
    if (on(a, p) && on(b, p) && !p.is_origin()) out.insert({p.x, p.y});
  };
  for (std::size_t i = 0; i < ws.walls.size(); ++i) {
    const Ray& a = ws.walls[i].support;
    if (!a.base.is_origin()) out.insert({a.base.x, a.base.y});
    if (a.length) out.insert({a.end()->x, a.end()->y});
    for (std::size_t j = i + 1; j < ws.walls.size(); ++j) meet(a, ws.walls[j].support);
    for (const auto& fr : ws.fan) meet(a, Ray{Point{}, fr.dir, std::nullopt});
  }
  return out;
}

bool throws_kind(const std::function<void()>& f, ErrorKind k) {
  try {
    f();
  } catch (const MirrorError& e) {
    return e.kind() == k;
  }
  return false;
}

}  // namespace

TEST_CASE("two crossing lines without kinks") {
  WallStructure ws;
  for (auto& w : full_line(Point{0, mpq_class(3, 7)}, {1, 0}, "1 + t^{-E2} x^{-1}")) ws.walls.push_back(w);
  for (auto& w : full_line(Point{mpq_class(-5, 7), 0}, {0, 1}, "1 + t^{-E5} y^{-1}")) ws.walls.push_back(w);
  const Point q{mpq_class(-5, 7), mpq_class(3, 7)};
  const auto ev = testing::sample_evaluation();

  const auto before = check_consistency_at_point(ws, q, 20);
  CHECK_FALSE(before.consistent);
  CHECK(before.x_after != poly("x"));
  CHECK_FALSE(testing::loop_is_identity(ws, q, ev, mpq_class(5, 3), mpq_class(7, 4)));

  const WallStructure done = complete_to_consistency(ws, 20);
  CHECK(check_consistency_at_point(done, q, 20).consistent);
  CHECK(testing::loop_is_identity(done, q, ev, mpq_class(5, 3), mpq_class(7, 4)));
  int emitted = 0;
  for (const auto& w : done.walls) {
    if (w.support.base == q && w.vwall == LatticeVector{1, 1}) {
      ++emitted;
      CHECK(w.support.dir == LatticeVector{1, 1});
      CHECK(w.func == poly("1 + t^{-E2-E5} x^{-1} y^{-1}"));
    }
  }
  CHECK(emitted == 1);
}

TEST_CASE("parallel walls do not intersect") {
  const WallStructure init = build_initial_walls(dp4_preset().model);
  for (const auto& e : find_intersections(init))
    CHECK_FALSE((e.wall_ids == std::pair<std::size_t, std::size_t>{1, 2}));
  WallStructure par;
  for (auto& w : full_line(Point{0, 1}, {1, 1}, "1 + t^{E3} x^{-1} y^{-1}")) par.walls.push_back(w);
  for (auto& w : full_line(Point{0, 2}, {1, 1}, "1 + t^{E4} x^{-1} y^{-1}")) par.walls.push_back(w);
  CHECK(find_intersections(par).empty());
  CHECK(complete_to_consistency(par, 20) == par);
}

TEST_CASE("non-unimodular crossings are refused") {
  WallStructure ws;
  for (auto& w : full_line(Point{0, 1}, {1, 0}, "1 + t^{E1} x^{-1}")) ws.walls.push_back(w);
  for (auto& w : full_line(Point{2, 0}, {1, 2}, "1 + t^{E2} x^{-1} y^{-2}")) ws.walls.push_back(w);
  CHECK(throws_kind([&] { complete_to_consistency(ws, 20); }, ErrorKind::non_unimodular));
}

TEST_CASE("the E2/E5 crossing of the preset") {
  const Preset p = dp4_preset();
  const WallStructure done = completed(p);
  const Point q{mpq_class(-5, 7), mpq_class(3, 7)};
  CHECK(check_consistency_at_point(done, q, 20).consistent);
  WallStructure missing = done;
  std::erase_if(missing.walls, [&](const Wall& w) { return w.support.base == q; });
  REQUIRE(missing.walls.size() + 1 == done.walls.size());
  CHECK_FALSE(check_consistency_at_point(missing, q, 20).consistent);
  CHECK_FALSE(testing::loop_is_identity(missing, q, testing::sample_evaluation(), mpq_class(5, 3),
                                        mpq_class(7, 4)));
}

TEST_CASE("completed preset structures") {
  for (const Preset& p : {dp4_preset(), alternative_dp4()}) {
    CAPTURE(p.name);
    const WallStructure ws = completed(p);
    CHECK(ws.walls.size() == 25);
    // completing again adds nothing
    CHECK(complete_to_consistency(ws, 20) == ws);
    const auto points = audit_points(ws);
    std::set<std::pair<mpq_class, mpq_class>> listed;
    for (const auto& pt : points) listed.insert({pt.x, pt.y});
    CHECK(listed == brute_force_points(ws));
    const auto reports = audit_consistency(ws, 20);
    REQUIRE(reports.size() == points.size());
    const auto ev = testing::sample_evaluation();
    for (const auto& r : reports) {
      CAPTURE(to_string(r.point));
      CHECK(r.consistent);
      CHECK(truncate_l1(r.x_after, 20) == poly("x"));
      CHECK(truncate_l1(r.y_after, 20) == poly("y"));
      CHECK(testing::loop_is_identity(ws, r.point, ev, mpq_class(5, 3), mpq_class(7, 4)));
      CHECK(testing::loop_is_identity(ws, r.point, ev, mpq_class(-2, 9), mpq_class(11, 3)));
    }
  }
}

TEST_CASE("parallel audit equals the serial reference") {
  const WallStructure ws = completed(dp4_preset());
  const auto par = audit_consistency(ws, 20);
  const auto ser = audit_consistency_serial(ws, 20);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].point == ser[i].point);
    CHECK(par[i].x_after == ser[i].x_after);
    CHECK(par[i].y_after == ser[i].y_after);
    CHECK(par[i].spokes == ser[i].spokes);
    CHECK(par[i].consistent == ser[i].consistent);
  }
}

TEST_CASE("empty model has nothing to complete") {
  const Preset p = empty_preset();
  const WallStructure ws = completed(p);
  CHECK(ws.walls.empty());
  CHECK(audit_consistency(ws, 20).empty());
}
