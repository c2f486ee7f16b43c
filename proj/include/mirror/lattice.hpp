#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mirror {

// Element of M = Z^2. x = z^(1,0), y = z^(0,1).
struct LatticeVector {
  int a = 0;
  int b = 0;

  constexpr auto operator<=>(const LatticeVector&) const = default;

  constexpr LatticeVector operator+(LatticeVector o) const { return {a + o.a, b + o.b}; }
  constexpr LatticeVector operator-(LatticeVector o) const { return {a - o.a, b - o.b}; }
  constexpr LatticeVector operator-() const { return {-a, -b}; }
  constexpr LatticeVector operator*(int k) const { return {k * a, k * b}; }
  LatticeVector& operator+=(LatticeVector o) {
    a += o.a;
    b += o.b;
    return *this;
  }

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  bool is_primitive() const { return !is_zero() && std::gcd(a, b) == 1; }
};

constexpr int det(LatticeVector v, LatticeVector w) { return v.a * w.b - v.b * w.a; }
constexpr int dot(LatticeVector v, LatticeVector w) { return v.a * w.a + v.b * w.b; }
// Counterclockwise quarter turn.
constexpr LatticeVector rot90(LatticeVector v) { return {-v.b, v.a}; }

inline LatticeVector primitive_part(LatticeVector v) {
  const int g = std::gcd(v.a, v.b);
  return g == 0 ? v : LatticeVector{v.a / g, v.b / g};
}

// Strict total order of directions by angle in [0, 2pi), starting at the positive x-axis.
bool angle_less(LatticeVector v, LatticeVector w);

inline constexpr std::size_t kClassRank = 6;

// Element of NE(X)^gp in the basis (H, E1, ..., E5).
struct CurveClass {
  std::array<int, kClassRank> c{};

  auto operator<=>(const CurveClass&) const = default;

  static CurveClass basis(std::size_t i) {
    CurveClass k;
    k.c.at(i) = 1;
    return k;
  }
  static CurveClass H() { return basis(0); }
  static CurveClass E(std::size_t i) { return basis(i); }

  CurveClass operator+(const CurveClass& o) const {
    CurveClass r;
    for (std::size_t i = 0; i < kClassRank; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  CurveClass operator-(const CurveClass& o) const { return *this + (-o); }
  CurveClass operator-() const {
    CurveClass r;
    for (std::size_t i = 0; i < kClassRank; ++i) r.c[i] = -c[i];
    return r;
  }
  CurveClass operator*(int k) const {
    CurveClass r;
    for (std::size_t i = 0; i < kClassRank; ++i) r.c[i] = k * c[i];
    return r;
  }
  CurveClass& operator+=(const CurveClass& o) { return *this = *this + o; }

  bool is_zero() const {
    for (int v : c)
      if (v != 0) return false;
    return true;
  }
  int l1_norm() const {
    int n = 0;
    for (int v : c) n += v < 0 ? -v : v;
    return n;
  }
};

// Intersection with -K = 3H - sum E_i.
inline int anticanonical_degree(const CurveClass& beta) {
  int d = 3 * beta.c[0];
  for (std::size_t i = 1; i < kClassRank; ++i) d += beta.c[i];
  return d;
}

const std::array<std::string_view, kClassRank>& class_names();
// Index of "H", "E1", ... ; throws MirrorError on unknown names.
std::size_t class_index(std::string_view name);

// Point of M_R with exact rational coordinates.
struct Point {
  mpq_class x;
  mpq_class y;

  Point() = default;
  Point(mpq_class x_, mpq_class y_) : x(std::move(x_)), y(std::move(y_)) {
    x.canonicalize();
    y.canonicalize();
  }
  explicit Point(LatticeVector v) : x(v.a), y(v.b) {}

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  // Lexicographic.
  bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }

  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  bool is_origin() const { return x == 0 && y == 0; }
};

inline Point operator+(const Point& p, LatticeVector v) { return {p.x + v.a, p.y + v.b}; }
inline Point scaled(LatticeVector v, const mpq_class& s) { return {s * v.a, s * v.b}; }
inline mpq_class det(const Point& p, LatticeVector v) { return p.x * v.b - p.y * v.a; }
inline mpq_class det(LatticeVector v, const Point& p) { return -det(p, v); }

std::string to_string(LatticeVector v);
std::string to_string(const Point& p);
// Parses "p/q" or integer text.
mpq_class parse_rational(std::string_view text);

}  // namespace mirror
