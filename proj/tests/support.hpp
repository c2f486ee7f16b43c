#pragma once
// Helpers shared by the test binaries: a small reader for expected values written the way they
// are printed in the literature ("2H-E1-E2", "t^{E1-E5} x^{-1} y^{-2}"), a normal-ordering oracle
// for quantum torus products, and an exact loop oracle that evaluates wall crossings as birational
// maps at rational points.
#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mirror/geometry.hpp"
#include "mirror/polynomial.hpp"

namespace testing {

using mirror::CurveClass;
using mirror::LatticeVector;
using mirror::Point;
using mirror::ScatteringPolynomial;

inline std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// "2H-2E1-E2-E3", "-E2", "0".
inline CurveClass cls(std::string_view text) {
  const std::string s = strip(text);
  CurveClass k;
  if (s == "0") return k;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    int mult = 0;
    bool digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mult = 10 * mult + (s[i++] - '0');
      digits = true;
    }
    if (!digits) mult = 1;
    if (i < s.size() && s[i] == 'H') {
      k.c[0] += sign * mult;
      ++i;
    } else if (i + 1 < s.size() && s[i] == 'E') {
      k.c.at(static_cast<std::size_t>(s[i + 1] - '0')) += sign * mult;
      i += 2;
    } else {
      throw std::invalid_argument("bad class text: " + s);
    }
  }
  return k;
}

namespace detail {

inline int read_int(const std::string& s) { return std::stoi(s); }

// Content of the braces opening at s[i] ('{'); i is left after the closing brace.
inline std::string braced(const std::string& s, std::size_t& i) {
  if (s[i] != '{') throw std::invalid_argument("expected { in " + s);
  int depth = 0;
  std::size_t start = i + 1;
  for (; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) break;
  }
  return s.substr(start, i++ - start);
}

inline int read_exponent(const std::string& s, std::size_t& i) {
  if (i >= s.size() || s[i] != '^') return 1;
  ++i;
  return read_int(braced(s, i));
}

// Exponent of q in doubled units: "1/2" -> 1, "-1" -> -2.
inline int read_qhalf(const std::string& s, std::size_t& i) {
  if (i >= s.size() || s[i] != '^') return 2;
  ++i;
  const std::string e = braced(s, i);
  if (auto slash = e.find('/'); slash != std::string::npos) {
    if (e.substr(slash + 1) != "2") throw std::invalid_argument("bad q exponent " + e);
    return read_int(e.substr(0, slash));
  }
  return 2 * read_int(e);
}

inline ScatteringPolynomial term(const std::string& s, int sign) {
  std::size_t i = 0;
  mpz_class coeff = 0;
  bool digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    coeff = 10 * coeff + (s[i++] - '0');
    digits = true;
  }
  if (!digits) coeff = 1;
  CurveClass t;
  LatticeVector z;
  int qhalf = 0;
  while (i < s.size()) {
    const char c = s[i++];
    if (c == '*') continue;
    if (c == 't') {
      if (s[i++] != '^') throw std::invalid_argument("bad t factor in " + s);
      t += cls(braced(s, i));
    } else if (c == 'x') {
      z.a += read_exponent(s, i);
    } else if (c == 'y') {
      z.b += read_exponent(s, i);
    } else if (c == 'q') {
      qhalf += read_qhalf(s, i);
    } else if (c == 'z') {
      // z^{(a,b)}
      if (s[i++] != '^') throw std::invalid_argument("bad z factor in " + s);
      std::string v = braced(s, i);
      v = v.substr(1, v.size() - 2);
      const auto comma = v.find(',');
      z += LatticeVector{read_int(v.substr(0, comma)), read_int(v.substr(comma + 1))};
    } else {
      throw std::invalid_argument("bad factor in " + s);
    }
  }
  return ScatteringPolynomial::term(sign * coeff, t, z, qhalf);
}

}  // namespace detail

// Sum of terms like "2 t^{H-E1} x^{-1} y", "q^{-1/2} t^{E1} z^{(0,-1)}", "1"; "0" is zero.
inline ScatteringPolynomial poly(std::string_view text) {
  const std::string s = strip(text);
  ScatteringPolynomial out;
  if (s == "0") return out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    int depth = 0;
    std::size_t j = i;
    for (; j < s.size(); ++j) {
      if (s[j] == '{') ++depth;
      if (s[j] == '}') --depth;
      if (depth == 0 && (s[j] == '+' || s[j] == '-') && j > i) break;
    }
    out += detail::term(s.substr(i, j - i), sign);
    i = j;
  }
  return out;
}

// ---- normal-ordering oracle for the quantum torus ----

// q-exponent (doubled) and lattice exponent of c q^{h/2} z^v written as a word in the generators
// X = z^(1,0), Y = z^(0,1), normal ordered with X before Y by adjacent swaps (YX = q^{-1} XY).
struct Word {
  mpz_class coeff;
  CurveClass t;
  int qexp2 = 0;
  std::vector<std::pair<int, int>> letters;  // (generator, +-1)
};

inline Word to_word(const mirror::Monomial& m) {
  Word w{m.coeff, m.tclass, m.qhalf - m.zexp.a * m.zexp.b, {}};
  for (int k = 0; k < std::abs(m.zexp.a); ++k) w.letters.push_back({0, m.zexp.a > 0 ? 1 : -1});
  for (int k = 0; k < std::abs(m.zexp.b); ++k) w.letters.push_back({1, m.zexp.b > 0 ? 1 : -1});
  return w;
}

inline mirror::Monomial normal_order(const std::vector<mirror::Monomial>& factors) {
  Word w{1, {}, 0, {}};
  for (const auto& m : factors) {
    Word f = to_word(m);
    w.coeff *= f.coeff;
    w.t += f.t;
    w.qexp2 += f.qexp2;
    w.letters.insert(w.letters.end(), f.letters.begin(), f.letters.end());
  }
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
      auto& [g1, s1] = w.letters[i];
      auto& [g2, s2] = w.letters[i + 1];
      if (g1 == 1 && g2 == 0) {
        w.qexp2 -= 2 * s1 * s2;
        std::swap(w.letters[i], w.letters[i + 1]);
        swapped = true;
      }
    }
  }
  int A = 0, B = 0;
  for (auto [g, s] : w.letters) (g == 0 ? A : B) += s;
  mirror::Monomial out;
  out.coeff = w.coeff;
  out.tclass = w.t;
  out.zexp = {A, B};
  out.qhalf = w.qexp2 + A * B;
  return out;
}

inline mirror::Monomial random_monomial(std::mt19937& rng, int zmax) {
  std::uniform_int_distribution<int> z(-zmax, zmax), q(-4, 4), t(-2, 2), c(1, 6), sign(0, 1);
  mirror::Monomial m;
  m.coeff = c(rng) * (sign(rng) ? 1 : -1);
  m.qhalf = q(rng);
  m.zexp = {z(rng), z(rng)};
  for (auto& v : m.tclass.c) v = t(rng);
  return m;
}

// ---- exact loop oracle ----

inline mpq_class qpow(const mpq_class& base, int e) {
  mpq_class r = 1;
  const mpq_class b = e < 0 ? mpq_class(1 / base) : base;
  for (int k = 0; k < (e < 0 ? -e : e); ++k) r *= b;
  return r;
}

struct Evaluation {
  std::array<mpq_class, mirror::kClassRank> t;
};

inline Evaluation sample_evaluation() {
  return {{mpq_class(3, 5), mpq_class(2, 7), mpq_class(5, 11), mpq_class(7, 13), mpq_class(4, 17),
           mpq_class(9, 19)}};
}

inline mpq_class tvalue(const Evaluation& ev, const CurveClass& beta) {
  mpq_class r = 1;
  for (std::size_t i = 0; i < mirror::kClassRank; ++i) r *= qpow(ev.t[i], beta.c[i]);
  return r;
}

inline mpq_class evaluate(const ScatteringPolynomial& p, const Evaluation& ev, const mpq_class& x,
                          const mpq_class& y) {
  mpq_class r = 0;
  for (const auto& [k, c] : p.terms()) r += c * tvalue(ev, k.t) * qpow(x, k.z.a) * qpow(y, k.z.b);
  return r;
}

struct Spoke {
  double angle;
  LatticeVector dir;
  bool kink;
  std::size_t index;
};

// Half-lines leaving pt: both halves of every wall or fan ray passing through it, one half for a
// wall ending or starting at it. Sorted counterclockwise by floating angle.
inline std::vector<Spoke> spokes_around(const mirror::WallStructure& ws, const Point& pt) {
  std::vector<Spoke> out;
  auto add = [&](LatticeVector d, bool kink, std::size_t i) {
    double a = std::atan2(static_cast<double>(d.b), static_cast<double>(d.a));
    if (a < 0) a += 2 * M_PI;
    out.push_back({a, d, kink, i});
  };
  for (std::size_t i = 0; i < ws.walls.size(); ++i) {
    const auto& r = ws.walls[i].support;
    const mpq_class dx = pt.x - r.base.x, dy = pt.y - r.base.y;
    if (dx * r.dir.b - dy * r.dir.a != 0) continue;
    const mpq_class s = (dx * r.dir.a + dy * r.dir.b) / mpq_class(mirror::dot(r.dir, r.dir));
    if (s < 0 || (r.length && s > *r.length)) continue;
    if (!r.length || s < *r.length) add(r.dir, false, i);
    if (s > 0) add(-r.dir, false, i);
  }
  for (std::size_t i = 0; i < ws.fan.size(); ++i) {
    const LatticeVector d = ws.fan[i].dir;
    if (pt.x * d.b - pt.y * d.a != 0 || pt.x * d.a + pt.y * d.b <= 0) continue;
    add(d, true, i);
    add(-d, true, i);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Spoke& a, const Spoke& b) { return a.angle < b.angle; });
  return out;
}

inline LatticeVector normal_against(LatticeVector dir, LatticeVector travel) {
  LatticeVector n{-dir.b, dir.a};
  if (mirror::dot(n, travel) > 0) n = -n;
  return n;
}

// Runs the counterclockwise loop around pt as a composition of torus maps applied to (x, y).
// Returns true when the loop brings the point back to itself exactly.
inline bool loop_is_identity(const mirror::WallStructure& ws, const Point& pt, const Evaluation& ev,
                             const mpq_class& x0, const mpq_class& y0) {
  const auto sp = spokes_around(ws, pt);
  // The substitution for the first crossing is applied last to the point.
  mpq_class x = x0, y = y0;
  for (auto it = sp.rbegin(); it != sp.rend(); ++it) {
    const LatticeVector travel{-it->dir.b, it->dir.a};
    const LatticeVector n = normal_against(it->dir, travel);
    mpq_class factor;
    if (it->kink) {
      const CurveClass& k = ws.fan[it->index].kink;
      factor = tvalue(ev, k);
    } else {
      factor = evaluate(ws.walls[it->index].func, ev, x, y);
    }
    const mpq_class nx = x * qpow(factor, n.a), ny = y * qpow(factor, n.b);
    x = nx;
    y = ny;
  }
  return x == x0 && y == y0;
}

}  // namespace testing
