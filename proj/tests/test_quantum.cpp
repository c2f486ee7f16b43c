#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "mirror/error.hpp"
#include "mirror/presets.hpp"
#include "mirror/quantum.hpp"
#include "mirror/scattering.hpp"
#include "mirror/theta.hpp"
#include "support.hpp"

using namespace mirror;
using testing::poly;

namespace {

WallStructure completed(const Preset& p) {
  return complete_to_consistency(perturb_walls(build_initial_walls(p.model), p.offsets), 20);
}

std::vector<QuantumTheta> preset_qthetas() {
  const Preset p = dp4_preset();
  return quantize(compute_theta_basis(completed(p), p.endpoint, 20));
}

ScatteringPolynomial times(const char* a, const char* b) {
  return poly_mul(poly(a), poly(b), Product::quantum);
}

const char* const kC1 = "t^{H-E1} + t^{2H-E1-E2-E3-E5} + t^{2H-E1-E2-E4-E5}";
const char* const kC2 = "t^{H-E4} + t^{H-E3} + t^{2H-E2-E3-E4-E5}";
const char* const kHalf = "q^{1/2} - q^{-1/2}";
const char* const kFull = "q - q^{-1}";

Relation quantum_relation(std::pair<int, int> lhs, Relation::Kind kind, ScatteringPolynomial c,
                          std::map<int, ScatteringPolynomial> coeffs) {
  Relation r;
  r.lhs = lhs;
  r.kind = kind;
  r.mode = Product::quantum;
  r.constant = std::move(c);
  r.coeffs = std::move(coeffs);
  return r;
}

// The eight identities, products first.
std::vector<Relation> expected_relations() {
  using K = Relation::Kind;
  return {
      quantum_relation({1, 3}, K::product, poly(kC1),
                       {{2, poly("q^{-1/2} t^{H-E1-E2}")}, {4, poly("q^{1/2} t^{H-E1-E5}")}}),
      quantum_relation({2, 4}, K::product, poly(kC2),
                       {{1, poly("q^{1/2} t^{E1}")}, {3, poly("q^{-1/2} t^{H-E3-E4}")}}),
      quantum_relation({1, 3}, K::commutator, times(kHalf, kC1),
                       {{4, times(kFull, "t^{H-E1-E5}")}}),
      quantum_relation({2, 4}, K::commutator, times(kHalf, kC2), {{1, times(kFull, "t^{E1}")}}),
      quantum_relation({1, 2}, K::commutator, times(kHalf, "t^{2H-E1-E3-E4-E5}"), {}),
      quantum_relation({2, 3}, K::commutator, times(kHalf, "t^{H-E5}"), {}),
      quantum_relation({3, 4}, K::commutator, times(kHalf, "t^{H-E2}"), {}),
      quantum_relation({4, 1}, K::commutator, times(kHalf, "t^{2H-E1-E2-E3-E4}"), {}),
  };
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

TEST_CASE("quantization keeps the term data") {
  const auto q = preset_qthetas();
  CHECK(q[0].expr == poly("z^{(-1,-1)} + t^{E1-E5} z^{(-1,-2)} + t^{H-E4-E5} z^{(0,-1)}"));
  CHECK(q[3].expr == poly("t^{E1} z^{(0,-1)} + t^{H-E4} z^{(1,0)} + t^{2H-E1-E2-E3-E4} z^{(1,1)}"));
  ThetaFunction zero;
  CHECK(quantize(zero).expr.is_zero());
  ThetaFunction quantum_input;
  quantum_input.local_expr = poly("q x");
  CHECK(throws_kind([&] { quantize(quantum_input); }, ErrorKind::mode_mismatch));
  ThetaFunction inexact;
  inexact.local_expr = poly("x");
  inexact.exact = false;
  CHECK(throws_kind([&] { quantize(inexact); }, ErrorKind::truncated_input));
}

TEST_CASE("q-commutator examples") {
  const auto q = preset_qthetas();
  CHECK(q_commutator(q[1], q[2]) == times(kHalf, "t^{H-E5}"));
  CHECK(q_commutator(q[2], q[3]) == times(kHalf, "t^{H-E2}"));
  for (const auto& a : q)
    CHECK(q_commutator(a, a) ==
          poly_mul(poly(kHalf), poly_mul(a.expr, a.expr, Product::quantum), Product::quantum));
}

TEST_CASE("the eight quantum identities") {
  const auto q = preset_qthetas();
  const auto rel = find_quantum_relations(q);
  const auto want = expected_relations();
  REQUIRE(rel.size() == want.size());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    CAPTURE(i);
    CHECK(rel[i] == want[i]);
  }
  const auto basis = as_basis(q);
  for (const auto& r : rel) {
    const auto& a = q[r.lhs.first - 1].expr;
    const auto& b = q[r.lhs.second - 1].expr;
    const auto lhs = r.kind == Relation::Kind::product ? poly_mul(a, b, Product::quantum)
                                                       : q_commutator(a, b);
    CHECK(expand_relation(r, basis, Product::quantum) == lhs);
  }
}

TEST_CASE("antisymmetry of the q-commutator") {
  const auto q = preset_qthetas();
  for (const auto& a : q)
    for (const auto& b : q) {
      // q^{1/2} ab - q^{-1/2} ba = -(q^{-1/2} ba - q^{1/2} ab)
      const auto ab = poly_mul(a.expr, b.expr, Product::quantum);
      const auto ba = poly_mul(b.expr, a.expr, Product::quantum);
      const auto flipped = poly_mul(poly("q^{-1/2}"), ba, Product::quantum) -
                           poly_mul(poly("q^{1/2}"), ab, Product::quantum);
      CHECK(q_commutator(a, b) == -flipped);
    }
}

TEST_CASE("q = 1 recovers the classical relations") {
  const Preset p = dp4_preset();
  const auto thetas = compute_theta_basis(completed(p), p.endpoint, 20);
  const auto rel = find_quantum_relations(quantize(thetas));
  CHECK(specialize_classical(rel[0]) == find_relation(thetas, 1, 3, Product::classical));
  CHECK(specialize_classical(rel[1]) == find_relation(thetas, 2, 4, Product::classical));
  for (std::size_t i = 2; i < rel.size(); ++i) {
    const Relation s = specialize_classical(rel[i]);
    CHECK(s.constant.is_zero());
    for (const auto& [k, c] : s.coeffs) CHECK(c.is_zero());
  }
  const auto q = quantize(thetas);
  for (const auto& a : q)
    for (const auto& b : q) CHECK(specialize_classical(q_commutator(a, b)).is_zero());
  CHECK(specialize_classical(poly("q^{1/2} x y + q^{-1/2} x y")) == poly("2 x y"));
}

TEST_CASE("quantum cubic") {
  const auto q = preset_qthetas();
  const auto rel = find_quantum_relations(q);
  const WordPolynomial cubic = eliminate_theta4({rel[0], rel[1]});
  CHECK(evaluate_words(cubic, as_basis(q), Product::quantum).is_zero());
  const Preset p = dp4_preset();
  const auto thetas = compute_theta_basis(completed(p), p.endpoint, 20);
  const WordPolynomial classical = eliminate_theta4(
      {find_relation(thetas, 1, 3, Product::classical), find_relation(thetas, 2, 4, Product::classical)});
  CHECK(specialize_words(cubic) == classical);
}

TEST_CASE("quantum relations across chambers") {
  const auto want = expected_relations();
  const Preset p = dp4_preset();
  const auto chambers = sample_exact_chambers(completed(p), 20, 14, 1);
  int agreeing = 0;
  for (const auto& c : chambers) {
    CAPTURE(to_string(c.endpoint));
    std::optional<std::vector<Relation>> rel;
    try {
      rel = find_quantum_relations(quantize(c.thetas));
    } catch (const MirrorError& e) {
      // the monomial-replacement rule gives no basis expression in some chambers
      CHECK(e.kind() == ErrorKind::not_expressible);
      continue;
    }
    CHECK(*rel == want);
    ++agreeing;
  }
  CHECK(agreeing >= 3);
}

TEST_CASE("inexact transports are not quantized") {
  const Preset p = dp4_preset();
  const WallStructure ws = completed(p);
  std::optional<std::vector<ThetaFunction>> inexact;
  for (int i = -10; i < 10 && !inexact; ++i)
    for (int j = -10; j < 10 && !inexact; ++j) {
      const Point pt{mpq_class(2 * i + 1, 14) + mpq_class(1, 97), mpq_class(2 * j + 1, 14) + mpq_class(1, 89)};
      try {
        auto th = compute_theta_basis(ws, pt, 20);
        for (const auto& t : th)
          if (!t.exact) inexact = th;
      } catch (const MirrorError&) {
      }
    }
  REQUIRE(inexact.has_value());
  CHECK(throws_kind([&] { quantize(*inexact); }, ErrorKind::truncated_input));
  CHECK(throws_kind([&] { find_relation(*inexact, 1, 3, Product::quantum); },
                    ErrorKind::truncated_input));
}

TEST_CASE("the empty model") {
  const Preset p = empty_preset();
  const auto thetas = compute_theta_basis(completed(p), p.endpoint, 20);
  for (const auto& t : thetas) CHECK(t.local_expr.size() == 1);
  const auto q = quantize(thetas);
  for (const auto& a : q)
    for (const auto& b : q) {
      const auto c = q_commutator(a, b);
      // a scalar multiple of a single quantum monomial, or zero
      std::set<LatticeVector> z;
      for (const auto& [k, v] : c.terms()) z.insert(k.z);
      CHECK(z.size() <= 1);
    }
}
