#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mirror/geometry.hpp"
#include "mirror/polynomial.hpp"

namespace mirror {

struct ThetaFunction {
  int index = 0;
  LatticeVector direction;
  ScatteringPolynomial local_expr;
  std::vector<CrossingEvent> events;  // from infinity to the endpoint
  bool exact = true;                  // no series term was discarded on the way

  std::size_t wall_crossings() const;
};

// Transports z^dir from infinity along dir to the endpoint.
ThetaFunction transport_theta(const WallStructure& ws, LatticeVector dir, const Point& endpoint,
                              int bound);
// One theta function per fan ray, in fan order, indexed from 1. Directions are transported in
// parallel; the serial version is the reference.
std::vector<ThetaFunction> compute_theta_basis(const WallStructure& ws, const Point& endpoint,
                                               int bound);
std::vector<ThetaFunction> compute_theta_basis_serial(const WallStructure& ws,
                                                      const Point& endpoint, int bound);

// Basis element for the reduction: the seed is the unique term with z-exponent `direction`.
struct BasisElement {
  int index = 0;
  LatticeVector direction;
  ScatteringPolynomial expr;
};

std::vector<BasisElement> as_basis(const std::vector<ThetaFunction>& thetas);

// target = constant + sum_k coeffs[k] * basis_k with z-free coefficients.
struct Relation {
  enum class Kind { product, commutator };

  std::pair<int, int> lhs;
  Kind kind = Kind::product;
  Product mode = Product::classical;
  ScatteringPolynomial constant;
  std::map<int, ScatteringPolynomial> coeffs;

  bool operator==(const Relation&) const = default;
};

// Integer weight on (t, z) exponents making every seed strictly lighter than the other terms of
// its basis element; empty when no such weight exists.
std::optional<std::array<long, kClassRank + 2>> seed_weight(const std::vector<BasisElement>& basis);

// Greedy reduction: the lightest z-dependent term of the remainder is always a seed contribution.
// Throws not_expressible when the remainder keeps a z-dependent term.
std::pair<ScatteringPolynomial, std::map<int, ScatteringPolynomial>> express_in_basis(
    const ScatteringPolynomial& target, const std::vector<BasisElement>& basis, Product mode);

// constant + sum_k coeffs[k] * basis_k.
ScatteringPolynomial expand_relation(const Relation& r, const std::vector<BasisElement>& basis,
                                     Product mode);

// theta_i * theta_j (in this order) expressed in the basis.
Relation find_relation(const std::vector<ThetaFunction>& thetas, int i, int j, Product mode);

// Noncommutative polynomial in theta indices with central z-free coefficients. Classical words
// are kept sorted.
using WordPolynomial = std::map<std::vector<int>, ScatteringPolynomial>;

// Solves the relation whose right side contains theta_{eliminated} for it and substitutes into
// the relation whose product contains it. The result is an identity "= 0", cleared of the
// inverted coefficient.
WordPolynomial eliminate_theta(const Relation& solve_from, const Relation& substitute_into,
                               int eliminated = 4);
WordPolynomial eliminate_theta4(const std::vector<Relation>& quadrics);

ScatteringPolynomial evaluate_words(const WordPolynomial& w, const std::vector<BasisElement>& basis,
                                    Product mode);
// q -> 1 on the coefficients, words sorted and merged.
WordPolynomial specialize_words(const WordPolynomial& w);

}  // namespace mirror

namespace mirror {

struct ChamberSample {
  Point endpoint;
  std::vector<ThetaFunction> thetas;
};

// One endpoint per distinct theta basis over a jittered grid of step 1/den in [-extent, extent]^2,
// keeping only positions where every transport is defined and exact.
std::vector<ChamberSample> sample_exact_chambers(const WallStructure& ws, int bound, int den,
                                                 int extent);

}  // namespace mirror
