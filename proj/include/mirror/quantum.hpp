#pragma once

#include <utility>
#include <vector>

#include "mirror/polynomial.hpp"
#include "mirror/theta.hpp"

namespace mirror {

// Theta function read over the quantum torus: each z^v becomes the symmetric generator ẑ^v.
struct QuantumTheta {
  int index = 0;
  LatticeVector direction;
  ScatteringPolynomial expr;
};

// Refuses theta functions whose transport discarded series terms.
QuantumTheta quantize(const ThetaFunction& theta);
std::vector<QuantumTheta> quantize(const std::vector<ThetaFunction>& thetas);
std::vector<BasisElement> as_basis(const std::vector<QuantumTheta>& qthetas);

// q^{1/2} a b - q^{-1/2} b a.
ScatteringPolynomial q_commutator(const ScatteringPolynomial& a, const ScatteringPolynomial& b);
ScatteringPolynomial q_commutator(const QuantumTheta& a, const QuantumTheta& b);

// q -> 1.
ScatteringPolynomial specialize_classical(const ScatteringPolynomial& p);
Relation specialize_classical(const Relation& r);

// Ordered quantum product ϑ̂_i ϑ̂_j in the basis.
Relation find_quantum_product(const std::vector<QuantumTheta>& qthetas, int i, int j);
// q-commutator of ϑ̂_i and ϑ̂_j in the basis.
Relation find_commutator_relation(const std::vector<QuantumTheta>& qthetas, int i, int j);

inline const std::vector<std::pair<int, int>> kQuadricPairs{{1, 3}, {2, 4}};
inline const std::vector<std::pair<int, int>> kCommutatorPairs{{1, 3}, {2, 4}, {1, 2},
                                                               {2, 3}, {3, 4}, {4, 1}};

// The quadric products followed by the six commutators, in the order of kQuadricPairs and
// kCommutatorPairs.
std::vector<Relation> find_quantum_relations(const std::vector<QuantumTheta>& qthetas);

}  // namespace mirror
