#include "mirror/quantum.hpp"

#include "mirror/error.hpp"

namespace mirror {

namespace {

const ScatteringPolynomial& expr_of(const std::vector<QuantumTheta>& qthetas, int index) {
  for (const auto& q : qthetas)
    if (q.index == index) return q.expr;
  throw MirrorError(ErrorKind::invalid_input, "no quantum theta with index " + std::to_string(index));
}

Relation solve(const ScatteringPolynomial& target, const std::vector<QuantumTheta>& qthetas, int i,
               int j, Relation::Kind kind) {
  const auto basis = as_basis(qthetas);
  auto [constant, coeffs] = express_in_basis(target, basis, Product::quantum);
  Relation r{{i, j}, kind, Product::quantum, constant, coeffs};
  if (!(expand_relation(r, basis, Product::quantum) == target))
    throw MirrorError(ErrorKind::not_expressible, "quantum relation failed re-expansion");
  return r;
}

}  // namespace

QuantumTheta quantize(const ThetaFunction& theta) {
  if (!theta.exact)
    throw MirrorError(ErrorKind::truncated_input,
                      "theta " + std::to_string(theta.index) +
                          " comes from a truncated transport; quantization needs exact input");
  if (!theta.local_expr.is_classical())
    throw MirrorError(ErrorKind::mode_mismatch, "theta function already carries q-powers");
  return {theta.index, theta.direction, theta.local_expr};
}

std::vector<QuantumTheta> quantize(const std::vector<ThetaFunction>& thetas) {
  std::vector<QuantumTheta> out;
  for (const auto& th : thetas) out.push_back(quantize(th));
  return out;
}

std::vector<BasisElement> as_basis(const std::vector<QuantumTheta>& qthetas) {
  std::vector<BasisElement> out;
  for (const auto& q : qthetas) out.push_back({q.index, q.direction, q.expr});
  return out;
}

ScatteringPolynomial q_commutator(const ScatteringPolynomial& a, const ScatteringPolynomial& b) {
  const auto qp = ScatteringPolynomial::term(1, {}, {}, 1);
  const auto qm = ScatteringPolynomial::term(1, {}, {}, -1);
  return poly_mul(qp, poly_mul(a, b, Product::quantum), Product::quantum) -
         poly_mul(qm, poly_mul(b, a, Product::quantum), Product::quantum);
}

ScatteringPolynomial q_commutator(const QuantumTheta& a, const QuantumTheta& b) {
  return q_commutator(a.expr, b.expr);
}

ScatteringPolynomial specialize_classical(const ScatteringPolynomial& p) {
  ScatteringPolynomial out;
  for (const auto& [k, c] : p.terms()) out.add({k.z, k.t, 0}, c);
  return out;
}

Relation specialize_classical(const Relation& r) {
  Relation out{r.lhs, r.kind, Product::classical, specialize_classical(r.constant), {}};
  for (const auto& [k, c] : r.coeffs)
    if (auto s = specialize_classical(c); !s.is_zero()) out.coeffs[k] = s;
  return out;
}

Relation find_quantum_product(const std::vector<QuantumTheta>& qthetas, int i, int j) {
  const auto target = poly_mul(expr_of(qthetas, i), expr_of(qthetas, j), Product::quantum);
  return solve(target, qthetas, i, j, Relation::Kind::product);
}

Relation find_commutator_relation(const std::vector<QuantumTheta>& qthetas, int i, int j) {
  const auto target = q_commutator(expr_of(qthetas, i), expr_of(qthetas, j));
  return solve(target, qthetas, i, j, Relation::Kind::commutator);
}

std::vector<Relation> find_quantum_relations(const std::vector<QuantumTheta>& qthetas) {
  std::vector<Relation> out;
  for (auto [i, j] : kQuadricPairs) out.push_back(find_quantum_product(qthetas, i, j));
  for (auto [i, j] : kCommutatorPairs) out.push_back(find_commutator_relation(qthetas, i, j));
  return out;
}

}  // namespace mirror
