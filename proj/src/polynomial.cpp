#include "mirror/polynomial.hpp"

#include "mirror/error.hpp"

namespace mirror {

void ScatteringPolynomial::add(const MonomialKey& key, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<Monomial> ScatteringPolynomial::monomials() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back(Monomial{c, k.qhalf, k.t, k.z});
  return out;
}

mpz_class ScatteringPolynomial::coefficient(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

bool ScatteringPolynomial::is_classical() const {
  for (const auto& [k, c] : terms_)
    if (k.qhalf != 0) return false;
  return true;
}

bool ScatteringPolynomial::is_z_free() const {
  for (const auto& [k, c] : terms_)
    if (!k.z.is_zero()) return false;
  return true;
}

ScatteringPolynomial& ScatteringPolynomial::operator+=(const ScatteringPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ScatteringPolynomial& ScatteringPolynomial::operator-=(const ScatteringPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ScatteringPolynomial ScatteringPolynomial::operator+(const ScatteringPolynomial& o) const {
  ScatteringPolynomial r = *this;
  return r += o;
}

ScatteringPolynomial ScatteringPolynomial::operator-(const ScatteringPolynomial& o) const {
  ScatteringPolynomial r = *this;
  return r -= o;
}

ScatteringPolynomial ScatteringPolynomial::operator-() const {
  ScatteringPolynomial r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

Monomial quantum_monomial_product(const Monomial& m1, const Monomial& m2) {
  return Monomial{m1.coeff * m2.coeff, m1.qhalf + m2.qhalf + det(m1.zexp, m2.zexp),
                  m1.tclass + m2.tclass, m1.zexp + m2.zexp};
}

Monomial classical_monomial_product(const Monomial& m1, const Monomial& m2) {
  return Monomial{m1.coeff * m2.coeff, m1.qhalf + m2.qhalf, m1.tclass + m2.tclass,
                  m1.zexp + m2.zexp};
}

ScatteringPolynomial poly_mul(const ScatteringPolynomial& p1, const ScatteringPolynomial& p2,
                              Product mode) {
  if (mode == Product::classical && (!p1.is_classical() || !p2.is_classical()))
    throw MirrorError(ErrorKind::mode_mismatch,
                      "classical product applied to a polynomial with q-powers");
  ScatteringPolynomial out;
  for (const auto& [k1, c1] : p1.terms()) {
    for (const auto& [k2, c2] : p2.terms()) {
      MonomialKey k = k1 + k2;
      if (mode == Product::quantum) k.qhalf += det(k1.z, k2.z);
      out.add(k, c1 * c2);
    }
  }
  return out;
}

ScatteringPolynomial truncate_l1(const ScatteringPolynomial& p, int bound) {
  ScatteringPolynomial out;
  for (const auto& [k, c] : p.terms())
    if (k.t.l1_norm() <= bound) out.add(k, c);
  return out;
}

namespace {

bool sign_coherent(const ScatteringPolynomial& u) {
  for (std::size_t i = 0; i < kClassRank; ++i) {
    bool pos = false;
    bool neg = false;
    for (const auto& [k, c] : u.terms()) {
      pos = pos || k.t.c[i] > 0;
      neg = neg || k.t.c[i] < 0;
    }
    if (pos && neg) return false;
  }
  return true;
}

}  // namespace

ScatteringPolynomial poly_pow_truncated(const ScatteringPolynomial& p, int e, int bound,
                                        bool* truncated) {
  if (bound < 0) throw MirrorError(ErrorKind::invalid_input, "truncation bound must be >= 0");
  if (truncated) *truncated = false;
  if (e >= 0) {
    ScatteringPolynomial r = ScatteringPolynomial::one();
    for (int i = 0; i < e; ++i) r = poly_mul(r, p, Product::classical);
    return r;
  }
  if (p.constant_term() != 1)
    throw MirrorError(ErrorKind::invalid_input,
                      "negative power of a polynomial without unit constant term");
  ScatteringPolynomial u = p - ScatteringPolynomial::one();
  if (u.is_zero()) return ScatteringPolynomial::one();
  int min_norm = bound + 1;
  for (const auto& [k, c] : u.terms()) min_norm = std::min(min_norm, k.t.l1_norm());
  if (min_norm == 0 || !sign_coherent(u))
    throw MirrorError(ErrorKind::invalid_input,
                      "series expansion does not converge in the l1 grading");

  // (1+u)^e = sum_k binom(e, k) u^k; with sign-coherent u every term of u^k has norm >= k*min_norm.
  ScatteringPolynomial result = ScatteringPolynomial::one();
  ScatteringPolynomial power = ScatteringPolynomial::one();
  mpz_class binom = 1;
  for (int k = 1;; ++k) {
    power = poly_mul(power, u, Product::classical);
    binom = binom * (e - k + 1) / k;
    ScatteringPolynomial kept = truncate_l1(power, bound);
    if (kept.size() != power.size() && truncated) *truncated = true;
    for (const auto& [key, c] : kept.terms()) result.add(key, binom * c);
    if (kept.is_zero()) break;
    power = kept;
  }
  if (truncated) *truncated = true;
  return result;
}

}  // namespace mirror
