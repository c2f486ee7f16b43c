#pragma once

#include <compare>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "mirror/lattice.hpp"

namespace mirror {

// Exponent data of q^{qhalf/2} t^t z^z. The defaulted ordering is the canonical term order:
// z lexicographic, then t lexicographic, then qhalf.
struct MonomialKey {
  LatticeVector z;
  CurveClass t;
  int qhalf = 0;

  auto operator<=>(const MonomialKey&) const = default;

  MonomialKey operator+(const MonomialKey& o) const { return {z + o.z, t + o.t, qhalf + o.qhalf}; }
  MonomialKey operator-() const { return {-z, -t, -qhalf}; }
};

struct Monomial {
  mpz_class coeff{1};
  int qhalf = 0;
  CurveClass tclass;
  LatticeVector zexp;

  MonomialKey key() const { return {zexp, tclass, qhalf}; }
  bool operator==(const Monomial& o) const {
    return coeff == o.coeff && key() == o.key();
  }
};

enum class Product { classical, quantum };

// Finite integer combination of q^{k/2} t^beta z^v, kept in canonical form: no zero coefficients,
// one entry per key, iteration in canonical term order.
class ScatteringPolynomial {
 public:
  using Terms = std::map<MonomialKey, mpz_class>;

  ScatteringPolynomial() = default;
  ScatteringPolynomial(const Monomial& m) { add(m.key(), m.coeff); }  // NOLINT: implicit by intent

  static ScatteringPolynomial one() { return constant(1); }
  static ScatteringPolynomial constant(const mpz_class& c) {
    ScatteringPolynomial p;
    p.add(MonomialKey{}, c);
    return p;
  }
  static ScatteringPolynomial term(const mpz_class& c, const CurveClass& t, LatticeVector z,
                                   int qhalf = 0) {
    ScatteringPolynomial p;
    p.add(MonomialKey{z, t, qhalf}, c);
    return p;
  }

  void add(const MonomialKey& key, const mpz_class& c);
  const Terms& terms() const { return terms_; }
  std::vector<Monomial> monomials() const;
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  mpz_class coefficient(const MonomialKey& key) const;
  mpz_class constant_term() const { return coefficient(MonomialKey{}); }

  bool is_classical() const;  // every qhalf is 0
  bool is_z_free() const;     // every zexp is 0

  ScatteringPolynomial& operator+=(const ScatteringPolynomial& o);
  ScatteringPolynomial& operator-=(const ScatteringPolynomial& o);
  ScatteringPolynomial operator+(const ScatteringPolynomial& o) const;
  ScatteringPolynomial operator-(const ScatteringPolynomial& o) const;
  ScatteringPolynomial operator-() const;
  bool operator==(const ScatteringPolynomial& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

Monomial quantum_monomial_product(const Monomial& m1, const Monomial& m2);
Monomial classical_monomial_product(const Monomial& m1, const Monomial& m2);

// Classical mode rejects inputs carrying q-powers.
ScatteringPolynomial poly_mul(const ScatteringPolynomial& p1, const ScatteringPolynomial& p2,
                              Product mode);

// Drops every term whose t-class has l1-norm above bound.
ScatteringPolynomial truncate_l1(const ScatteringPolynomial& p, int bound);

// p^e. Negative e expands (1+u)^e as a series truncated at l1-norm bound; p must then have
// constant term exactly 1 and u = p - 1 must not mix signs within any class coordinate, so
// that l1-norm is additive on powers of u. `truncated` is set when terms were discarded.
ScatteringPolynomial poly_pow_truncated(const ScatteringPolynomial& p, int e, int bound,
                                        bool* truncated = nullptr);

}  // namespace mirror
