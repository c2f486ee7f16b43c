#include "mirror/theta.hpp"

#include <algorithm>
#include <exception>
#include <set>

#include "mirror/error.hpp"
#include "mirror/format.hpp"
#include "mirror/quantum.hpp"

namespace mirror {

namespace {

using Weight = std::array<long, kClassRank + 2>;

Weight key_vector(const MonomialKey& k) {
  Weight v{};
  for (std::size_t i = 0; i < kClassRank; ++i) v[i] = k.t.c[i];
  v[kClassRank] = k.z.a;
  v[kClassRank + 1] = k.z.b;
  return v;
}

long weigh(const Weight& w, const MonomialKey& k) {
  const Weight v = key_vector(k);
  long s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i];
  return s;
}

const MonomialKey& seed_key(const BasisElement& b) {
  for (const auto& [k, c] : b.expr.terms())
    if (k.z == b.direction) {
      if (c != 1 && c != -1) break;
      return k;
    }
  throw MirrorError(ErrorKind::not_expressible,
                    "basis element " + std::to_string(b.index) + " has no unit seed term z^" +
                        to_string(b.direction));
}

const BasisElement& element(const std::vector<BasisElement>& basis, int index) {
  for (const auto& b : basis)
    if (b.index == index) return b;
  throw MirrorError(ErrorKind::invalid_input, "no theta function with index " + std::to_string(index));
}

constexpr int kMaxReductionSteps = 10000;
constexpr int kMaxPerceptronRounds = 100000;

}  // namespace

std::size_t ThetaFunction::wall_crossings() const {
  return std::count_if(events.begin(), events.end(),
                       [](const CrossingEvent& e) { return e.kind == CrossingEvent::Kind::wall; });
}

ThetaFunction transport_theta(const WallStructure& ws, LatticeVector dir, const Point& endpoint,
                              int bound) {
  ThetaFunction th;
  th.direction = dir;
  th.local_expr = ScatteringPolynomial::term(1, {}, dir);
  th.events = path_crossings(ws, dir, endpoint);
  for (const auto& ev : th.events) {
    if (ev.kind == CrossingEvent::Kind::kink) {
      th.local_expr = cross_kink(th.local_expr, ws.fan[ev.index], ev.travel);
    } else {
      bool truncated = false;
      th.local_expr = cross_wall(th.local_expr, ws.walls[ev.index], ev.travel, bound, &truncated);
      th.exact = th.exact && !truncated;
    }
  }
  return th;
}

std::vector<ThetaFunction> compute_theta_basis_serial(const WallStructure& ws,
                                                      const Point& endpoint, int bound) {
  std::vector<ThetaFunction> out;
  for (std::size_t i = 0; i < ws.fan.size(); ++i) {
    out.push_back(transport_theta(ws, ws.fan[i].dir, endpoint, bound));
    out.back().index = static_cast<int>(i) + 1;
  }
  return out;
}

std::vector<ThetaFunction> compute_theta_basis(const WallStructure& ws, const Point& endpoint,
                                               int bound) {
  std::vector<ThetaFunction> out(ws.fan.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(ws.fan.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = transport_theta(ws, ws.fan[i].dir, endpoint, bound);
      out[i].index = static_cast<int>(i) + 1;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<BasisElement> as_basis(const std::vector<ThetaFunction>& thetas) {
  std::vector<BasisElement> out;
  for (const auto& th : thetas) out.push_back({th.index, th.direction, th.local_expr});
  return out;
}

std::optional<Weight> seed_weight(const std::vector<BasisElement>& basis) {
  std::vector<Weight> diffs;
  for (const auto& b : basis) {
    const MonomialKey& s = seed_key(b);
    for (const auto& [k, c] : b.expr.terms()) {
      if (k == s) continue;
      Weight d = key_vector(k);
      const Weight e = key_vector(s);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= e[i];
      diffs.push_back(d);
    }
  }
  // Perceptron: terminates exactly when a strictly separating weight exists.
  Weight w{};
  for (int round = 0; round < kMaxPerceptronRounds; ++round) {
    bool clean = true;
    for (const auto& d : diffs) {
      long s = 0;
      for (std::size_t i = 0; i < d.size(); ++i) s += w[i] * d[i];
      if (s > 0) continue;
      for (std::size_t i = 0; i < d.size(); ++i) w[i] += d[i];
      clean = false;
    }
    if (clean) return w;
  }
  return std::nullopt;
}

std::pair<ScatteringPolynomial, std::map<int, ScatteringPolynomial>> express_in_basis(
    const ScatteringPolynomial& target, const std::vector<BasisElement>& basis, Product mode) {
  const auto w = seed_weight(basis);
  if (!w)
    throw MirrorError(ErrorKind::not_expressible,
                      "no term order makes every seed term extremal in its theta function");
  ScatteringPolynomial rest = target;
  std::map<int, ScatteringPolynomial> coeffs;
  for (int step = 0;; ++step) {
    const MonomialKey* lightest = nullptr;
    mpz_class coeff;
    for (const auto& [k, c] : rest.terms()) {
      if (k.z.is_zero()) continue;
      if (!lightest || weigh(*w, k) < weigh(*w, *lightest)) {
        lightest = &k;
        coeff = c;
      }
    }
    if (!lightest) break;
    const MonomialKey key = *lightest;
    auto match = std::find_if(basis.begin(), basis.end(),
                              [&](const BasisElement& b) { return b.direction == key.z; });
    if (match == basis.end() || step >= kMaxReductionSteps) {
      ScatteringPolynomial surviving;
      for (const auto& [k, c] : rest.terms())
        if (!k.z.is_zero()) surviving.add(k, c);
      throw MirrorError(ErrorKind::not_expressible,
                        "not expressible in theta basis; remainder " + to_text(surviving));
    }
    const MonomialKey& s = seed_key(*match);
    const mpz_class c = coeff / match->expr.coefficient(s);
    const auto factor = ScatteringPolynomial::term(c, key.t - s.t, {}, key.qhalf - s.qhalf);
    coeffs[match->index] += factor;
    rest -= poly_mul(factor, match->expr, mode);
  }
  for (auto it = coeffs.begin(); it != coeffs.end();)
    it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
  return {rest, coeffs};
}

ScatteringPolynomial expand_relation(const Relation& r, const std::vector<BasisElement>& basis,
                                     Product mode) {
  ScatteringPolynomial out = r.constant;
  for (const auto& [k, c] : r.coeffs) out += poly_mul(c, element(basis, k).expr, mode);
  return out;
}

Relation find_relation(const std::vector<ThetaFunction>& thetas, int i, int j, Product mode) {
  const auto basis = as_basis(thetas);
  if (mode == Product::quantum)
    for (const auto& th : thetas)
      if (!th.exact)
        throw MirrorError(ErrorKind::truncated_input,
                          "theta " + std::to_string(th.index) + " was truncated; cannot quantize");
  const auto product = poly_mul(element(basis, i).expr, element(basis, j).expr, mode);
  auto [constant, coeffs] = express_in_basis(product, basis, mode);
  Relation r{{i, j}, Relation::Kind::product, mode, constant, coeffs};
  if (!(expand_relation(r, basis, mode) == product))
    throw MirrorError(ErrorKind::not_expressible, "relation failed re-expansion");
  return r;
}

namespace {

WordPolynomial& add_word(WordPolynomial& w, std::vector<int> word, const ScatteringPolynomial& c,
                         Product mode) {
  if (mode == Product::classical) std::sort(word.begin(), word.end());
  auto& slot = w[word];
  slot += c;
  if (slot.is_zero()) w.erase(word);
  return w;
}

// The relation as "product - constant - sum c_k theta_k = 0".
WordPolynomial as_words(const Relation& r) {
  WordPolynomial w;
  add_word(w, {r.lhs.first, r.lhs.second}, ScatteringPolynomial::one(), r.mode);
  add_word(w, {}, -r.constant, r.mode);
  for (const auto& [k, c] : r.coeffs) add_word(w, {k}, -c, r.mode);
  return w;
}

bool mentions(const std::pair<int, int>& lhs, int k) { return lhs.first == k || lhs.second == k; }

}  // namespace

WordPolynomial eliminate_theta(const Relation& solve_from, const Relation& substitute_into,
                               int eliminated) {
  const Product mode = solve_from.mode;
  if (substitute_into.mode != mode)
    throw MirrorError(ErrorKind::mode_mismatch, "relations come from different products");
  auto it = solve_from.coeffs.find(eliminated);
  if (it == solve_from.coeffs.end() || mentions(solve_from.lhs, eliminated))
    throw MirrorError(ErrorKind::invalid_input,
                      "theta " + std::to_string(eliminated) + " does not appear linearly");
  const ScatteringPolynomial& b = it->second;
  if (b.size() != 1 || !b.is_z_free() || (b.terms().begin()->second != 1 &&
                                          b.terms().begin()->second != -1))
    throw MirrorError(ErrorKind::invalid_input, "coefficient of theta " +
                                                    std::to_string(eliminated) +
                                                    " is not an invertible monomial: " + to_text(b));

  // b * theta_e = product - constant - sum_{k != e} c_k theta_k
  WordPolynomial b_theta = as_words(solve_from);
  add_word(b_theta, {eliminated}, b, mode);

  WordPolynomial out;
  for (const auto& [word, c] : as_words(substitute_into)) {
    const auto n = std::count(word.begin(), word.end(), eliminated);
    if (n == 0) {
      add_word(out, word, poly_mul(c, b, mode), mode);
      continue;
    }
    if (n > 1)
      throw MirrorError(ErrorKind::invalid_input, "eliminated theta appears nonlinearly");
    const auto pos = std::find(word.begin(), word.end(), eliminated) - word.begin();
    for (const auto& [sub, sc] : b_theta) {
      std::vector<int> w(word.begin(), word.begin() + pos);
      w.insert(w.end(), sub.begin(), sub.end());
      w.insert(w.end(), word.begin() + pos + 1, word.end());
      add_word(out, w, poly_mul(c, sc, mode), mode);
    }
  }
  if (out.empty())
    throw MirrorError(ErrorKind::degenerate_structure, "elimination produced the zero identity");
  return out;
}

WordPolynomial eliminate_theta4(const std::vector<Relation>& quadrics) {
  const Relation* from = nullptr;
  const Relation* into = nullptr;
  for (const auto& r : quadrics) {
    if (r.kind != Relation::Kind::product) continue;
    if (!mentions(r.lhs, 4) && r.coeffs.count(4)) from = from ? from : &r;
    else if (mentions(r.lhs, 4) && !r.coeffs.count(4)) into = into ? into : &r;
  }
  if (!from || !into)
    throw MirrorError(ErrorKind::invalid_input,
                      "theta 4 must appear linearly in one quadric and in the product of another");
  return eliminate_theta(*from, *into, 4);
}

ScatteringPolynomial evaluate_words(const WordPolynomial& w, const std::vector<BasisElement>& basis,
                                    Product mode) {
  ScatteringPolynomial out;
  for (const auto& [word, c] : w) {
    ScatteringPolynomial p = c;
    for (int k : word) p = poly_mul(p, element(basis, k).expr, mode);
    out += p;
  }
  return out;
}

WordPolynomial specialize_words(const WordPolynomial& w) {
  WordPolynomial out;
  for (const auto& [word, c] : w) add_word(out, word, specialize_classical(c), Product::classical);
  return out;
}

}  // namespace mirror

namespace mirror {

std::vector<ChamberSample> sample_exact_chambers(const WallStructure& ws, int bound, int den,
                                                 int extent) {
  std::vector<ChamberSample> out;
  std::set<std::vector<ScatteringPolynomial::Terms>> seen;
  // Odd multiples of 1/(2 den) plus a small irregular shift stay off walls with small slopes.
  const mpq_class jx(1, 97), jy(1, 89);
  const int n = den * extent;
  for (int i = -n; i < n; ++i) {
    for (int j = -n; j < n; ++j) {
      const Point p{mpq_class(2 * i + 1, 2 * den) + jx, mpq_class(2 * j + 1, 2 * den) + jy};
      std::vector<ThetaFunction> thetas;
      try {
        thetas = compute_theta_basis(ws, p, bound);
      } catch (const MirrorError& e) {
        if (e.kind() == ErrorKind::degenerate_endpoint) continue;
        throw;
      }
      if (!std::all_of(thetas.begin(), thetas.end(), [](const auto& t) { return t.exact; }))
        continue;
      std::vector<ScatteringPolynomial::Terms> key;
      for (const auto& t : thetas) key.push_back(t.local_expr.terms());
      if (seen.insert(key).second) out.push_back({p, std::move(thetas)});
    }
  }
  return out;
}

}  // namespace mirror
