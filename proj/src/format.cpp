#include "mirror/format.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <vector>

namespace mirror {

namespace {

std::string exponent(int e) { return e == 1 ? "" : "^{" + std::to_string(e) + "}"; }

std::string q_power(int qhalf) {
  if (qhalf == 0) return "";
  if (qhalf == 2) return "q";
  if (qhalf % 2 == 0) return "q^{" + std::to_string(qhalf / 2) + "}";
  return "q^{" + std::to_string(qhalf) + "/2}";
}

std::string z_power(LatticeVector z, ZStyle style) {
  if (z.is_zero()) return "";
  if (style == ZStyle::quantum) return "ẑ^{(" + std::to_string(z.a) + "," + std::to_string(z.b) + ")}";
  std::string out;
  if (z.a != 0) out += "x" + exponent(z.a);
  if (z.b != 0) out += std::string(out.empty() ? "" : " ") + "y" + exponent(z.b);
  return out;
}

}  // namespace

std::string to_text(const CurveClass& beta) {
  std::string out;
  const auto& names = class_names();
  for (std::size_t i = 0; i < kClassRank; ++i) {
    const int c = beta.c[i];
    if (c == 0) continue;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    const int m = c < 0 ? -c : c;
    if (m != 1) out += std::to_string(m);
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

std::string to_text(const ScatteringPolynomial& p, ZStyle style) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    std::vector<std::string> factors;
    if (auto q = q_power(k.qhalf); !q.empty()) factors.push_back(q);
    if (!k.t.is_zero()) factors.push_back("t^{" + to_text(k.t) + "}");
    if (auto z = z_power(k.z, style); !z.empty()) factors.push_back(z);

    const mpz_class mag = abs(c);
    if (first) os << (c < 0 ? "-" : "");
    else os << (c < 0 ? " - " : " + ");
    first = false;
    if (mag != 1 || factors.empty()) {
      os << mag.get_str();
      if (!factors.empty()) os << " ";
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? " " : "") << factors[i];
  }
  return os.str();
}

namespace {

std::string theta_name(int k, Product mode) {
  return std::string(mode == Product::quantum ? "ϑ̂" : "ϑ") + std::to_string(k);
}

std::string word_text(const std::vector<int>& word, Product mode) {
  std::string out;
  for (int k : word) out += (out.empty() ? "" : " ") + theta_name(k, mode);
  return out;
}

// Joins "a", "-b", ... as "a - b".
std::string join_signed(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    out += parts[i].front() == '-' ? " - " + parts[i].substr(1) : " + " + parts[i];
  return out;
}

// p = (q^{k/2} - q^{-k/2}) r with q-free r, when p has that shape.
std::optional<std::pair<int, ScatteringPolynomial>> q_difference(const ScatteringPolynomial& p) {
  if (p.is_zero()) return std::nullopt;
  const int k = std::abs(p.terms().begin()->first.qhalf);
  if (k == 0) return std::nullopt;
  ScatteringPolynomial r;
  for (const auto& [key, c] : p.terms()) {
    if (key.qhalf == k) r.add({key.z, key.t, 0}, c);
    else if (key.qhalf != -k) return std::nullopt;
  }
  ScatteringPolynomial back;
  for (const auto& [key, c] : r.terms()) {
    back.add({key.z, key.t, k}, c);
    back.add({key.z, key.t, -k}, -c);
  }
  if (!(back == p)) return std::nullopt;
  return std::make_pair(k, r);
}

std::string q_difference_text(int k) {
  if (k == 1) return "(q^{1/2} - q^{-1/2})";
  if (k == 2) return "(q - q^{-1})";
  if (k % 2 == 0) return "(q^{" + std::to_string(k / 2) + "} - q^{-" + std::to_string(k / 2) + "})";
  return "(q^{" + std::to_string(k) + "/2} - q^{-" + std::to_string(k) + "/2})";
}

std::string factored_text(const ScatteringPolynomial& p) {
  if (auto f = q_difference(p)) {
    const std::string inner = to_text(f->second);
    if (inner == "1") return q_difference_text(f->first);
    return q_difference_text(f->first) + (f->second.size() == 1 ? " " + inner : " (" + inner + ")");
  }
  return to_text(p);
}

std::string scaled_text(const ScatteringPolynomial& c, const std::string& what) {
  if (q_difference(c)) return factored_text(c) + " " + what;
  if (c.size() == 1) {
    const std::string t = to_text(c);
    if (t == "1") return what;
    if (t == "-1") return "-" + what;
    return t + " " + what;
  }
  return "(" + to_text(c) + ") " + what;
}

}  // namespace

std::string to_text(const Relation& r) {
  const auto [i, j] = r.lhs;
  std::string lhs;
  if (r.kind == Relation::Kind::product) {
    lhs = theta_name(i, r.mode) + " " + theta_name(j, r.mode);
  } else {
    lhs = "q^{1/2} " + theta_name(i, r.mode) + " " + theta_name(j, r.mode) + " - q^{-1/2} " +
          theta_name(j, r.mode) + " " + theta_name(i, r.mode);
  }
  std::vector<std::string> parts;
  if (!r.constant.is_zero()) parts.push_back(factored_text(r.constant));
  for (const auto& [k, c] : r.coeffs) parts.push_back(scaled_text(c, theta_name(k, r.mode)));
  return lhs + " = " + join_signed(parts);
}

std::string to_text(const WordPolynomial& w, Product mode) {
  std::vector<std::string> parts;
  // Longest words first, as polynomials are usually written.
  std::vector<const WordPolynomial::value_type*> order;
  for (const auto& e : w) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->first.size() > b->first.size(); });
  for (const auto* e : order)
    parts.push_back(e->first.empty() ? (e->second.size() == 1 ? to_text(e->second)
                                                              : "(" + to_text(e->second) + ")")
                                     : scaled_text(e->second, word_text(e->first, mode)));
  return join_signed(parts) + " = 0";
}

}  // namespace mirror
