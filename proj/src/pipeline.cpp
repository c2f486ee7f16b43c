#include "mirror/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "mirror/error.hpp"
#include "mirror/format.hpp"

namespace mirror {

namespace {

bool is_quadric(std::pair<int, int> lhs) {
  return std::find(kQuadricPairs.begin(), kQuadricPairs.end(), lhs) != kQuadricPairs.end();
}

bool has_index(const std::vector<ThetaFunction>& thetas, std::pair<int, int> lhs) {
  const int n = static_cast<int>(thetas.size());
  return lhs.first >= 1 && lhs.first <= n && lhs.second >= 1 && lhs.second <= n;
}

std::string pair_text(std::pair<int, int> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

// Elimination applies only when theta 4 enters the quadrics linearly.
std::optional<WordPolynomial> try_eliminate(const std::vector<Relation>& rels) {
  std::vector<Relation> quadrics;
  for (const auto& r : rels)
    if (r.kind == Relation::Kind::product && is_quadric(r.lhs)) quadrics.push_back(r);
  try {
    return eliminate_theta4(quadrics);
  } catch (const MirrorError& e) {
    if (e.kind() == ErrorKind::invalid_input) return std::nullopt;
    throw;
  }
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "classical") return Mode::classical;
  if (s == "quantum") return Mode::quantum;
  if (s == "both") return Mode::both;
  throw MirrorError(ErrorKind::invalid_input, "unknown mode '" + s + "'");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::classical: return "classical";
    case Mode::quantum: return "quantum";
    case Mode::both: return "both";
  }
  return "both";
}

Structures build_structures(const Preset& preset, int bound) {
  if (bound < 1) throw MirrorError(ErrorKind::invalid_input, "bound must be at least 1");
  Structures s;
  s.initial = build_initial_walls(preset.model);
  s.perturbed = perturb_walls(s.initial, preset.offsets);
  s.completed = complete_to_consistency(s.perturbed, bound);
  return s;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult r;
  r.structures = build_structures(cfg.preset, cfg.bound);
  r.audit = audit_consistency(r.structures.completed, cfg.bound);
  for (const auto& rep : r.audit)
    if (!rep.consistent) r.failures.push_back("inconsistent at " + to_string(rep.point));

  r.thetas = compute_theta_basis(r.structures.completed, cfg.preset.endpoint, cfg.bound);
  const int n = static_cast<int>(r.thetas.size());

  if (cfg.mode != Mode::quantum) {
    const auto basis = as_basis(r.thetas);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        try {
          r.classical.push_back(find_relation(r.thetas, i, j, Product::classical));
        } catch (const MirrorError& e) {
          if (e.kind() != ErrorKind::not_expressible || is_quadric({i, j})) throw;
          r.unexpressed.push_back({{i, j}, Relation::Kind::product, Product::classical,
                                   poly_mul(basis[i - 1].expr, basis[j - 1].expr, Product::classical)});
        }
      }
    }
    r.cubic = try_eliminate(r.classical);
    if (r.cubic && !evaluate_words(*r.cubic, basis, Product::classical).is_zero())
      r.failures.push_back("classical cubic does not vanish on the theta functions");
  }

  if (cfg.mode != Mode::classical) {
    const auto qthetas = quantize(r.thetas);
    const auto qbasis = as_basis(qthetas);
    for (auto lhs : kQuadricPairs)
      if (has_index(r.thetas, lhs))
        r.quantum.push_back(find_quantum_product(qthetas, lhs.first, lhs.second));
    for (auto lhs : kCommutatorPairs) {
      if (!has_index(r.thetas, lhs)) continue;
      try {
        r.quantum.push_back(find_commutator_relation(qthetas, lhs.first, lhs.second));
      } catch (const MirrorError& e) {
        if (e.kind() != ErrorKind::not_expressible) throw;
        r.unexpressed.push_back({lhs, Relation::Kind::commutator, Product::quantum,
                                 q_commutator(qthetas[lhs.first - 1], qthetas[lhs.second - 1])});
      }
    }
    for (const auto& rel : r.quantum)
      if (rel.kind == Relation::Kind::commutator && !specialize_classical(expand_relation(rel, qbasis, Product::quantum)).is_zero())
        r.failures.push_back("commutator " + pair_text(rel.lhs) + " does not vanish at q = 1");
    r.quantum_cubic = try_eliminate(r.quantum);
    if (r.quantum_cubic) {
      if (!evaluate_words(*r.quantum_cubic, qbasis, Product::quantum).is_zero())
        r.failures.push_back("quantum cubic does not vanish on the quantum theta functions");
      if (r.cubic && !(specialize_words(*r.quantum_cubic) == *r.cubic))
        r.failures.push_back("quantum cubic does not specialize to the classical cubic");
    }
  }
  return r;
}

json report_to_json(const PipelineConfig& cfg, const PipelineResult& r) {
  json out;
  out["preset"] = cfg.preset.name;
  out["bound"] = cfg.bound;
  out["mode"] = to_string(cfg.mode);
  out["model"] = model_to_json(cfg.preset.model);
  out["endpoint"] = point_to_json(cfg.preset.endpoint);
  out["structure"] = structure_to_json(r.structures.completed);
  out["audit"] = audit_to_json(r.audit);
  json thetas = json::array();
  for (const auto& th : r.thetas) thetas.push_back(theta_to_json(th));
  out["thetas"] = thetas;
  json classical = json::array();
  for (const auto& rel : r.classical) classical.push_back(relation_to_json(rel));
  out["classical_relations"] = classical;
  json quantum = json::array();
  for (const auto& rel : r.quantum) quantum.push_back(relation_to_json(rel));
  out["quantum_relations"] = quantum;
  json unexpressed = json::array();
  for (const auto& u : r.unexpressed)
    unexpressed.push_back({{"lhs", json::array({u.lhs.first, u.lhs.second})},
                           {"kind", u.kind == Relation::Kind::product ? "product" : "commutator"},
                           {"mode", u.mode == Product::classical ? "classical" : "quantum"},
                           {"value", polynomial_to_json(u.value)},
                           {"text", to_text(u.value, u.mode == Product::quantum ? ZStyle::quantum
                                                                                 : ZStyle::xy)}});
  out["unexpressed"] = unexpressed;
  if (r.cubic)
    out["cubic"] = {{"words", words_to_json(*r.cubic)}, {"text", to_text(*r.cubic, Product::classical)}};
  if (r.quantum_cubic)
    out["quantum_cubic"] = {{"words", words_to_json(*r.quantum_cubic)},
                            {"text", to_text(*r.quantum_cubic, Product::quantum)}};
  out["failures"] = r.failures;
  out["ok"] = r.ok();
  return out;
}

std::string report_to_text(const PipelineConfig& cfg, const PipelineResult& r) {
  std::ostringstream os;
  os << "# " << cfg.preset.name << ", bound " << cfg.bound << ", P = "
     << to_string(cfg.preset.endpoint) << "\n";
  std::size_t consistent = 0;
  for (const auto& rep : r.audit) consistent += rep.consistent;
  os << "walls: " << r.structures.completed.walls.size() << ", audit: " << consistent << "/"
     << r.audit.size() << " points consistent\n\n";
  for (const auto& th : r.thetas)
    os << "ϑ" << th.index << " = " << to_text(th.local_expr) << (th.exact ? "" : "  [truncated]")
       << "\n";
  if (!r.classical.empty()) os << "\n";
  for (const auto& rel : r.classical) os << to_text(rel) << "\n";
  if (r.cubic) os << "\n" << to_text(*r.cubic, Product::classical) << "\n";
  if (!r.quantum.empty()) os << "\n";
  for (const auto& rel : r.quantum) os << to_text(rel) << "\n";
  if (r.quantum_cubic) os << "\n" << to_text(*r.quantum_cubic, Product::quantum) << "\n";
  if (!r.unexpressed.empty()) os << "\nnot in the theta basis:\n";
  for (const auto& u : r.unexpressed) {
    const bool q = u.mode == Product::quantum;
    const std::string a = (q ? "ϑ̂" : "ϑ") + std::to_string(u.lhs.first);
    const std::string b = (q ? "ϑ̂" : "ϑ") + std::to_string(u.lhs.second);
    os << (u.kind == Relation::Kind::product ? a + " " + b
                                             : "q^{1/2} " + a + " " + b + " - q^{-1/2} " + b + " " + a)
       << " = " << to_text(u.value, q ? ZStyle::quantum : ZStyle::xy) << "\n";
  }
  for (const auto& f : r.failures) os << "FAILURE: " << f << "\n";
  return os.str();
}

json error_to_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace mirror
