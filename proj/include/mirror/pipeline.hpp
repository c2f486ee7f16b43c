#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mirror/presets.hpp"
#include "mirror/quantum.hpp"
#include "mirror/scattering.hpp"
#include "mirror/serialize.hpp"
#include "mirror/theta.hpp"

namespace mirror {

enum class Mode { classical, quantum, both };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct PipelineConfig {
  Preset preset;
  int bound = 20;
  Mode mode = Mode::both;
};

struct Structures {
  WallStructure initial;
  WallStructure perturbed;
  WallStructure completed;
};

Structures build_structures(const Preset& preset, int bound);

// A product or commutator that has no expression in the basis, kept as its raw expansion.
struct Unexpressed {
  std::pair<int, int> lhs;
  Relation::Kind kind;
  Product mode;
  ScatteringPolynomial value;
};

struct PipelineResult {
  Structures structures;
  std::vector<ConsistencyReport> audit;
  std::vector<ThetaFunction> thetas;
  std::vector<Relation> classical;
  std::vector<Relation> quantum;
  std::vector<Unexpressed> unexpressed;
  std::optional<WordPolynomial> cubic;
  std::optional<WordPolynomial> quantum_cubic;
  std::vector<std::string> failures;  // audit or verification failures; empty means success

  bool ok() const { return failures.empty(); }
};

// Runs completion, audit, theta transport and relation finding. Module errors propagate except
// for products and commutators outside the quadric pairs, which are recorded as unexpressed.
PipelineResult run_pipeline(const PipelineConfig& cfg);

json report_to_json(const PipelineConfig& cfg, const PipelineResult& r);
std::string report_to_text(const PipelineConfig& cfg, const PipelineResult& r);

json error_to_json(const std::string& kind, const std::string& message);

}  // namespace mirror
