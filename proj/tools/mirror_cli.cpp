#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mirror/error.hpp"
#include "mirror/format.hpp"
#include "mirror/pipeline.hpp"
#include "mirror/svg.hpp"

namespace fs = std::filesystem;
using namespace mirror;

namespace {

struct Options {
  std::string preset = "dp4";
  std::string model;
  std::string structure;
  std::string endpoint;
  std::string mode = "both";
  std::string format = "text";
  std::string stage = "completed";
  std::string out_dir;
  int bound = 20;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MirrorError(ErrorKind::invalid_input, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MirrorError(ErrorKind::invalid_input, path + ": " + e.what());
  }
}

Point parse_endpoint(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw MirrorError(ErrorKind::invalid_input, "endpoint must look like \"x,y\"");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

PipelineConfig make_config(const Options& o) {
  PipelineConfig cfg;
  if (!o.model.empty()) {
    cfg.preset = preset_from_json(read_json(o.model));
    cfg.preset.name = fs::path(o.model).stem().string();
  } else {
    cfg.preset = preset_by_name(o.preset);
  }
  if (!o.endpoint.empty()) cfg.preset.endpoint = parse_endpoint(o.endpoint);
  cfg.bound = o.bound;
  cfg.mode = parse_mode(o.mode);
  return cfg;
}

// Writes to out_dir/name when an output directory is set, else to stdout.
void emit(const Options& o, const std::string& name, const std::string& content) {
  if (o.out_dir.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(o.out_dir);
  std::ofstream out(fs::path(o.out_dir) / name, std::ios::binary);
  out << content;
  if (!out) throw MirrorError(ErrorKind::invalid_input, "cannot write " + name);
}

SvgAnnotations theta_notes(const PipelineConfig& cfg, const WallStructure& ws) {
  SvgAnnotations notes;
  notes.title = cfg.preset.name;
  notes.endpoint = cfg.preset.endpoint;
  for (const auto& f : ws.fan) notes.theta_paths.push_back(f.dir);
  return notes;
}

int cmd_compute(const Options& o) {
  const auto cfg = make_config(o);
  const auto result = run_pipeline(cfg);
  const std::string report = report_to_json(cfg, result).dump(2) + "\n";
  const std::string text = report_to_text(cfg, result);
  if (!o.out_dir.empty()) {
    emit(o, "report.json", report);
    emit(o, "equations.txt", text);
    emit(o, "structure.svg", render_svg(result.structures.completed, theta_notes(cfg, result.structures.completed)));
  } else if (o.format == "json") {
    std::cout << report;
  } else if (o.format == "svg") {
    std::cout << render_svg(result.structures.completed, theta_notes(cfg, result.structures.completed));
  } else {
    std::cout << text;
  }
  return result.ok() ? 0 : 1;
}

int cmd_render(const Options& o) {
  const auto cfg = make_config(o);
  const auto s = build_structures(cfg.preset, cfg.bound);
  const WallStructure* ws = &s.completed;
  if (o.stage == "initial") ws = &s.initial;
  else if (o.stage == "perturbed") ws = &s.perturbed;
  else if (o.stage != "completed")
    throw MirrorError(ErrorKind::invalid_input, "unknown stage '" + o.stage + "'");
  SvgAnnotations notes;
  notes.title = cfg.preset.name + " " + o.stage;
  if (ws == &s.completed) notes = theta_notes(cfg, *ws);
  if (o.format == "json") emit(o, "structure.json", structure_to_json(*ws).dump(2) + "\n");
  else emit(o, "structure.svg", render_svg(*ws, notes));
  return 0;
}

int cmd_check(const Options& o) {
  WallStructure ws;
  if (!o.structure.empty()) {
    ws = structure_from_json(read_json(o.structure));
  } else {
    ws = build_structures(make_config(o).preset, o.bound).completed;
  }
  const auto audit = audit_consistency(ws, o.bound);
  bool ok = true;
  for (const auto& r : audit) ok = ok && r.consistent;
  json out = structure_to_json(ws);
  out["audit"] = audit_to_json(audit);
  out["consistent"] = ok;
  if (o.format == "text") {
    std::ostringstream os;
    for (const auto& r : audit)
      os << (r.consistent ? "ok   " : "FAIL ") << to_string(r.point) << " (" << r.spokes << " spokes)\n";
    os << (ok ? "consistent" : "inconsistent") << " at bound " << o.bound << "\n";
    emit(o, "audit.txt", os.str());
  } else {
    emit(o, "audit.json", out.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

int cmd_quantize(const Options& o) {
  auto cfg = make_config(o);
  cfg.mode = Mode::quantum;
  const auto result = run_pipeline(cfg);
  if (o.format == "json") {
    json out;
    json thetas = json::array();
    for (const auto& q : quantize(result.thetas))
      thetas.push_back({{"index", q.index},
                        {"direction", vector_to_json(q.direction)},
                        {"expr", polynomial_to_json(q.expr)},
                        {"text", to_text(q.expr, ZStyle::quantum)}});
    out["quantum_thetas"] = thetas;
    json rels = json::array();
    for (const auto& r : result.quantum) rels.push_back(relation_to_json(r));
    out["quantum_relations"] = rels;
    if (result.quantum_cubic)
      out["quantum_cubic"] = {{"words", words_to_json(*result.quantum_cubic)},
                              {"text", to_text(*result.quantum_cubic, Product::quantum)}};
    out["failures"] = result.failures;
    emit(o, "quantum.json", out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& q : quantize(result.thetas))
      os << "ϑ̂" << q.index << " = " << to_text(q.expr, ZStyle::quantum) << "\n";
    os << "\n";
    for (const auto& r : result.quantum) os << to_text(r) << "\n";
    if (result.quantum_cubic) os << "\n" << to_text(*result.quantum_cubic, Product::quantum) << "\n";
    for (const auto& f : result.failures) os << "FAILURE: " << f << "\n";
    emit(o, "quantum.txt", os.str());
  }
  return result.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wall structures, theta functions and mirror relations from toric models"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--preset", o.preset, "Built-in model: dp4 or empty")->capture_default_str();
    sub->add_option("--model", o.model, "Toric model JSON file (overrides --preset)");
    sub->add_option("--endpoint", o.endpoint, "Theta endpoint as \"x,y\" with rational entries");
    sub->add_option("--bound", o.bound, "Truncation bound on the l1-norm of curve classes")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--mode", o.mode, "classical, quantum or both")
        ->capture_default_str()
        ->check(CLI::IsMember({"classical", "quantum", "both"}));
    sub->add_option("--out-dir", o.out_dir, "Write files here instead of stdout");
    sub->add_option("--format", o.format, "json, text or svg")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "text", "svg"}));
  };

  auto* compute = app.add_subcommand("compute", "Run the full pipeline and report relations");
  add_common(compute);
  auto* render = app.add_subcommand("render", "Draw a wall structure as SVG");
  add_common(render);
  render->add_option("--stage", o.stage, "initial, perturbed or completed")->capture_default_str();
  auto* check = app.add_subcommand("check", "Audit consistency at every wall intersection");
  add_common(check);
  check->add_option("--structure", o.structure, "Wall structure JSON to audit instead of a model");
  auto* quant = app.add_subcommand("quantize", "Quantum theta functions and their relations");
  add_common(quant);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return cmd_compute(o);
    if (render->parsed()) return cmd_render(o);
    if (check->parsed()) return cmd_check(o);
    return cmd_quantize(o);
  } catch (const MirrorError& e) {
    std::cout << error_to_json(std::string(to_string(e.kind())), e.what()).dump(2) << "\n";
  } catch (const std::exception& e) {
    std::cout << error_to_json("internal", e.what()).dump(2) << "\n";
  }
  return 1;
}
