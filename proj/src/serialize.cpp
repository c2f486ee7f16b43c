#include "mirror/serialize.hpp"

#include "mirror/error.hpp"
#include "mirror/format.hpp"

namespace mirror {

namespace {

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  throw MirrorError(ErrorKind::invalid_input, "expected an integer, got " + j.dump());
}

int small_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw MirrorError(ErrorKind::invalid_input, std::string("expected integer ") + what);
  return j.get<int>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw MirrorError(ErrorKind::invalid_input, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

json rational_to_json(const mpq_class& q) {
  return {{"num", integer_to_json(q.get_num())}, {"den", integer_to_json(q.get_den())}};
}

mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer() || j.is_string()) return mpq_class(integer_from_json(j));
  const mpz_class num = integer_from_json(field(j, "num"));
  const mpz_class den = integer_from_json(field(j, "den"));
  if (den == 0) throw MirrorError(ErrorKind::invalid_input, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

json point_to_json(const Point& p) { return {{"x", rational_to_json(p.x)}, {"y", rational_to_json(p.y)}}; }

Point point_from_json(const json& j) {
  return {rational_from_json(field(j, "x")), rational_from_json(field(j, "y"))};
}

json vector_to_json(LatticeVector v) { return json::array({v.a, v.b}); }

LatticeVector vector_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw MirrorError(ErrorKind::invalid_input, "expected a pair of integers, got " + j.dump());
  return {small_int(j[0], "vector entry"), small_int(j[1], "vector entry")};
}

json class_to_json(const CurveClass& c) {
  json out = json::object();
  for (std::size_t i = 0; i < kClassRank; ++i)
    if (c.c[i] != 0) out[std::string(class_names()[i])] = c.c[i];
  return out;
}

CurveClass class_from_json(const json& j) {
  if (j.is_string()) {
    CurveClass c;
    c.c[class_index(j.get<std::string>())] = 1;
    return c;
  }
  if (!j.is_object()) throw MirrorError(ErrorKind::invalid_input, "expected a curve class object");
  CurveClass c;
  for (const auto& [name, v] : j.items()) c.c[class_index(name)] = small_int(v, "class coefficient");
  return c;
}

json polynomial_to_json(const ScatteringPolynomial& p) {
  json out = json::array();
  for (const auto& [k, c] : p.terms())
    out.push_back({{"coeff", integer_to_json(c)},
                   {"qhalf", k.qhalf},
                   {"t", class_to_json(k.t)},
                   {"z", vector_to_json(k.z)}});
  return out;
}

ScatteringPolynomial polynomial_from_json(const json& j) {
  if (!j.is_array()) throw MirrorError(ErrorKind::invalid_input, "expected a term array");
  ScatteringPolynomial p;
  for (const auto& t : j) {
    const int qhalf = t.contains("qhalf") ? small_int(t["qhalf"], "qhalf") : 0;
    const CurveClass c = t.contains("t") ? class_from_json(t["t"]) : CurveClass{};
    const LatticeVector z = t.contains("z") ? vector_from_json(t["z"]) : LatticeVector{};
    p.add({z, c, qhalf}, integer_from_json(field(t, "coeff")));
  }
  return p;
}

json model_to_json(const ToricModel& m) {
  json fan = json::array();
  for (const auto& f : m.fan) fan.push_back({{"dir", vector_to_json(f.dir)}, {"kink", class_to_json(f.kink)}});
  json blowups = json::array();
  for (const auto& b : m.blowups)
    blowups.push_back({{"dir", vector_to_json(b.dir)}, {"class", class_names()[b.exceptional]}});
  return {{"classes", m.classes}, {"fan", fan}, {"blowups", blowups}};
}

ToricModel model_from_json(const json& j) {
  ToricModel m;
  if (j.contains("classes")) m.classes = j["classes"].get<std::vector<std::string>>();
  for (const auto& f : field(j, "fan"))
    m.fan.push_back({vector_from_json(field(f, "dir")),
                     f.contains("kink") ? class_from_json(f["kink"]) : CurveClass{}});
  if (j.contains("blowups"))
    for (const auto& b : j["blowups"])
      m.blowups.push_back({vector_from_json(field(b, "dir")),
                           class_index(field(b, "class").get<std::string>())});
  m.validate();
  return m;
}

json structure_to_json(const WallStructure& ws) {
  json fan = json::array();
  for (const auto& f : ws.fan) fan.push_back({{"dir", vector_to_json(f.dir)}, {"kink", class_to_json(f.kink)}});
  json walls = json::array();
  for (const auto& w : ws.walls) {
    walls.push_back({{"base", point_to_json(w.support.base)},
                     {"dir", vector_to_json(w.support.dir)},
                     {"length", w.support.length ? rational_to_json(*w.support.length) : json()},
                     {"vwall", vector_to_json(w.vwall)},
                     {"func", polynomial_to_json(w.func)},
                     {"text", to_text(w.func)}});
  }
  return {{"fan", fan}, {"walls", walls}};
}

WallStructure structure_from_json(const json& j) {
  WallStructure ws;
  for (const auto& f : field(j, "fan"))
    ws.fan.push_back({vector_from_json(field(f, "dir")),
                      f.contains("kink") ? class_from_json(f["kink"]) : CurveClass{}});
  for (const auto& w : field(j, "walls")) {
    std::optional<mpq_class> len;
    if (w.contains("length") && !w["length"].is_null()) len = rational_from_json(w["length"]);
    ws.walls.push_back({Ray{point_from_json(field(w, "base")), vector_from_json(field(w, "dir")), len},
                        polynomial_from_json(field(w, "func")), vector_from_json(field(w, "vwall"))});
  }
  ws.validate();
  return ws;
}

json preset_to_json(const Preset& p) {
  json out = model_to_json(p.model);
  json offsets = json::array();
  for (const auto& [i, by] : p.offsets) offsets.push_back({{"wall", i}, {"by", point_to_json(by)}});
  out["offsets"] = offsets;
  out["endpoint"] = point_to_json(p.endpoint);
  return out;
}

Preset preset_from_json(const json& j) {
  Preset p;
  p.name = j.value("name", "model");
  p.model = model_from_json(j);
  if (j.contains("offsets"))
    for (const auto& o : j["offsets"]) {
      const int i = small_int(field(o, "wall"), "wall index");
      if (i < 0 || static_cast<std::size_t>(i) >= p.model.blowups.size())
        throw MirrorError(ErrorKind::invalid_input, "offset for unknown wall " + std::to_string(i));
      p.offsets[i] = point_from_json(field(o, "by"));
    }
  else
    p.offsets = default_offsets(build_initial_walls(p.model));
  if (j.contains("endpoint")) p.endpoint = point_from_json(j["endpoint"]);
  return p;
}

json audit_to_json(const std::vector<ConsistencyReport>& reports) {
  json out = json::array();
  for (const auto& r : reports)
    out.push_back({{"point", point_to_json(r.point)}, {"spokes", r.spokes}, {"consistent", r.consistent}});
  return out;
}

json theta_to_json(const ThetaFunction& th) {
  return {{"index", th.index},
          {"direction", vector_to_json(th.direction)},
          {"local_expr", polynomial_to_json(th.local_expr)},
          {"text", to_text(th.local_expr)},
          {"wall_crossings", th.wall_crossings()},
          {"exact", th.exact}};
}

json relation_to_json(const Relation& r) {
  json coeffs = json::object();
  for (const auto& [k, c] : r.coeffs) coeffs[std::to_string(k)] = polynomial_to_json(c);
  return {{"lhs", json::array({r.lhs.first, r.lhs.second})},
          {"kind", r.kind == Relation::Kind::product ? "product" : "commutator"},
          {"mode", r.mode == Product::classical ? "classical" : "quantum"},
          {"constant", polynomial_to_json(r.constant)},
          {"coeffs", coeffs},
          {"text", to_text(r)}};
}

json words_to_json(const WordPolynomial& w) {
  json out = json::array();
  for (const auto& [word, c] : w) out.push_back({{"word", word}, {"coeff", polynomial_to_json(c)}});
  return out;
}

}  // namespace mirror
