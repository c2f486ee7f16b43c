#pragma once

#include <vector>

#include <json.hpp>

#include "mirror/geometry.hpp"
#include "mirror/presets.hpp"
#include "mirror/scattering.hpp"
#include "mirror/theta.hpp"

namespace mirror {

using json = nlohmann::ordered_json;

json rational_to_json(const mpq_class& q);
mpq_class rational_from_json(const json& j);
json point_to_json(const Point& p);
Point point_from_json(const json& j);
json vector_to_json(LatticeVector v);
LatticeVector vector_from_json(const json& j);

// {"H": 1, "E1": -1}; zero components omitted.
json class_to_json(const CurveClass& c);
CurveClass class_from_json(const json& j);

// Array of {"coeff", "qhalf", "t", "z"} in canonical term order.
json polynomial_to_json(const ScatteringPolynomial& p);
ScatteringPolynomial polynomial_from_json(const json& j);

json model_to_json(const ToricModel& m);
ToricModel model_from_json(const json& j);

json structure_to_json(const WallStructure& ws);
WallStructure structure_from_json(const json& j);

// A model document may also carry "offsets" and "endpoint".
json preset_to_json(const Preset& p);
Preset preset_from_json(const json& j);

json audit_to_json(const std::vector<ConsistencyReport>& reports);
json theta_to_json(const ThetaFunction& th);
json relation_to_json(const Relation& r);
json words_to_json(const WordPolynomial& w);

}  // namespace mirror
