#pragma once

#include <string>

#include "mirror/lattice.hpp"
#include "mirror/polynomial.hpp"
#include "mirror/theta.hpp"

namespace mirror {

// Additive notation, e.g. "2H-E1-E2-E3-E4"; "0" for the zero class.
std::string to_text(const CurveClass& beta);

enum class ZStyle {
  xy,       // x^{a} y^{b}
  quantum,  // ẑ^{(a,b)}
};

// e.g. "x^{-1} y^{-1} + t^{E1-E5} x^{-1} y^{-2}"; q-powers print as q^{1/2}, q, q^{-3/2}.
std::string to_text(const ScatteringPolynomial& p, ZStyle style = ZStyle::xy);

// e.g. "ϑ1 ϑ3 = t^{H-E1} + t^{H-E1-E2} ϑ2"; quantum relations use ϑ̂ and ordered products.
std::string to_text(const Relation& r);
// "... = 0" with one summand per word.
std::string to_text(const WordPolynomial& w, Product mode);

}  // namespace mirror
