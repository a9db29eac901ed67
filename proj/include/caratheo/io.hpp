#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "caratheo/momentgeo.hpp"

namespace caratheo {

// Text format: sum of terms "c * x1^a1 x2^a2 ..." with c a rational "p/q".
// Printing uses descending graded-lex term order, omits zero exponents and
// "^1"; the parser additionally accepts implicit coefficients ("x1^2"),
// explicit "^1", and leading minus signs. parse(print(p)) == p exactly.
std::string polyToString(const PolyQ& p);

// variableCount <= 0 infers n from the largest variable index used
PolyQ parsePoly(const std::string& text, int variableCount = 0);

// JSON schema:
//   basis:    {"n": int, "kind": "full"|"hom"|"gapped1d"|"custom",
//              "degree": int?, "exponents": [int]?, "elements": [string]?}
//   measure:  {"atoms": [{"w": "p/q"|number, "x": ["p/q"|number, ...]}],
//              "signed": bool}
//   sequence: {"basis": basis, "values": ["p/q"|number, ...]}
nlohmann::json basisToJson(const Basis& basis);
Basis basisFromJson(const nlohmann::json& j);

nlohmann::json measureToJson(const AtomicMeasure& mu);
AtomicMeasure measureFromJson(const nlohmann::json& j);

nlohmann::json momentSeqToJson(const MomentSeq& s);
MomentSeq momentSeqFromJson(const nlohmann::json& j);

// shorthand specifiers "full:n:d", "hom:n:d", "gapped1d:d1,d2,...";
// anything else is treated as a path to a basis JSON file
Basis parseBasisSpec(const std::string& spec);

}  // namespace caratheo
