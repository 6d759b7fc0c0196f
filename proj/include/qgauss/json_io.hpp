#pragma once

#include <json.hpp>

#include <string>

#include "qgauss/subsum.hpp"
#include "qgauss/weil.hpp"

namespace qgauss {

// A Cyclotomic is serialized as
//   {"conductor": L, "coeffs": [[k, "p/q"], ...], "approx": [re, im]}
// listing the nonzero entries of the canonical form, plus a "human" rendering
// like "2*e(1/8) + e(1/4)". The parser reads conductor and coeffs only, so
// any emitted value re-ingests to an equal Cyclotomic.
nlohmann::json cyclotomic_to_json(const Cyclotomic& z, int digits = 15);
Cyclotomic cyclotomic_from_json(const nlohmann::json& j);

// Integers as JSON numbers when they fit a machine word, else decimal
// strings.
nlohmann::json int_to_json(const Int& z);

// "p/q" or "p"; throws precondition_error("bad_number", ...) on garbage.
Rational parse_rational(const std::string& s);
Int parse_int(const std::string& s);

// Comma-separated lists.
IntVec parse_int_list(const std::string& s);
RatVec parse_rat_list(const std::string& s);

// A matrix argument is either inline JSON (first non-space character '[',
// array of integer arrays) or a path to a file whose first token is n
// followed by n whitespace-separated integer rows.
IntMat parse_matrix_arg(const std::string& arg);

// A subgroup argument is JSON {"c": c, "gens": [[...], ...]}, inline (first
// non-space character '{') or in a file.
SubgroupModC parse_subgroup_arg(const std::string& arg, const Int& c, int n);

// {"orders": Smith invariants, "elements": coordinate tuples in row order,
// "entries": row-major Cyclotomic serializations}.
nlohmann::json weil_matrix_to_json(const WeilMatrix& m, int digits = 15);

}  // namespace qgauss
