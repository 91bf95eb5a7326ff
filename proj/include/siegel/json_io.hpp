#pragma once

#include <json.hpp>

#include "siegel/characters.hpp"

namespace siegel {

using Json = nlohmann::json;

// Exact values travel as strings ("-3/7") so nothing is rounded through doubles.
std::string rat_to_string(const Rat& q);
Rat rat_from_json(const Json& j);

// {"p", "precision", "valuation", "unit", "value"}; value is the residue in [0, p^N)
// when the valuation is >= 0, otherwise "unit/p^-v" as a rational.
Json padic_to_json(const PAdic& x);
// Accepts the object above, or {"p", "precision", "value"} with value an integer or rational.
PAdic padic_from_json(const Json& j);
PAdic padic_from_json(const Json& j, long p, long N);

Json cyc_to_json(const CycNumber& z);
CycNumber cyc_from_json(const Json& j);

// Characters: {"modulus", "images"} (exponents on local_generators), {"kronecker": D0},
// {"omega": e, "p": p}, {"trivial": M}, {"table": [...], "modulus", "order"},
// or {"product": [char, ...]}.
Json char_to_json(const DirichletChar& c);
DirichletChar char_from_json(const Json& j);

Json int_matrix_to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);

// Throws ParseError on unreadable or malformed files.
Json read_json_file(const std::string& path);

}  // namespace siegel
