#pragma once

#include "covforge/binary_form.hpp"
#include "covforge/clebsch.hpp"
#include "covforge/covariant.hpp"
#include "covforge/ideals.hpp"
#include "covforge/power.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace covforge {

using Json = nlohmann::ordered_json;

/// {"order": d, "vars": ["x1","x2"], "cayley_coefficients": ["<poly>", ...]}
Json to_json(const BinaryForm& f);
/// Accepts the layout above, or {"order": d, "polynomial": "<poly in x1, x2>"}
/// with optional "vars". Throws ParseError on malformed input.
BinaryForm binary_form_from_json(const Json& j);

/// {"d": d, "degree": m, "order": q, "coefficients": ["<poly in a0..ad>", ...]}
Json to_json(const Covariant& c);
Covariant covariant_from_json(const Json& j);

/// {"n": n, "order": d, "coefficients": {"(i1,...,in)": "<rational-or-poly>"}}
Json to_json(const NaryForm& f);
/// Also accepts {"n": n, "order": d, "polynomial": "<poly in x1..xn>"}.
NaryForm nary_form_from_json(const Json& j);

/// {"is_power": bool, "mu": mu, "base": <form or null>, "scalar": "<rational>" or null}
Json power_result_json(const std::optional<PowerDecomposition>& result, int mu);

/// {"r", "d", "max_degree", "rows": [{"m", "dim_J", "dim_IX", "equal", "dims_exact"}],
///  "candidate_si": m or null, "verified_up_to": max_degree}
Json to_json(const SaturationReport& report);

/// Reads and parses a JSON file; ParseError when unreadable or malformed.
Json load_json_file(const std::string& path);

} // namespace covforge
