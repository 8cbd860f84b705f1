#pragma once

#include "covforge/poly.hpp"

#include <string>
#include <string_view>

namespace covforge {

/// Terms in descending grlex order, e.g. "2*a0^2*a3 - 3*a0*a1*a2".
std::string to_string(const MultiPoly& p);

/// Parses the polynomial text grammar against a known context.
MultiPoly parse_poly(std::string_view text, const ContextPtr& ctx);

/// Builds a context holding just the variables named in `text`: flat names
/// (letters+digits) become families spanning the smallest to largest index seen, grid names
/// (letters_i_j) become grid families. Families are ordered by first use.
ContextPtr infer_context(std::string_view text);

} // namespace covforge
