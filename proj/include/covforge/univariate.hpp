#pragma once

#include "covforge/poly.hpp"

#include <vector>

namespace covforge {

/// Dense univariate polynomial, coefficient k belongs to t^k. Kept trimmed:
/// no trailing zeros, so the zero polynomial is the empty vector.
using UniPoly = std::vector<Rational>;

void trim(UniPoly& p);
int degree(const UniPoly& p);
UniPoly derivative(const UniPoly& p);
UniPoly multiply(const UniPoly& a, const UniPoly& b);
UniPoly make_monic(UniPoly p);
/// Quotient and remainder; throws DomainError for a zero divisor.
std::pair<UniPoly, UniPoly> divide(const UniPoly& a, const UniPoly& b);
/// Exact quotient; throws DomainError if the remainder is nonzero.
UniPoly exact_divide(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Yun's algorithm. Entry i holds the monic product of the irreducible
/// factors of multiplicity exactly i+1; the leading coefficient is dropped.
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p);

/// Monic gcd of two polynomials in the same single variable (or constants).
/// gcd(P, 0) is monic P; gcd(0, 0) is 0.
MultiPoly univariate_gcd(const MultiPoly& p, const MultiPoly& q);

} // namespace covforge
