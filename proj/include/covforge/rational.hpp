#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace covforge {

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(unsigned n);

/// C(n, k); zero when k < 0 or k > n.
Integer binomial(long n, long k);

/// Generalized binomial coefficient rho (rho-1) ... (rho-k+1) / k!.
Rational binomial(const Rational& rho, unsigned k);

/// Canonical text form: "-3", "5/7".
std::string to_string(const Rational& q);

/// Accepts "[-]int" or "[-]int/uint"; throws ParseError otherwise.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace covforge
