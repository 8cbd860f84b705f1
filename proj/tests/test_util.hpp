#pragma once

#include "covforge/poly.hpp"

#include <random>

namespace covforge::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline long rand_int(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Rational rand_rational(long span = 5)
{
    return make_rational(rand_int(-span, span), rand_int(1, 3));
}

/// Random polynomial with up to `terms` terms of total degree <= max_deg.
inline MultiPoly rand_poly(const ContextPtr& ctx, int terms, int max_deg)
{
    std::vector<Term> out;
    for (int t = 0; t < terms; ++t) {
        Exponents e(ctx->num_vars(), 0);
        int budget = static_cast<int>(rand_int(0, max_deg));
        while (budget-- > 0) {
            e[static_cast<std::size_t>(rand_int(0, static_cast<long>(ctx->num_vars()) - 1))] += 1;
        }
        out.push_back({std::move(e), rand_rational()});
    }
    return MultiPoly::from_terms(ctx, std::move(out));
}

} // namespace covforge::testing

#include "covforge/binary_form.hpp"

namespace covforge::testing {

inline BinaryForm rand_form(int order, long span = 4)
{
    std::vector<Rational> cs;
    for (int i = 0; i <= order; ++i) {
        cs.push_back(Rational(rand_int(-span, span)));
    }
    return BinaryForm::from_rationals(cs);
}

/// Random integer matrix of determinant 1 as a product of elementary moves.
inline std::array<std::array<Rational, 2>, 2> rand_unimodular()
{
    long a = 1, b = 0, c = 0, d = 1;
    for (int s = 0; s < 4; ++s) {
        const long t = rand_int(-2, 2);
        if (s % 2 == 0) {
            b += t * a;
            d += t * c;
        } else {
            a += t * b;
            c += t * d;
        }
    }
    return {{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}};
}

} // namespace covforge::testing
