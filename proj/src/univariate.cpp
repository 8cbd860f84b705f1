#include "covforge/univariate.hpp"

#include "covforge/error.hpp"

#include <optional>

namespace covforge {

void trim(UniPoly& p)
{
    while (!p.empty() && sgn(p.back()) == 0) {
        p.pop_back();
    }
}

int degree(const UniPoly& p)
{
    return static_cast<int>(p.size()) - 1;
}

UniPoly derivative(const UniPoly& p)
{
    UniPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) {
        d.push_back(p[k] * static_cast<long>(k));
    }
    trim(d);
    return d;
}

UniPoly multiply(const UniPoly& a, const UniPoly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    UniPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    trim(c);
    return c;
}

UniPoly make_monic(UniPoly p)
{
    trim(p);
    if (p.empty()) {
        return p;
    }
    const Rational lead = p.back();
    for (auto& c : p) {
        c /= lead;
    }
    return p;
}

std::pair<UniPoly, UniPoly> divide(const UniPoly& a, const UniPoly& b)
{
    UniPoly den = b;
    trim(den);
    if (den.empty()) {
        throw DomainError("division by the zero polynomial");
    }
    UniPoly rem = a;
    trim(rem);
    if (rem.size() < den.size()) {
        return {{}, rem};
    }
    UniPoly quo(rem.size() - den.size() + 1);
    const Rational lead = den.back();
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Rational c = rem[k + den.size() - 1] / lead;
        quo[k] = c;
        if (sgn(c) == 0) {
            continue;
        }
        for (std::size_t j = 0; j < den.size(); ++j) {
            rem[k + j] -= c * den[j];
        }
    }
    trim(quo);
    trim(rem);
    return {quo, rem};
}

UniPoly exact_divide(const UniPoly& a, const UniPoly& b)
{
    auto [q, r] = divide(a, b);
    if (!r.empty()) {
        throw DomainError("polynomial division is not exact");
    }
    return q;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b)
{
    UniPoly x = a;
    UniPoly y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        auto r = divide(x, y).second;
        x = std::move(y);
        y = make_monic(std::move(r));
    }
    return make_monic(std::move(x));
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& p)
{
    UniPoly f = make_monic(p);
    if (f.empty()) {
        throw DomainError("squarefree decomposition of the zero polynomial");
    }
    std::vector<UniPoly> out;
    if (degree(f) == 0) {
        return out;
    }
    const UniPoly fp = derivative(f);
    UniPoly a = gcd(f, fp);
    UniPoly b = exact_divide(f, a);
    UniPoly c = exact_divide(fp, a);
    UniPoly dd = c;
    {
        auto bp = derivative(b);
        dd.resize(std::max(dd.size(), bp.size()));
        for (std::size_t k = 0; k < bp.size(); ++k) {
            dd[k] -= bp[k];
        }
        trim(dd);
    }
    while (degree(b) > 0) {
        UniPoly g = gcd(b, dd);
        out.push_back(g);
        b = exact_divide(b, g);
        c = exact_divide(dd, g);
        auto bp = derivative(b);
        dd = c;
        dd.resize(std::max(dd.size(), bp.size()));
        for (std::size_t k = 0; k < bp.size(); ++k) {
            dd[k] -= bp[k];
        }
        trim(dd);
    }
    return out;
}

namespace {

std::optional<std::size_t> sole_variable(const MultiPoly& p, std::optional<std::size_t> seen)
{
    for (auto v : p.support()) {
        if (seen && *seen != v) {
            throw DomainError("univariate_gcd: operands are not univariate in a common variable");
        }
        seen = v;
    }
    return seen;
}

UniPoly to_dense(const MultiPoly& p, std::optional<std::size_t> var)
{
    UniPoly out;
    for (const auto& t : p.terms()) {
        const std::size_t k = var ? t.exps[*var] : 0;
        if (out.size() <= k) {
            out.resize(k + 1);
        }
        out[k] = t.coef;
    }
    trim(out);
    return out;
}

} // namespace

MultiPoly univariate_gcd(const MultiPoly& p, const MultiPoly& q)
{
    if (!same_context(p.context(), q.context())) {
        throw ContextError("univariate_gcd: operands live in different contexts");
    }
    const auto var = sole_variable(q, sole_variable(p, std::nullopt));
    const UniPoly g = gcd(to_dense(p, var), to_dense(q, var));
    MultiPoly out(p.context());
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (sgn(g[k]) == 0) {
            continue;
        }
        out += var ? MultiPoly::variable(p.context(), *var, static_cast<unsigned>(k)) * g[k]
                   : MultiPoly::constant(p.context(), g[k]);
    }
    return out;
}

} // namespace covforge
