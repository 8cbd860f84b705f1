#include "covforge/hilbert.hpp"

#include "covforge/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace covforge {

PowerTerm apply_derivation(const PowerTerm& t, const MultiPoly& base, const LinearDerivation& der)
{
    MultiPoly next = der.apply(base) * t.poly * t.exponent + base * der.apply(t.poly);
    return {t.exponent - 1, std::move(next)};
}

FracPowerSeries FracPowerSeries::power_of_generic(int d, const Rational& rho, int truncation)
{
    if (d < 1 || truncation < 0) {
        throw DomainError("power series needs d >= 1 and a nonnegative truncation");
    }
    auto ctx = coefficient_context(d);
    const auto a0 = MultiPoly::variable(ctx, 0);
    const auto T = static_cast<std::size_t>(truncation);
    // u * a0 = sum_{i>=1} C(d,i) a_i t^i
    std::vector<MultiPoly> u(T + 1, MultiPoly(ctx));
    for (std::size_t i = 1; i <= T && i <= static_cast<std::size_t>(d); ++i) {
        u[i] = MultiPoly::variable(ctx, i) * Rational(binomial(d, static_cast<long>(i)));
    }
    // power[k] = [t^k] (a0 u)^j, updated for j = 0..T
    std::vector<MultiPoly> power(T + 1, MultiPoly(ctx));
    power[0] = MultiPoly::constant(ctx, 1);
    std::vector<MultiPoly> numerators(T + 1, MultiPoly(ctx));
    std::vector<MultiPoly> a0_powers{MultiPoly::constant(ctx, 1)};
    for (std::size_t k = 1; k <= T; ++k) {
        a0_powers.push_back(a0_powers.back() * a0);
    }
    for (std::size_t j = 0; j <= T; ++j) {
        const Rational c = binomial(rho, static_cast<unsigned>(j));
        if (sgn(c) != 0) {
            for (std::size_t k = j; k <= T; ++k) {
                if (!power[k].is_zero()) {
                    numerators[k] += power[k] * a0_powers[k - j] * c;
                }
            }
        }
        std::vector<MultiPoly> next(T + 1, MultiPoly(ctx));
        for (std::size_t k = 0; k <= T; ++k) {
            if (power[k].is_zero()) {
                continue;
            }
            for (std::size_t i = 1; i + k <= T; ++i) {
                if (!u[i].is_zero()) {
                    next[k + i] += power[k] * u[i];
                }
            }
        }
        power = std::move(next);
    }
    FracPowerSeries s;
    s.d_ = d;
    s.rho_ = rho;
    s.numerators_ = std::move(numerators);
    return s;
}

MultiPoly FracPowerSeries::theta_numerator(int k) const
{
    return numerator(k) * Rational(factorial(static_cast<unsigned>(k)));
}

MultiPoly hilbert_source(int r, int d)
{
    if (r < 1 || d < 1) {
        throw DomainError("hilbert_source needs r, d >= 1");
    }
    const Rational rho = make_rational(r, d);
    const auto series = FracPowerSeries::power_of_generic(d, rho, r + 1);
    // a0^(r+1-rho) * a0^rho * (r+1)! N_{r+1} / a0^(r+1)
    const Rational leftover = (Rational(r + 1) - rho) + rho - Rational(series.denominator_power(r + 1));
    if (sgn(leftover) != 0) {
        throw Error("internal: a0 denominator not cleared in hilbert_source");
    }
    return series.theta_numerator(r + 1);
}

Covariant hilbert_covariant(int r, int d)
{
    if (d < 2) {
        throw DomainError("hilbert_covariant needs d >= 2");
    }
    const int n_order = (r + 1) * (d - 2);
    const auto h0 = hilbert_source(r, d);
    if (h0.is_zero()) {
        return Covariant::zero(d, r + 1, n_order);
    }
    auto cov = covariant_from_source(h0, d);
    if (cov.order() != n_order || cov.degree() != r + 1) {
        throw Error("internal: Hilbert covariant has unexpected degree/order");
    }
    return cov;
}

namespace {

// x1^(r-i) x2^i as a form with coefficients in ctx.
BinaryForm monomial_form(int r, int i, const ContextPtr& ctx)
{
    std::vector<MultiPoly> cs(static_cast<std::size_t>(r) + 1, MultiPoly(ctx));
    Rational c(1);
    c /= Rational(binomial(r, i));
    cs[static_cast<std::size_t>(i)] = MultiPoly::constant(ctx, c);
    return BinaryForm(r, std::move(cs), ctx);
}

std::vector<BinaryForm> alpha_images(int r, const BinaryForm& f)
{
    std::vector<BinaryForm> out;
    for (int i = 0; i <= r; ++i) {
        out.push_back(transvectant(monomial_form(r, i, f.coefficient_context()), f, 1));
    }
    return out;
}

} // namespace

Covariant goettingen_basic(int r, int d)
{
    if (d < 2 || r < 0) {
        throw DomainError("goettingen_basic needs d >= 2 and r >= 0");
    }
    const auto f = BinaryForm::generic(d);
    const auto w = wronskian(alpha_images(r, f));
    return Covariant::from_form(w, d, r + 1);
}

Covariant goettingen_general(const Covariant& psi, int r, int d, const GoettingenOptions& opts)
{
    if (d < 2 || r < 0) {
        throw DomainError("goettingen_general needs d >= 2 and r >= 0");
    }
    if (psi.source_order() != d - 2 || psi.degree() != r + 1) {
        throw DomainError("psi must be a covariant of degree r+1 of the order d-2 form");
    }
    if (r > opts.max_r) {
        throw InfeasibleError("goettingen_general: r = " + std::to_string(r) + " exceeds the limit " +
                              std::to_string(opts.max_r));
    }
    const int n = d - 2;
    const auto f = BinaryForm::generic(d);
    const auto actx = f.coefficient_context();
    const auto cs = alpha_images(r, f);

    // entry[i][j][k]: coefficient of x1^(n-k) x2^k in d^r C_i / dx1^(r-j) dx2^j
    std::vector<std::vector<std::vector<MultiPoly>>> entry(static_cast<std::size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) {
        const auto p = cs[static_cast<std::size_t>(i)].to_polynomial();
        const auto x1 = p.context()->var("x", 1);
        const auto x2 = p.context()->var("x", 2);
        for (int j = 0; j <= r; ++j) {
            const auto der = p.diff(x1, static_cast<unsigned>(r - j)).diff(x2, static_cast<unsigned>(j));
            std::vector<MultiPoly> by_k;
            for (int k = 0; k <= n; ++k) {
                const unsigned pattern[] = {static_cast<unsigned>(n - k), static_cast<unsigned>(k)};
                by_k.push_back(der.coefficient("x", pattern));
            }
            entry[static_cast<std::size_t>(i)].push_back(std::move(by_k));
        }
    }
    if (!same_context(entry[0][0][0].context(), actx)) {
        throw Error("internal: unexpected coefficient context");
    }

    // Coefficient of prod_i y_{i1}^(n-k_i) y_{i2}^(k_i) in the row-wise determinant.
    std::map<std::vector<int>, MultiPoly> w_cache;
    auto w_coeff = [&](const std::vector<int>& ks) -> const MultiPoly& {
        auto it = w_cache.find(ks);
        if (it != w_cache.end()) {
            return it->second;
        }
        std::vector<std::vector<MultiPoly>> m(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) {
            for (std::size_t j = 0; j < ks.size(); ++j) {
                m[i].push_back(entry[i][j][static_cast<std::size_t>(ks[i])]);
            }
        }
        return w_cache.emplace(ks, poly_determinant(m)).first->second;
    };

    const int q = psi.order();
    std::vector<MultiPoly> out(static_cast<std::size_t>(q) + 1, MultiPoly(actx));
    const auto& pctx = psi.coefficients().front().context();
    std::vector<int> ks(static_cast<std::size_t>(r) + 1, 0);
    std::vector<int> perm(ks.size());
    for (;;) {
        // ks runs over nondecreasing sequences, one per multiset of b-indices
        Exponents alpha(pctx->num_vars(), 0);
        for (int k : ks) {
            alpha[static_cast<std::size_t>(k)] += 1;
        }
        std::vector<Rational> psi_coeffs;
        bool any = false;
        for (const auto& c : psi.coefficients()) {
            psi_coeffs.push_back(c.coefficient_of(alpha));
            any = any || sgn(psi_coeffs.back()) != 0;
        }
        if (any) {
            // symmetrization over all permutations of the y families
            MultiPoly sharp(actx);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                std::vector<int> permuted(ks.size());
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    permuted[i] = ks[static_cast<std::size_t>(perm[i])];
                }
                sharp += w_coeff(permuted);
            } while (std::next_permutation(perm.begin(), perm.end()));
            // Omega^n pairing of b_{ik} with y_{i1}^(n-k) y_{i2}^k contributes k!(n-k)!
            Integer pairing = 1;
            for (int k : ks) {
                pairing *= factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(n - k));
            }
            sharp *= Rational(pairing);
            for (int l = 0; l <= q; ++l) {
                if (sgn(psi_coeffs[static_cast<std::size_t>(l)]) != 0) {
                    out[static_cast<std::size_t>(l)] += sharp * psi_coeffs[static_cast<std::size_t>(l)];
                }
            }
        }
        // next nondecreasing sequence
        int pos = r;
        while (pos >= 0 && ks[static_cast<std::size_t>(pos)] == n) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        const int v = ks[static_cast<std::size_t>(pos)] + 1;
        for (std::size_t i = static_cast<std::size_t>(pos); i < ks.size(); ++i) {
            ks[i] = v;
        }
    }
    return Covariant(d, r + 1, q, std::move(out));
}

Covariant goettingen_general_literal(const Covariant& psi, int r, int d)
{
    if (d < 2 || r < 0) {
        throw DomainError("goettingen_general_literal needs d >= 2 and r >= 0");
    }
    if (psi.source_order() != d - 2 || psi.degree() != r + 1) {
        throw DomainError("psi must be a covariant of degree r+1 of the order d-2 form");
    }
    const int n = d - 2;
    const int q = psi.order();
    const auto f = BinaryForm::generic(d);
    auto big = Context::make({VarFamily::flat("a", 0, d + 1), VarFamily::flat("x", 1, 2),
                              VarFamily::grid("y", 0, r + 1, 1, 2), VarFamily::grid("z", 0, r + 1, 1, 2),
                              VarFamily::flat("c", 0, n + 1), VarFamily::grid("b", 0, r + 1, 0, n + 1)});
    auto var = [&](const char* fam, int i, int j) { return MultiPoly::variable(big, big->var(fam, i, j)); };

    // the determinant with row i in the y_(i) variables
    const auto cs = alpha_images(r, f);
    std::vector<std::vector<MultiPoly>> rows;
    for (int i = 0; i <= r; ++i) {
        const auto p = cs[static_cast<std::size_t>(i)].to_polynomial().embed(big);
        const auto x1 = big->var("x", 1);
        const auto x2 = big->var("x", 2);
        std::vector<MultiPoly> row;
        for (int j = 0; j <= r; ++j) {
            auto e = p.diff(x1, static_cast<unsigned>(r - j)).diff(x2, static_cast<unsigned>(j));
            row.push_back(e.substitute({{x1, var("y", i, 1)}, {x2, var("y", i, 2)}}));
        }
        rows.push_back(std::move(row));
    }
    const auto w = poly_determinant(rows);

    MultiPoly sharp(big);
    std::vector<int> perm(static_cast<std::size_t>(r) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::map<std::size_t, MultiPoly> bind;
        for (int i = 0; i <= r; ++i) {
            for (int c = 1; c <= 2; ++c) {
                bind.emplace(big->var("y", i, c), var("y", perm[static_cast<std::size_t>(i)], c));
            }
        }
        sharp += w.substitute(bind);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // psi in the c variables, then total polarization into b_(0), ..., b_(r)
    const auto psi_poly = psi.bihomogeneous();
    std::map<std::size_t, MultiPoly> rename;
    for (int k = 0; k <= n; ++k) {
        rename.emplace(psi_poly.context()->var("a", k), MultiPoly::variable(big, big->var("c", k)));
    }
    MultiPoly pol = psi_poly.substitute(rename, big);
    for (int i = 0; i <= r; ++i) {
        LinearDerivation der;
        for (int k = 0; k <= n; ++k) {
            der.add(big->var("b", i, k), big->var("c", k), Rational(1));
        }
        pol = der.apply(pol);
    }
    Rational inv(1);
    inv /= Rational(factorial(static_cast<unsigned>(r + 1)));
    pol *= inv;

    // b_{ik} -> z_{i2}^(n-k) (-z_{i1})^k / n!
    std::map<std::size_t, MultiPoly> zsub;
    Rational inv_n(1);
    inv_n /= Rational(factorial(static_cast<unsigned>(n)));
    for (int i = 0; i <= r; ++i) {
        for (int k = 0; k <= n; ++k) {
            zsub.emplace(big->var("b", i, k),
                         var("z", i, 2).pow(n - k) * (-var("z", i, 1)).pow(k) * inv_n);
        }
    }
    MultiPoly prod = pol.substitute(zsub) * sharp;
    for (int i = 0; i <= r; ++i) {
        prod = omega_apply_vars(prod, {big->var("y", i, 1), big->var("y", i, 2)}, {big->var("z", i, 1), big->var("z", i, 2)},
                           static_cast<unsigned>(n));
    }
    auto small = f.polynomial_context();
    return Covariant::from_form(BinaryForm::from_polynomial(prod.embed(small), q), d, r + 1);
}

Rational kappa_scalar(int r, int d)
{
    if (d < 2 || r < 1) {
        throw DomainError("kappa_scalar needs d >= 2 and r >= 1");
    }
    Integer num = 1;
    for (int i = 0; i <= r; ++i) {
        num *= factorial(static_cast<unsigned>(i)) * factorial(static_cast<unsigned>(d + i - 2));
    }
    Integer den_base = Integer(r) * factorial(static_cast<unsigned>(d - 2));
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), den_base.get_mpz_t(), static_cast<unsigned long>(r + 1));
    Rational k(num, den);
    k.canonicalize();
    return k;
}

std::optional<Rational> polar_identity_check(int r, int d)
{
    if (d < 2 || r < 1) {
        throw DomainError("polar_identity_check needs d >= 2 and r >= 1");
    }
    const auto hilb = hilbert_covariant(r, d);
    auto ctx = Context::make({VarFamily::flat("a", 0, d + 1), VarFamily::flat("x", 1, 2), VarFamily::flat("y", 1, 2)});
    const auto fpoly = BinaryForm::generic(d).to_polynomial().embed(ctx);
    LinearDerivation polar;
    polar.add(ctx->var("y", 1), ctx->var("x", 1), Rational(1));
    polar.add(ctx->var("y", 2), ctx->var("x", 2), Rational(1));
    PowerTerm t{make_rational(r, d), MultiPoly::constant(ctx, 1)};
    for (int i = 0; i <= r; ++i) {
        t = apply_derivation(t, fpoly, polar);
    }
    // F^(r+1-r/d) * F^(r/d-r-1) * Q leaves Q alone.
    if (sgn(Rational(r + 1) - make_rational(r, d) + t.exponent) != 0) {
        throw Error("internal: F powers not cleared in polar identity");
    }
    const auto cross = MultiPoly::variable(ctx, ctx->var("x", 1)) * MultiPoly::variable(ctx, ctx->var("y", 2)) -
                       MultiPoly::variable(ctx, ctx->var("x", 2)) * MultiPoly::variable(ctx, ctx->var("y", 1));
    const auto lhs = cross.pow(r + 1) * hilb.bihomogeneous().embed(ctx);
    return proportionality(t.poly, lhs);
}

BinaryForm evaluate_covariant(const Covariant& phi, const BinaryForm& f)
{
    if (f.order() != phi.source_order()) {
        throw DomainError("covariant of " + std::to_string(phi.source_order()) + "-ics evaluated on a form of order " +
                          std::to_string(f.order()));
    }
    const auto& src = phi.coefficients().front().context();
    Substitution sub(src, f.coefficient_context());
    for (int i = 0; i <= f.order(); ++i) {
        sub.bind(src->var("a", i), f.coefficient(i));
    }
    std::vector<MultiPoly> out;
    for (const auto& c : phi.coefficients()) {
        out.push_back(sub.apply(c));
    }
    return BinaryForm(phi.order(), std::move(out), f.coefficient_context(), f.var_family());
}

} // namespace covforge
