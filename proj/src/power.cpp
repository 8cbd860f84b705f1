#include "covforge/power.hpp"

#include "covforge/error.hpp"
#include "covforge/hilbert.hpp"
#include "covforge/univariate.hpp"

namespace covforge {

std::vector<MultiPoly> plain_coefficients(const BinaryForm& f)
{
    std::vector<MultiPoly> out;
    for (int i = 0; i <= f.order(); ++i) {
        out.push_back(f.coefficient(i) * Rational(binomial(f.order(), i)));
    }
    return out;
}

BinaryForm form_from_plain(const std::vector<MultiPoly>& coeffs, ContextPtr ctx, const std::string& var_family)
{
    const int d = static_cast<int>(coeffs.size()) - 1;
    std::vector<MultiPoly> cs;
    for (int i = 0; i <= d; ++i) {
        Rational w(1);
        w /= Rational(binomial(d, i));
        cs.push_back(coeffs[static_cast<std::size_t>(i)] * w);
    }
    return BinaryForm(d, std::move(cs), std::move(ctx), var_family);
}

BinaryForm form_from_plain(const std::vector<Rational>& coeffs, const std::string& var_family)
{
    auto ctx = Context::empty();
    std::vector<MultiPoly> cs;
    for (const auto& c : coeffs) {
        cs.push_back(MultiPoly::constant(ctx, c));
    }
    return form_from_plain(cs, ctx, var_family);
}

namespace {

BinaryForm monomial(int r, int j, const ContextPtr& ctx, const std::string& var_family)
{
    std::vector<MultiPoly> cs(static_cast<std::size_t>(r) + 1, MultiPoly(ctx));
    cs[static_cast<std::size_t>(j)] = MultiPoly::constant(ctx, 1);
    return form_from_plain(cs, ctx, var_family);
}

void check_alpha_args(const BinaryForm& f, int r)
{
    if (f.order() < 2) {
        throw DomainError("alpha map needs a form of order at least 2");
    }
    if (r < 0) {
        throw DomainError("alpha map needs r >= 0");
    }
}

} // namespace

RatMatrix alpha_matrix(const BinaryForm& f, int r)
{
    check_alpha_args(f, r);
    if (!f.has_rational_coefficients()) {
        throw DomainError("alpha_matrix needs rational coefficients; use alpha_matrix_generic");
    }
    const int d = f.order();
    RatMatrix m(static_cast<std::size_t>(r + d - 1), static_cast<std::size_t>(r + 1));
    for (int j = 0; j <= r; ++j) {
        const auto img = plain_coefficients(transvectant(monomial(r, j, f.coefficient_context(), f.var_family()), f, 1));
        for (std::size_t i = 0; i < img.size(); ++i) {
            m.at(i, static_cast<std::size_t>(j)) = img[i].is_zero() ? Rational(0) : img[i].constant_value();
        }
    }
    return m;
}

std::vector<std::vector<MultiPoly>> alpha_matrix_generic(int r, int d)
{
    const auto f = BinaryForm::generic(d);
    check_alpha_args(f, r);
    const auto ctx = f.coefficient_context();
    std::vector<std::vector<MultiPoly>> m(static_cast<std::size_t>(r + d - 1),
                                          std::vector<MultiPoly>(static_cast<std::size_t>(r + 1), MultiPoly(ctx)));
    for (int j = 0; j <= r; ++j) {
        const auto img = plain_coefficients(transvectant(monomial(r, j, ctx, "x"), f, 1));
        for (std::size_t i = 0; i < img.size(); ++i) {
            m[i][static_cast<std::size_t>(j)] = img[i];
        }
    }
    return m;
}

std::vector<BinaryForm> alpha_kernel(const BinaryForm& f, int r)
{
    std::vector<BinaryForm> out;
    for (const auto& v : matrix_kernel(alpha_matrix(f, r))) {
        out.push_back(form_from_plain(v, f.var_family()));
    }
    return out;
}

namespace {

// Scales to coprime integers with the first nonzero entry positive; returns the divisor used.
Rational make_primitive(std::vector<Rational>& v)
{
    Integer l = 1;
    Integer g = 0;
    for (const auto& c : v) {
        if (sgn(c) != 0) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    for (const auto& c : v) {
        if (sgn(c) != 0) {
            Integer n = c.get_num() * (l / c.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        }
    }
    Rational factor(l, g);
    factor.canonicalize();
    for (const auto& c : v) {
        if (sgn(c) != 0) {
            if (sgn(c) < 0) {
                factor = -factor;
            }
            break;
        }
    }
    for (auto& c : v) {
        c *= factor;
    }
    return factor;
}

} // namespace

std::optional<PowerDecomposition> perfect_power_decompose(const BinaryForm& f, int mu)
{
    if (!f.has_rational_coefficients()) {
        throw DomainError("perfect_power_decompose needs rational coefficients");
    }
    const int d = f.order();
    if (mu < 1 || d < 0 || d % mu != 0) {
        throw DomainError("mu = " + std::to_string(mu) + " does not divide the order " + std::to_string(d));
    }
    if (f.is_zero()) {
        throw DomainError("the zero form has no power decomposition");
    }
    const int e = d / mu;
    std::vector<Rational> plain;
    for (const auto& c : plain_coefficients(f)) {
        plain.push_back(c.is_zero() ? Rational(0) : c.constant_value());
    }
    // x1 := 1 leaves f(z) = sum p_i z^i with z = x2; the x1 factor has multiplicity d - deg f
    UniPoly dehom(plain.begin(), plain.end());
    trim(dehom);
    const int s = d - degree(dehom);
    if (s % mu != 0) {
        return std::nullopt;
    }
    UniPoly g{Rational(1)};
    const auto parts = squarefree_decomposition(dehom);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const int mult = static_cast<int>(i) + 1;
        if (degree(parts[i]) <= 0) {
            continue;
        }
        if (mult % mu != 0) {
            return std::nullopt;
        }
        for (int k = 0; k < mult / mu; ++k) {
            g = multiply(g, parts[i]);
        }
    }
    if (degree(g) + s / mu != e) {
        throw Error("internal: power decomposition degree mismatch");
    }
    std::vector<Rational> gplain(static_cast<std::size_t>(e) + 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        gplain[i] = g[i];
    }
    make_primitive(gplain);
    const auto base = form_from_plain(gplain, f.var_family());
    const auto power = base.pow(static_cast<unsigned>(mu));
    std::optional<Rational> scalar;
    for (int i = 0; i <= d; ++i) {
        if (!power.coefficient(i).is_zero()) {
            scalar = (f.coefficient(i).is_zero() ? Rational(0) : f.coefficient(i).constant_value()) /
                     power.coefficient(i).constant_value();
            break;
        }
    }
    if (!scalar || !(power * *scalar == f)) {
        throw Error("internal: power decomposition does not reproduce the form");
    }
    return PowerDecomposition{base, mu, *scalar};
}

bool vanishing_test(const Covariant& phi, const BinaryForm& f)
{
    return evaluate_covariant(phi, f).is_zero();
}

} // namespace covforge
