#include "covforge/suites.hpp"

#include "covforge/error.hpp"
#include "covforge/hilbert.hpp"
#include "covforge/power.hpp"

#include <numeric>
#include <random>

namespace covforge {

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

std::string ratio_text(const std::optional<Rational>& c)
{
    return c ? "scalar " + c->get_str() : "not proportional";
}

Covariant expr_covariant(const std::string& text, int d)
{
    const auto v = evaluate_form_expression(text, BinaryForm::generic(d));
    return Covariant::from_form(v.form, d, v.degree);
}

Covariant psi_covariant(const std::string& text, int d)
{
    const auto v = evaluate_form_expression(text, BinaryForm::generic(d - 2));
    return Covariant::from_form(v.form, d - 2, v.degree);
}

CheckResult proportional(std::string name, const Covariant& a, const Covariant& b)
{
    auto c = (a.is_zero() || b.is_zero()) ? std::nullopt : proportionality(a.form(), b.form());
    return {std::move(name), c.has_value(), ratio_text(c)};
}

std::vector<CheckResult> gordan_suite()
{
    std::vector<CheckResult> out;
    for (int d : {5, 6}) {
        out.push_back({"(F,(F,F)_4)_1 = 2(2d-5)/(d-4) (F,(F,F)_2)_3, d=" + std::to_string(d),
                       identity_check("T(F,T(F,F,4),1)", "{2*(2*d-5)/(d-4)}*T(F,T(F,F,2),3)", d), ""});
    }
    for (int d : {4, 5, 6}) {
        out.push_back({"F^2(F,F)_4 = d(2d-5)/((d-3)(2d-1)) (F,F)_2^2 + 2(2d-5)/(d-3) (F^2,(F,F)_2)_2, d=" +
                           std::to_string(d),
                       identity_check("MUL(F,F,T(F,F,4))",
                                      "{d*(2*d-5)/((d-3)*(2*d-1))}*T(F,F,2)^2 + "
                                      "{2*(2*d-5)/(d-3)}*T(MUL(F,F),T(F,F,2),2)",
                                      d),
                       ""});
    }
    return out;
}

std::vector<CheckResult> lowr_suite()
{
    std::vector<CheckResult> out;
    for (int d : {4, 5, 6}) {
        const auto ds = std::to_string(d);
        out.push_back(proportional("Gott_{2," + ds + "} ~ (F,(F,F)_2)_1", goettingen_basic(2, d),
                                   expr_covariant("T(F,T(F,F,2),1)", d)));
        out.push_back(proportional("Gott_{3," + ds + "} ~ 3(2d-3)(F,F)_2^2 - 2(d-2)F^2(F,F)_4", goettingen_basic(3, d),
                                   expr_covariant("{3*(2*d-3)}*T(F,F,2)^2 - {2*(d-2)}*MUL(F,F,T(F,F,4))", d)));
    }
    for (int d : {4, 6}) {
        for (int n : {0, 1}) {
            const auto k = std::to_string(2 * n);
            const auto k2 = std::to_string(2 * n + 2);
            out.push_back(proportional("Gott((B,B)_" + k + ") ~ (F,F)_" + k2 + ", d=" + std::to_string(d),
                                       goettingen_general(psi_covariant("T(B,B," + k + ")", d), 1, d),
                                       expr_covariant("T(F,F," + k2 + ")", d)));
        }
    }
    return out;
}

std::vector<CheckResult> twisted_cubic_suite()
{
    std::vector<CheckResult> out;
    const auto f = BinaryForm::generic(3);
    for (int r : {2, 4, 5}) {
        out.push_back({"(Gott_{" + std::to_string(r) + ",3},F)_2 = 0",
                       transvectant(goettingen_basic(r, 3).form(), f, 2).is_zero(), ""});
    }
    const auto g1 = goettingen_basic(1, 3).form();
    const auto rhs = transvectant(f, goettingen_basic(2, 3).form(), 1);
    auto c = rhs.is_zero() ? std::nullopt : proportionality(g1 * g1, rhs);
    out.push_back({"Gott_{1,3}^2 ~ (F,Gott_{2,3})_1", c.has_value(), ratio_text(c)});
    return out;
}

std::vector<CheckResult> polar_suite()
{
    std::vector<CheckResult> out;
    for (auto [r, d] : {std::pair{1, 4}, std::pair{2, 4}, std::pair{2, 6}}) {
        auto c = polar_identity_check(r, d);
        out.push_back({"polar form of Hilb_{" + std::to_string(r) + "," + std::to_string(d) + "}", c.has_value(),
                       ratio_text(c)});
    }
    return out;
}

MultiPoly random_poly(Rng& rng, const ContextPtr& ctx, int terms, int max_deg)
{
    std::vector<Term> ts;
    for (int t = 0; t < terms; ++t) {
        Exponents e(ctx->num_vars(), 0);
        for (long budget = uniform(rng, 0, max_deg); budget > 0; --budget) {
            e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(ctx->num_vars()) - 1))] += 1;
        }
        ts.push_back({std::move(e), make_rational(uniform(rng, -5, 5), uniform(rng, 1, 3))});
    }
    return MultiPoly::from_terms(ctx, std::move(ts));
}

std::vector<CheckResult> lemma_e_suite(std::uint64_t seed)
{
    // E- E+^(n+1) P = E+^(n+1) E- P - (n+1) E+^n E0 P - n(n+1) E+^n P
    Rng rng(seed);
    std::vector<CheckResult> out;
    for (int d = 1; d <= 6; ++d) {
        for (unsigned n = 0; n <= 4; ++n) {
            bool ok = true;
            for (int trial = 0; trial < 3; ++trial) {
                const auto p = random_poly(rng, coefficient_context(d), 4, 3);
                const auto lhs = cayley_operator(CayleyOp::EMinus, cayley_operator(CayleyOp::EPlus, p, d, n + 1), d);
                const auto rhs =
                    cayley_operator(CayleyOp::EPlus, cayley_operator(CayleyOp::EMinus, p, d), d, n + 1) -
                    cayley_operator(CayleyOp::EPlus, cayley_operator(CayleyOp::EZero, p, d), d, n) * Rational(n + 1) -
                    cayley_operator(CayleyOp::EPlus, p, d, n) * Rational(n * (n + 1));
                ok = ok && lhs == rhs;
            }
            out.push_back({"E- E+^" + std::to_string(n + 1) + " commutation, d=" + std::to_string(d), ok, ""});
        }
    }
    return out;
}

BinaryForm random_nonzero_form(Rng& rng, int order)
{
    for (;;) {
        std::vector<Rational> cs;
        for (int i = 0; i <= order; ++i) {
            cs.push_back(Rational(uniform(rng, -4, 4)));
        }
        auto f = BinaryForm::from_rationals(cs);
        if (!f.is_zero()) {
            return f;
        }
    }
}

} // namespace

const std::vector<std::string>& identity_suite_names()
{
    static const std::vector<std::string> names{"gordan", "lowr", "twisted-cubic", "polar", "lemmaE"};
    return names;
}

std::vector<CheckResult> run_identity_suite(const std::string& name, std::uint64_t seed)
{
    if (name == "gordan") {
        return gordan_suite();
    }
    if (name == "lowr") {
        return lowr_suite();
    }
    if (name == "twisted-cubic") {
        return twisted_cubic_suite();
    }
    if (name == "polar") {
        return polar_suite();
    }
    if (name == "lemmaE") {
        return lemma_e_suite(seed);
    }
    throw DomainError("unknown identity suite '" + name + "'");
}

AgreementReport three_way_agreement(int r, int d, int trials, std::uint64_t seed)
{
    if (r < 1 || d < 2 || trials < 0) {
        throw DomainError("three-way agreement needs r >= 1, d >= 2");
    }
    Rng rng(seed ^ (static_cast<std::uint64_t>(r) << 32) ^ static_cast<std::uint64_t>(d));
    const int e = std::gcd(r, d);
    AgreementReport rep;
    rep.r = r;
    rep.d = d;
    rep.mu = d / e;
    rep.trials = trials;
    const auto hilb = hilbert_covariant(r, d);
    for (int t = 0; t < trials; ++t) {
        BinaryForm f = t % 2 == 0 ? random_nonzero_form(rng, e).pow(static_cast<unsigned>(rep.mu)) *
                                        make_rational(uniform(rng, 1, 7) * (uniform(rng, 0, 1) ? 1 : -1),
                                                      uniform(rng, 1, 5))
                                  : random_nonzero_form(rng, d);
        const bool kernel = !alpha_kernel(f, r).empty();
        const bool vanishes = vanishing_test(hilb, f);
        const bool power = perfect_power_decompose(f, rep.mu).has_value();
        if (kernel != vanishes || vanishes != power) {
            ++rep.disagreements;
        } else if (power) {
            ++rep.powers;
        }
    }
    return rep;
}

} // namespace covforge
