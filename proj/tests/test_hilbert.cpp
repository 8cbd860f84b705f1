#include "doctest.h"

#include "covforge/error.hpp"
#include "covforge/hilbert.hpp"
#include "covforge/poly_io.hpp"
#include "test_util.hpp"

using namespace covforge;

namespace {

MultiPoly a_poly(const std::string& text, int d)
{
    return parse_poly(text, coefficient_context(d));
}

Covariant psi_expr(const std::string& text, int d)
{
    const auto b = BinaryForm::generic(d - 2);
    const auto v = evaluate_form_expression(text, b);
    return Covariant::from_form(v.form, d - 2, v.degree);
}

Covariant f_expr(const std::string& text, int d)
{
    const auto v = evaluate_form_expression(text, BinaryForm::generic(d));
    return Covariant::from_form(v.form, d, v.degree);
}

BinaryForm plain(std::vector<long> monomial_coeffs)
{
    const int d = static_cast<int>(monomial_coeffs.size()) - 1;
    std::vector<Rational> cs;
    for (int i = 0; i <= d; ++i) {
        Rational c(monomial_coeffs[static_cast<std::size_t>(i)]);
        c /= Rational(binomial(d, i));
        cs.push_back(c);
    }
    return BinaryForm::from_rationals(cs);
}

} // namespace

TEST_CASE("Hilbert source closed forms")
{
    for (int d = 2; d <= 8; ++d) {
        CHECK(hilbert_source(1, d) == a_poly("a0*a2 - a1^2", d) * Rational(d - 1));
    }
    for (int d = 3; d <= 8; ++d) {
        const long s = 2L * d * d - 6 * d + 4;
        const auto expect = a_poly("a0^2*a3", d) * Rational(s) - a_poly("a0*a1*a2", d) * Rational(3 * s) +
                            a_poly("a1^3", d) * Rational(2 * s);
        CHECK(hilbert_source(2, d) == expect);
    }
    for (int d = 1; d <= 6; ++d) {
        CHECK(hilbert_source(d, d).is_zero());
        CHECK(hilbert_source(2 * d, d).is_zero());
    }
}

TEST_CASE("Hilbert source is a source of the right degree and weight")
{
    for (int d = 2; d <= 7; ++d) {
        for (int r = 1; r <= 4; ++r) {
            const auto h0 = hilbert_source(r, d);
            CHECK(cayley_operator(CayleyOp::EMinus, h0, d).is_zero());
            if (!h0.is_zero()) {
                CHECK(h0.homogeneous_degree("a") == static_cast<unsigned>(r + 1));
                CHECK(isobaric_weight(h0) == static_cast<unsigned>(r + 1));
            }
        }
    }
}

TEST_CASE("theta recursion of the fractional power series")
{
    for (int d = 2; d <= 6; ++d) {
        for (int r = 1; r <= 3; ++r) {
            const Rational rho = make_rational(r, d);
            const auto s = FracPowerSeries::power_of_generic(d, rho, r + 3);
            const auto ctx = coefficient_context(d);
            const auto a0 = MultiPoly::variable(ctx, 0);
            LinearDerivation eplus;
            for (int i = 0; i < d; ++i) {
                eplus.add(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i), Rational(d - i));
            }
            CHECK(s.numerator(0) == MultiPoly::constant(ctx, 1));
            for (int m = 0; m + 1 <= s.truncation(); ++m) {
                // a0^rho theta_m = a0^(rho - m) * (m! N_m)
                const PowerTerm cur{rho - m, s.theta_numerator(m)};
                const auto next = apply_derivation(cur, a0, eplus);
                CHECK(next.exponent == rho - (m + 1));
                CHECK(next.poly == s.theta_numerator(m + 1));
            }
            CHECK(s.theta_numerator(r + 1) == hilbert_source(r, d));
        }
    }
}

TEST_CASE("Hilbert covariant")
{
    auto h = hilbert_covariant(1, 2);
    CHECK(h.order() == 0);
    CHECK(h.source() == a_poly("a0*a2 - a1^2", 2));
    for (int d = 3; d <= 6; ++d) {
        auto hc = hilbert_covariant(1, d);
        CHECK(verify_covariant(hc).is_covariant);
        CHECK(proportionality(hc.form(), f_expr("T(F,F,2)", d).form()).has_value());
    }
    for (int d = 2; d <= 6; ++d) {
        for (int r = 1; r <= 3; ++r) {
            auto hc = hilbert_covariant(r, d);
            CHECK(hc.order() == (r + 1) * (d - 2));
            CHECK(hc.degree() == r + 1);
            CHECK(verify_covariant(hc).is_covariant);
        }
    }
    CHECK(hilbert_covariant(3, 3).is_zero());
}

TEST_CASE("basic Goettingen covariant")
{
    CHECK(goettingen_basic(1, 2).source() == a_poly("a0*a2 - a1^2", 2));
    CHECK(goettingen_basic(1, 3).source() == a_poly("4*a0*a2 - 4*a1^2", 3));
    for (int d = 4; d <= 6; ++d) {
        auto g = goettingen_basic(2, d);
        CHECK(verify_covariant(g).is_covariant);
        CHECK(proportionality(g.form(), f_expr("T(F,T(F,F,2),1)", d).form()).has_value());
    }
    CHECK(goettingen_basic(2, 2).is_zero());
    CHECK(goettingen_basic(4, 4).is_zero());
}

TEST_CASE("kappa scalar")
{
    CHECK(kappa_scalar(1, 2) == 1);
    CHECK(kappa_scalar(1, 3) == 2);
    CHECK(kappa_scalar(1, 4) == 3);
    CHECK(kappa_scalar(2, 4) == 9);
    CHECK(kappa_scalar(2, 5) == 20);
    CHECK(kappa_scalar(3, 4) == 320);
}

TEST_CASE("Goettingen source is kappa times Hilbert source")
{
    for (auto [r, d] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}}) {
        CHECK(goettingen_basic(r, d).source() == hilbert_source(r, d) * kappa_scalar(r, d));
    }
    for (auto [r, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 4}}) {
        CHECK(goettingen_basic(r, d) == hilbert_covariant(r, d) * kappa_scalar(r, d));
    }
}

TEST_CASE("general Goettingen construction")
{
    for (int d : {4, 6}) {
        for (int n : {0, 1}) {
            const auto psi = psi_expr("T(B,B," + std::to_string(2 * n) + ")", d);
            const auto g = goettingen_general(psi, 1, d);
            CHECK(verify_covariant(g).is_covariant);
            auto ratio = proportionality(g.form(), f_expr("T(F,F," + std::to_string(2 * n + 2) + ")", d).form());
            CHECK(ratio.has_value());
        }
    }
    for (auto [r, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 4}}) {
        const auto psi = psi_expr("B^" + std::to_string(r + 1), d);
        CHECK(proportionality(goettingen_general(psi, r, d).form(), goettingen_basic(r, d).form()).has_value());
    }
    CHECK(goettingen_general(psi_expr("T(B,T(B,B,2),4)", 6), 2, 6).is_zero());
    CHECK_THROWS_AS(goettingen_general(psi_expr("B^2", 6), 2, 6), DomainError);
    GoettingenOptions tight;
    tight.max_r = 1;
    CHECK_THROWS_AS(goettingen_general(psi_expr("B^3", 4), 2, 4, tight), InfeasibleError);
}

TEST_CASE("fast and literal general constructions agree")
{
    CHECK(goettingen_general(psi_expr("B^2", 4), 1, 4) == goettingen_general_literal(psi_expr("B^2", 4), 1, 4));
    CHECK(goettingen_general(psi_expr("T(B,B,2)", 4), 1, 4) ==
          goettingen_general_literal(psi_expr("T(B,B,2)", 4), 1, 4));
    CHECK(goettingen_general(psi_expr("T(B,B,2)", 5), 1, 5) ==
          goettingen_general_literal(psi_expr("T(B,B,2)", 5), 1, 5));
    CHECK(goettingen_general(psi_expr("B^3", 4), 2, 4) == goettingen_general_literal(psi_expr("B^3", 4), 2, 4));
    CHECK(goettingen_general(psi_expr("B*T(B,B,2)", 4), 2, 4) ==
          goettingen_general_literal(psi_expr("B*T(B,B,2)", 4), 2, 4));
}

TEST_CASE("polar form identity")
{
    for (auto [r, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 4}, {2, 6}, {1, 3}}) {
        CHECK(polar_identity_check(r, d).has_value());
    }
}

TEST_CASE("evaluation on specific forms")
{
    for (int d = 2; d <= 6; ++d) {
        std::vector<long> power(static_cast<std::size_t>(d) + 1, 0);
        power[0] = 1;
        CHECK(evaluate_covariant(f_expr("T(F,F,2)", d), plain(power)).is_zero());
    }
    const auto h26 = hilbert_covariant(2, 6);
    CHECK(evaluate_covariant(h26, plain({1, 0, 3, 0, 3, 0, 1})).is_zero());
    CHECK_FALSE(evaluate_covariant(h26, plain({0, 1, 0, 0, 0, 0, 0})).is_zero());
    CHECK_THROWS_AS(evaluate_covariant(h26, plain({1, 0, 0})), DomainError);
}
