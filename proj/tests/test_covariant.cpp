#include "doctest.h"

#include "covforge/covariant.hpp"
#include "covforge/error.hpp"
#include "covforge/poly_io.hpp"
#include "test_util.hpp"

using namespace covforge;
using covforge::testing::rand_int;
using covforge::testing::rand_poly;

namespace {

MultiPoly a_poly(const char* text, int d)
{
    return parse_poly(text, coefficient_context(d));
}

} // namespace

TEST_CASE("operator examples")
{
    for (int d = 1; d <= 6; ++d) {
        auto ctx = coefficient_context(d);
        auto a0 = MultiPoly::variable(ctx, 0);
        CHECK(cayley_operator(CayleyOp::EPlus, a0, d) == MultiPoly::variable(ctx, 1) * Rational(d));
        CHECK(cayley_operator(CayleyOp::EMinus, a0.pow(3), d).is_zero());
    }
    CHECK_THROWS_AS(cayley_operator(CayleyOp::EPlus, a_poly("a0", 3), 4), ContextError);
    CHECK_THROWS_AS(cayley_operator(CayleyOp::GammaPlus, a_poly("a0", 3), 3), ContextError);
}

TEST_CASE("commutator of E+ and E- is E0")
{
    for (int trial = 0; trial < 30; ++trial) {
        const int d = static_cast<int>(rand_int(1, 6));
        auto p = rand_poly(coefficient_context(d), 5, 3);
        auto pm = cayley_operator(CayleyOp::EPlus, cayley_operator(CayleyOp::EMinus, p, d), d);
        auto mp = cayley_operator(CayleyOp::EMinus, cayley_operator(CayleyOp::EPlus, p, d), d);
        CHECK(pm - mp == cayley_operator(CayleyOp::EZero, p, d));
    }
}

TEST_CASE("raising operator power identity")
{
    // E- E+^(n+1) = E+^(n+1) E- - (n+1) E+^n E0 - n(n+1) E+^n
    for (int trial = 0; trial < 25; ++trial) {
        const int d = static_cast<int>(rand_int(1, 6));
        const auto n = static_cast<unsigned>(rand_int(0, 4));
        auto p = rand_poly(coefficient_context(d), 4, 3);
        auto lhs = cayley_operator(CayleyOp::EMinus, cayley_operator(CayleyOp::EPlus, p, d, n + 1), d);
        auto rhs = cayley_operator(CayleyOp::EPlus, cayley_operator(CayleyOp::EMinus, p, d), d, n + 1) -
                   cayley_operator(CayleyOp::EPlus, cayley_operator(CayleyOp::EZero, p, d), d, n) * Rational(n + 1) -
                   cayley_operator(CayleyOp::EPlus, p, d, n) * Rational(n * (n + 1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("covariant from its source")
{
    auto disc = covariant_from_source(a_poly("a0*a2 - a1^2", 2), 2);
    CHECK(disc.order() == 0);
    CHECK(disc.degree() == 2);
    CHECK(disc.source() == a_poly("a0*a2 - a1^2", 2));

    auto phi = covariant_from_source(a_poly("a0^2*a3 - 3*a0*a1*a2 + 2*a1^3", 6), 6);
    CHECK(phi.order() == 12);
    CHECK(phi.weight() == 3);
    auto poly = phi.bihomogeneous();
    auto rest = poly.context()->without("x");
    const unsigned p111[] = {11, 1};
    const unsigned p102[] = {10, 2};
    CHECK(poly.coefficient("x", p111) == parse_poly("12*a1^2*a2 - 15*a0*a2^2 + 3*a0^2*a4", rest));
    CHECK(poly.coefficient("x", p102) ==
          parse_poly("15*a1*a2^2 + 3*a0^2*a5 + 18*a0*a1*a4 + 24*a1^2*a3 - 60*a0*a2*a3", rest));

    CHECK_THROWS_AS(covariant_from_source(a_poly("a1", 2), 2), DomainError);
    CHECK_THROWS_AS(covariant_from_source(MultiPoly(coefficient_context(2)), 2), DomainError);
    CHECK_THROWS_AS(covariant_from_source(a_poly("a0 + a1^2", 2), 2), DomainError);
}

TEST_CASE("source round trip on transvectants")
{
    for (int d = 2; d <= 6; ++d) {
        auto f = BinaryForm::generic(d);
        auto ff2 = Covariant::from_form(transvectant(f, f, 2), d);
        CHECK(verify_covariant(ff2).is_covariant);
        CHECK(covariant_from_source(ff2.source(), d) == ff2);
    }
}

TEST_CASE("covariant verification")
{
    for (int d = 1; d <= 6; ++d) {
        auto f = Covariant::from_form(BinaryForm::generic(d), d);
        CHECK(verify_covariant(f).is_covariant);
    }
    auto ctx = coefficient_context(2);
    Covariant bad(2, 1, 2,
                  {parse_poly("2*a0", ctx), parse_poly("a1", ctx), parse_poly("a2", ctx)});
    auto cert = verify_covariant(bad);
    CHECK_FALSE(cert.is_covariant);
    REQUIRE_FALSE(cert.failing.empty());
    CHECK(cert.failing.front() == CayleyOp::GammaMinus);

    auto f6 = BinaryForm::generic(6);
    auto phi = Covariant::from_form(transvectant(f6, transvectant(f6, f6, 2), 1), 6);
    CHECK(phi.degree() == 3);
    CHECK(phi.order() == 12);
    CHECK(verify_covariant(phi).is_covariant);
    CHECK(covariant_from_source(phi.source(), 6) == phi);
}

TEST_CASE("covariant type invariants")
{
    auto ctx = coefficient_context(2);
    CHECK_THROWS_AS(Covariant(2, 1, 2, {parse_poly("a1", ctx), parse_poly("a1", ctx), parse_poly("a2", ctx)}),
                    DomainError);
    CHECK_THROWS_AS(Covariant(2, 1, 1, {parse_poly("a0", ctx), parse_poly("a1", ctx)}), DomainError);
    CHECK_THROWS_AS(Covariant(2, 1, 2, {parse_poly("a0", ctx), parse_poly("a1", ctx)}), DomainError);
}

TEST_CASE("random compound transvectants are covariants")
{
    for (int trial = 0; trial < 15; ++trial) {
        const int d = static_cast<int>(rand_int(2, 5));
        auto f = BinaryForm::generic(d);
        auto inner = transvectant(f, f, 2 * static_cast<int>(rand_int(0, d / 2)));
        auto outer = transvectant(f, inner, static_cast<int>(rand_int(0, std::min(d, inner.order()))));
        if (outer.is_zero()) {
            continue;
        }
        auto phi = Covariant::from_form(outer, d);
        CHECK(phi.degree() == 3);
        CHECK(verify_covariant(phi).is_covariant);
        CHECK(covariant_from_source(phi.source(), d) == phi);
    }
}

TEST_CASE("partition counts and Cayley-Sylvester")
{
    CHECK(partition_count(6, 6, 3) == 7);
    CHECK(partition_count(5, 6, 3) == 5);
    CHECK(zeta(6, 3, 6) == 2);
    CHECK(zeta(15, 6, 78) == 4);
    for (int d = 1; d <= 10; ++d) {
        CHECK(zeta(d, 1, d) == 1);
    }
    CHECK(partition_count(0, 0, 0) == 1);
    CHECK(partition_count(-1, 3, 3) == 0);
    CHECK(zeta(3, 2, 3) == 0);
}

TEST_CASE("dimension counts agree with explicit bases")
{
    // C(6,3,6) is spanned by F (F,F)_6 and (F,(F,F)_4)_2
    auto f = BinaryForm::generic(6);
    auto one = Covariant::from_form(f * transvectant(f, f, 6), 6);
    auto two = Covariant::from_form(transvectant(f, transvectant(f, f, 4), 2), 6);
    CHECK_FALSE(proportionality(one.source(), two.source()).has_value());
}

TEST_CASE("identity checks")
{
    CHECK(identity_check("T(F,F,2)", "T(F,F,2)", 4));
    for (int d : {5, 6}) {
        CHECK(identity_check("T(F,T(F,F,4),1)", "{2*(2*d-5)/(d-4)}*T(F,T(F,F,2),3)", d));
    }
    for (int d : {4, 5, 6}) {
        CHECK(identity_check("MUL(F,F,T(F,F,4))",
                             "{d*(2*d-5)/((d-3)*(2*d-1))}*T(F,F,2)^2 + {2*(2*d-5)/(d-3)}*T(MUL(F,F),T(F,F,2),2)", d));
    }
    CHECK_FALSE(identity_check("T(F,F,2)", "2*T(F,F,2)", 4));
    CHECK_THROWS_AS(identity_check("T(F,F,2)", "F", 4), DomainError);
    CHECK_THROWS_AS(identity_check("T(F,F", "F", 4), ParseError);
    CHECK_THROWS_AS(identity_check("{1/(d-4)}*F", "F", 4), DomainError);
}
