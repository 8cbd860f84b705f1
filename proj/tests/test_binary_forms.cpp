#include "doctest.h"

#include "covforge/binary_form.hpp"
#include "covforge/error.hpp"
#include "covforge/matrix.hpp"
#include "covforge/poly_io.hpp"
#include "test_util.hpp"

using namespace covforge;
using covforge::testing::rand_form;
using covforge::testing::rand_int;
using covforge::testing::rand_unimodular;

namespace {

BinaryForm form(std::vector<long> cayley)
{
    std::vector<Rational> cs(cayley.begin(), cayley.end());
    return BinaryForm::from_rationals(cs);
}

// Form with x-polynomial coefficients given in the plain monomial basis.
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

TEST_CASE("form round trip through polynomials")
{
    auto f = BinaryForm::generic(3);
    auto p = f.to_polynomial();
    CHECK(to_string(p) == "a0*x1^3 + 3*a1*x1^2*x2 + 3*a2*x1*x2^2 + a3*x2^3");
    CHECK(BinaryForm::from_polynomial(p, 3) == f);
    CHECK_THROWS_AS(BinaryForm::from_polynomial(p, 2), DomainError);
}

TEST_CASE("product of forms matches polynomial product")
{
    for (int t = 0; t < 10; ++t) {
        auto a = rand_form(static_cast<int>(rand_int(0, 4)));
        auto b = rand_form(static_cast<int>(rand_int(0, 4)));
        auto ab = a * b;
        auto ctx = ab.polynomial_context();
        CHECK(ab.to_polynomial() == a.to_polynomial() * b.to_polynomial());
    }
}

TEST_CASE("transvectant examples")
{
    auto a = rand_form(3);
    auto b = rand_form(2);
    CHECK(transvectant(a, b, 0) == a * b);
    for (int d = 1; d <= 6; ++d) {
        auto f = BinaryForm::generic(d);
        CHECK(transvectant(f, f, 1).is_zero());
    }
    auto t = transvectant(plain({1, 0, 0}), plain({0, 0, 1}), 2);
    CHECK(t.order() == 0);
    CHECK(t.coefficient(0).constant_value() == 1);
}

TEST_CASE("transvectant symmetry and order bookkeeping")
{
    for (int trial = 0; trial < 25; ++trial) {
        const int p = static_cast<int>(rand_int(0, 5));
        const int q = static_cast<int>(rand_int(0, 5));
        const int k = static_cast<int>(rand_int(0, 6));
        auto a = rand_form(p);
        auto b = rand_form(q);
        auto ab = transvectant(a, b, k);
        auto ba = transvectant(b, a, k);
        CHECK(ab.order() == p + q - 2 * k);
        CHECK(ab == (k % 2 == 0 ? ba : ba * Rational(-1)));
        if (k > std::min(p, q)) {
            CHECK(ab.is_zero());
        }
    }
}

TEST_CASE("omega operator")
{
    auto ctx = Context::make({VarFamily::flat("x", 1, 2), VarFamily::flat("y", 1, 2)});
    CHECK(omega_apply(parse_poly("x1*y2", ctx), "x", "y", 1) == MultiPoly::constant(ctx, 1));
    CHECK(omega_apply(parse_poly("x1*y1", ctx), "x", "y", 1).is_zero());
    CHECK_THROWS_AS(omega_apply(parse_poly("x1", ctx), "x", "z", 1), ContextError);
}

TEST_CASE("omega operator reproduces transvectants")
{
    for (int trial = 0; trial < 20; ++trial) {
        const int p = static_cast<int>(rand_int(0, 4));
        const int q = static_cast<int>(rand_int(0, 4));
        const int k = static_cast<int>(rand_int(0, std::min({p, q, 3})));
        auto a = rand_form(p);
        auto b = rand_form(q);
        auto ctx = Context::make({VarFamily::flat("x", 1, 2), VarFamily::flat("y", 1, 2)});
        auto pa = a.to_polynomial().embed(ctx);
        auto by = BinaryForm::from_rationals([&] {
                      std::vector<Rational> cs;
                      for (const auto& c : b.coefficients()) {
                          cs.push_back(c.constant_value());
                      }
                      return cs;
                  }(), "y")
                      .to_polynomial()
                      .embed(ctx);
        auto om = omega_apply(pa * by, "x", "y", static_cast<unsigned>(k));
        const auto x1 = MultiPoly::variable(ctx, ctx->var("x", 1));
        const auto x2 = MultiPoly::variable(ctx, ctx->var("x", 2));
        auto back = om.substitute({{ctx->var("y", 1), x1}, {ctx->var("y", 2), x2}});
        Rational pre(factorial(static_cast<unsigned>(p - k)) * factorial(static_cast<unsigned>(q - k)));
        pre /= Rational(factorial(static_cast<unsigned>(p)) * factorial(static_cast<unsigned>(q)));
        auto expect = transvectant(a, b, k).to_polynomial().embed(ctx);
        CHECK(back * pre == expect);
    }
}

TEST_CASE("wronskian examples")
{
    CHECK(wronskian({plain({1, 0}), plain({0, 1})}) == form({1}));
    auto a = rand_form(3);
    CHECK(wronskian({a, a}).is_zero());
    CHECK(wronskian({plain({1, 0, 0}), plain({0, 1, 0}), plain({0, 0, 1})}) == form({4}));
    CHECK_THROWS_AS(wronskian({plain({1, 0}), plain({1, 0, 0})}), DomainError);
}

TEST_CASE("wronskian vanishes exactly on dependent inputs")
{
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(rand_int(1, 4));
        const int m = static_cast<int>(rand_int(1, n + 1));
        std::vector<BinaryForm> fs;
        for (int i = 0; i < m; ++i) {
            if (i > 0 && rand_int(0, 2) == 0) {
                fs.push_back(fs[0] * Rational(rand_int(-2, 2)) + rand_form(n, 0));
            } else {
                fs.push_back(rand_form(n, 1));
            }
        }
        RatMatrix coeffs(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j <= n; ++j) {
                coeffs.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
                    fs[static_cast<std::size_t>(i)].coefficient(j).constant_value();
            }
        }
        const bool dependent = !matrix_kernel(coeffs).empty();
        const auto w = wronskian(fs);
        CHECK(w.order() == m * (n - m + 1));
        CHECK(w.is_zero() == dependent);
    }
}

TEST_CASE("hessian")
{
    for (int d = 2; d <= 6; ++d) {
        std::vector<long> power(static_cast<std::size_t>(d) + 1, 0);
        power[0] = 1;
        CHECK(hessian(plain(power)).is_zero());
        std::vector<long> ones(static_cast<std::size_t>(d) + 1, 1);
        CHECK(hessian(form(ones)).is_zero()); // (x1 + x2)^d
    }
    for (int d = 2; d <= 8; ++d) {
        auto f = BinaryForm::generic(d);
        auto he = hessian(f);
        CHECK(he.order() == 2 * d - 4);
        auto ratio = proportionality(he, transvectant(f, f, 2));
        REQUIRE(ratio.has_value());
        Rational expect(d * d * (d - 1) * (d - 1), 2);
        expect.canonicalize();
        CHECK(*ratio == expect);
    }
    CHECK_THROWS_AS(hessian(form({1, 2})), DomainError);
}

TEST_CASE("unimodular transformations")
{
    auto f = BinaryForm::generic(4);
    const std::array<std::array<Rational, 2>, 2> id{{{1, 0}, {0, 1}}};
    CHECK(sl2_transform(f, id) == f);
    const std::array<std::array<Rational, 2>, 2> rot{{{0, -1}, {1, 0}}};
    auto g2 = sl2_transform(BinaryForm::generic(2), rot);
    auto ctx = g2.coefficient_context();
    CHECK(g2.coefficient(0) == parse_poly("a2", ctx));
    CHECK(g2.coefficient(1) == parse_poly("-a1", ctx));
    CHECK(g2.coefficient(2) == parse_poly("a0", ctx));
    const std::array<std::array<Rational, 2>, 2> bad{{{1, 1}, {1, 1}}};
    CHECK_THROWS_AS(sl2_transform(f, bad), DomainError);

    for (int trial = 0; trial < 10; ++trial) {
        auto h = rand_form(static_cast<int>(rand_int(2, 5)));
        auto g = rand_unimodular();
        CHECK(hessian(sl2_transform(h, g)) == sl2_transform(hessian(h), g));
    }
}

TEST_CASE("wronskian equivariance under the quarter turn")
{
    const std::array<std::array<Rational, 2>, 2> rot{{{0, -1}, {1, 0}}};
    for (int trial = 0; trial < 10; ++trial) {
        const int n = static_cast<int>(rand_int(1, 4));
        const int m = static_cast<int>(rand_int(1, n + 1));
        std::vector<BinaryForm> cs;
        std::vector<BinaryForm> turned;
        for (int i = 0; i < m; ++i) {
            cs.push_back(rand_form(n));
            turned.push_back(sl2_transform(cs.back(), rot));
        }
        auto lhs = wronskian(cs);
        // W(C^g) evaluated at (x2, -x1) is W(C^g)^h with h = [[0,1],[-1,0]].
        const std::array<std::array<Rational, 2>, 2> back{{{0, 1}, {-1, 0}}};
        auto rhs = sl2_transform(wronskian(turned), back);
        CHECK(lhs == rhs);
    }
}
