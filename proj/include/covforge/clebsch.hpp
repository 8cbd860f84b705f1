#pragma once

#include "covforge/binary_form.hpp"
#include "covforge/poly.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covforge {

using MultiIndex = std::vector<unsigned>;

/// All exponent vectors of length n summing to d, lexicographically descending
/// (x1^d first).
std::vector<MultiIndex> multi_indices(int n, int d);

/// d! / prod i_k!
Integer multinomial(const MultiIndex& index);

/// n-ary form sum_I (d choose I) a_I x^I in x1..xn. Coefficients live in their
/// own context, which must not contain the families x, p, q, u or lam.
class NaryForm {
public:
    /// Missing multi-indices are zero.
    NaryForm(int n, int order, std::map<MultiIndex, MultiPoly> coefficients, ContextPtr coefficient_ctx);

    static NaryForm from_rationals(int n, int order, const std::map<MultiIndex, Rational>& coefficients);
    /// Reads off a_I from a polynomial homogeneous of degree `order` in
    /// x1..xn; every other variable becomes part of the coefficient context.
    static NaryForm from_polynomial(const MultiPoly& p, int n, int order);

    int variables() const { return n_; }
    int order() const { return order_; }
    const std::map<MultiIndex, MultiPoly>& coefficients() const { return coeffs_; }
    const MultiPoly& coefficient(const MultiIndex& index) const;
    const ContextPtr& coefficient_context() const { return coeff_ctx_; }

    ContextPtr polynomial_context() const;
    MultiPoly to_polynomial() const;
    bool is_zero() const;

    NaryForm operator*(const NaryForm& other) const;
    NaryForm pow(unsigned k) const;
    bool operator==(const NaryForm& other) const;

private:
    int n_;
    int order_;
    std::map<MultiIndex, MultiPoly> coeffs_;
    ContextPtr coeff_ctx_;
    MultiPoly zero_;
};

/// Substitutes x_i = lam1 p_i + lam2 q_i with fresh families p, q (indices
/// 1..n). The result is a binary form in lam whose coefficients are
/// polynomials in the form's coefficients and p, q.
BinaryForm restrict_to_line(const NaryForm& form);

/// Same substitution with given p_i, q_i (polynomials over one shared context).
BinaryForm restrict_along(const NaryForm& form, const std::vector<MultiPoly>& p, const std::vector<MultiPoly>& q);

/// Whether the Hilbert covariant of index r (a nonzero multiple of the basic
/// Goettingen covariant) vanishes identically on the symbolic line
/// restriction, i.e. jointly in lam, p and q.
bool transfer_vanishing_test(const NaryForm& form, int r);

enum class FactorKind { Bracket, UBracket, Linear };

/// One factor of a symbolic product: a determinant of letter rows (optionally
/// with u as last row) or a pairing l_x = sum l_i x_i, raised to `power`.
struct BracketFactor {
    FactorKind kind;
    std::vector<std::size_t> letters;
    unsigned power;
};

class BracketExpr {
public:
    BracketExpr(std::vector<char> letters, std::vector<BracketFactor> factors);

    const std::vector<char>& letters() const { return letters_; }
    const std::vector<BracketFactor>& factors() const { return factors_; }
    /// Common row count of the brackets; nullopt when there are none.
    std::optional<std::size_t> arity() const;
    unsigned letter_degree(std::size_t letter) const;
    unsigned x_degree() const;
    unsigned u_degree() const;
    std::string to_string() const;

private:
    std::vector<char> letters_;
    std::vector<BracketFactor> factors_;
};

/// Grammar: factors separated by whitespace or '*'; "(a b u)" or "(abc)" is a
/// bracket, "a_x" a pairing, each optionally followed by "^k". Letters are
/// single lowercase characters other than u and x, ordered by first use.
BracketExpr parse_bracket(std::string_view text);

/// Expands the bracket product in letter coordinates (families l<letter>),
/// then replaces each degree-d monomial l^I of each letter by a_I. The result
/// is a polynomial in the form's coefficients and x1..xn, u1..un.
MultiPoly umbral_evaluate(const BracketExpr& expr, const NaryForm& form);

/// Whether a polynomial in x1..xn, u1..un (and anything else) vanishes
/// wherever sum u_i x_i = 0, i.e. is divisible by that pairing. Checked by
/// substituting u = A x for a generic antisymmetric A.
bool vanishes_on_incidence(const MultiPoly& p, int n);

/// The basic Goettingen covariant of index 2 on the restriction of a ternary
/// quartic to the line with coordinates u, through each of the three point
/// pairs (p, q) = ([u3,0,-u1],[u2,-u1,0]), ([0,u3,-u2],[u2,-u1,0]),
/// ([0,u3,-u2],[u3,0,-u1]). Coefficients are polynomials in u1..u3.
std::array<BinaryForm, 3> bitangent_system(const NaryForm& form);

/// Dimension of the degree-m piece of the ideal of n-ary d-ics that are
/// (d/e)-th powers of e-ics, as the kernel of the induced substitution.
std::size_t nary_power_ideal_dimension(int n, int e, int d, int m);

} // namespace covforge
