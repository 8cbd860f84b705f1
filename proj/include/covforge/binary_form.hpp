#pragma once

#include "covforge/poly.hpp"

#include <array>
#include <string>
#include <vector>

namespace covforge {

/// The two-variable family {name1, name2} carrying a binary form.
ContextPtr form_variables(const std::string& family);

/// Binary form sum_i C(d,i) c_i x1^(d-i) x2^i (Cayley convention).
/// The coefficients live in their own context, which must not contain the
/// form-variable family. A zero form may carry any declared order, including
/// a negative one produced by an out-of-range transvectant.
class BinaryForm {
public:
    BinaryForm(int order, std::vector<MultiPoly> coefficients, ContextPtr coefficient_ctx,
               std::string var_family = "x");

    /// (a0, ..., ad | x1, x2)^d with a fresh coefficient family.
    static BinaryForm generic(int d, const std::string& coeff_family = "a", const std::string& var_family = "x");
    static BinaryForm from_rationals(const std::vector<Rational>& cayley, const std::string& var_family = "x");
    static BinaryForm zero(int order, ContextPtr coefficient_ctx, const std::string& var_family = "x");
    /// Reads off Cayley coefficients of a polynomial homogeneous of degree
    /// `order` in the variable family; the rest of its context becomes the
    /// coefficient context.
    static BinaryForm from_polynomial(const MultiPoly& p, int order, const std::string& var_family = "x");

    int order() const { return order_; }
    const std::vector<MultiPoly>& coefficients() const { return coeffs_; }
    const MultiPoly& coefficient(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    const ContextPtr& coefficient_context() const { return coeff_ctx_; }
    const std::string& var_family() const { return var_family_; }

    /// Coefficient context followed by the form variables.
    ContextPtr polynomial_context() const;
    MultiPoly to_polynomial() const;

    bool is_zero() const;
    bool has_rational_coefficients() const;

    /// Same form with coefficients re-expressed in a larger context.
    BinaryForm embed(ContextPtr coefficient_ctx) const;

    BinaryForm operator+(const BinaryForm& other) const;
    BinaryForm operator-(const BinaryForm& other) const;
    BinaryForm operator*(const BinaryForm& other) const;
    BinaryForm operator*(const Rational& c) const;
    BinaryForm pow(unsigned n) const;
    bool operator==(const BinaryForm& other) const;

private:
    void require_compatible(const BinaryForm& other) const;

    int order_;
    std::vector<MultiPoly> coeffs_;
    ContextPtr coeff_ctx_;
    std::string var_family_;
};

/// (A,B)_k with the (p-k)!(q-k)!/(p!q!) prefactor. Returns the zero form of
/// order p+q-2k when k exceeds min(p,q).
BinaryForm transvectant(const BinaryForm& a, const BinaryForm& b, int k);

/// Omega^k with Omega = d^2/dx1 dy2 - d^2/dx2 dy1 for the variable pairs
/// (x1,x2) and (y1,y2), given as variable indices of P's context.
MultiPoly omega_apply_vars(const MultiPoly& p, std::array<std::size_t, 2> x, std::array<std::size_t, 2> y, unsigned k);
/// Same, for two flat two-variable families.
MultiPoly omega_apply(const MultiPoly& p, const std::string& x_family, const std::string& y_family, unsigned k);

/// Determinant of a square matrix of polynomials in one context.
MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m);

/// Determinant of (i,j) -> d^{m-1} A_i / dx1^{m-j} dx2^{j-1}.
BinaryForm wronskian(const std::vector<BinaryForm>& forms);

/// F_{x1x1} F_{x2x2} - F_{x1x2}^2.
BinaryForm hessian(const BinaryForm& f);

/// F(alpha x1 + beta x2, gamma x1 + delta x2) for g = [[alpha, gamma], [beta, delta]].
BinaryForm sl2_transform(const BinaryForm& f, const std::array<std::array<Rational, 2>, 2>& g);

/// Ratio c with a = c * b when both are nonzero and proportional; nullopt otherwise.
std::optional<Rational> proportionality(const MultiPoly& a, const MultiPoly& b);
std::optional<Rational> proportionality(const BinaryForm& a, const BinaryForm& b);

} // namespace covforge
