#pragma once

#include "covforge/covariant.hpp"

#include <vector>

namespace covforge {

/// base^exponent * poly, with a rational exponent that is never expanded.
struct PowerTerm {
    Rational exponent;
    MultiPoly poly;
};

/// Applies a derivation D to base^s * Q: base^(s-1) * (s*D(base)*Q + base*D(Q)).
PowerTerm apply_derivation(const PowerTerm& t, const MultiPoly& base, const LinearDerivation& der);

/// Truncated expansion f(t)^rho = a0^rho * sum_k (N_k / a0^k) t^k, where
/// f(t) = sum_i C(d,i) a_i t^i. Coefficient k is stored as the polynomial
/// N_k together with its a0-denominator power k.
class FracPowerSeries {
public:
    static FracPowerSeries power_of_generic(int d, const Rational& rho, int truncation);

    int source_order() const { return d_; }
    const Rational& base_exponent() const { return rho_; }
    int truncation() const { return static_cast<int>(numerators_.size()) - 1; }
    const MultiPoly& numerator(int k) const { return numerators_.at(static_cast<std::size_t>(k)); }
    int denominator_power(int k) const { return k; }

    /// theta_k = k! N_k / a0^k; returns the numerator k! N_k.
    MultiPoly theta_numerator(int k) const;

private:
    int d_ = 0;
    Rational rho_;
    std::vector<MultiPoly> numerators_;
};

/// h0 = a0^(r+1-r/d) E+^(r+1) (a0^(r/d)), a polynomial of degree and weight r+1.
MultiPoly hilbert_source(int r, int d);

/// (h_0, ..., h_N | x1, x2)^N with N = (r+1)(d-2).
Covariant hilbert_covariant(int r, int d);

/// Wronskian of C_i = (x1^(r-i) x2^i, F)_1, i = 0..r.
Covariant goettingen_basic(int r, int d);

struct GoettingenOptions {
    /// Largest r accepted by the permutation-sum construction.
    int max_r = 6;
};

/// Goettingen covariant of the generic d-ic attached to a covariant psi of
/// the generic (d-2)-ic of degree r+1.
Covariant goettingen_general(const Covariant& psi, int r, int d, const GoettingenOptions& opts = {});

/// The same construction carried out literally with the auxiliary y, z, b
/// variable families and Omega operators. Slow; meant for cross-checking.
Covariant goettingen_general_literal(const Covariant& psi, int r, int d);

/// prod_{i=0}^r i!(d+i-2)! / (r (d-2)!)^(r+1)
Rational kappa_scalar(int r, int d);

/// Checks that (x1 y2 - x2 y1)^(r+1) Hilb_{r,d} is a nonzero rational multiple
/// of F^(r+1-r/d) (y1 d/dx1 + y2 d/dx2)^(r+1) F^(r/d). Returns the ratio
/// (polar side over covariant side) when it holds.
std::optional<Rational> polar_identity_check(int r, int d);

/// Substitutes the Cayley coefficients of F for a0..ad in every coefficient.
BinaryForm evaluate_covariant(const Covariant& phi, const BinaryForm& f);

} // namespace covforge
