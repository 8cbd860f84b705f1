#pragma once

#include "covforge/covariant.hpp"
#include "covforge/matrix.hpp"

#include <optional>

namespace covforge {

/// Coefficients of a form in the plain monomial basis x1^(d-i) x2^i.
std::vector<MultiPoly> plain_coefficients(const BinaryForm& f);
/// Form with the given plain monomial coefficients (all in one context).
BinaryForm form_from_plain(const std::vector<MultiPoly>& coeffs, ContextPtr ctx, const std::string& var_family = "x");
BinaryForm form_from_plain(const std::vector<Rational>& coeffs, const std::string& var_family = "x");

/// Matrix of A -> (A, F)_1 from order-r forms to order r+d-2 forms, with
/// column j the plain coefficients of (x1^(r-j) x2^j, F)_1. F must have
/// rational coefficients.
RatMatrix alpha_matrix(const BinaryForm& f, int r);
/// Same for the generic d-ic; entries are linear in a0..ad.
std::vector<std::vector<MultiPoly>> alpha_matrix_generic(int r, int d);

/// Kernel of the map above, as order-r forms.
std::vector<BinaryForm> alpha_kernel(const BinaryForm& f, int r);

struct PowerDecomposition {
    BinaryForm base;
    int mu;
    Rational scalar;
};

/// Writes F = scalar * G^mu with G primitive integral and positive leading
/// coefficient, or returns nullopt when F is not a mu-th power.
/// Throws DomainError when mu does not divide the order or F is zero.
std::optional<PowerDecomposition> perfect_power_decompose(const BinaryForm& f, int mu);

/// True iff the covariant evaluated at F is the zero form.
bool vanishing_test(const Covariant& phi, const BinaryForm& f);

} // namespace covforge
