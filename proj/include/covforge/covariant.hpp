#pragma once

#include "covforge/binary_form.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covforge {

/// Context holding a0..ad, the coefficients of the generic d-ic.
ContextPtr coefficient_context(int d);

enum class CayleyOp { EPlus, EMinus, EZero, GammaPlus, GammaMinus, GammaZero };

std::string to_string(CayleyOp op);

/// Applies one of the coefficient-space operators for the generic d-ic.
/// P must contain the family a with indices 0..d; Gamma kinds also need x1, x2.
MultiPoly cayley_operator(CayleyOp op, const MultiPoly& p, int d, unsigned times = 1);

/// Weight sum k*n_k of an isobaric polynomial in the a family; nullopt for
/// zero or non-isobaric input.
std::optional<unsigned> isobaric_weight(const MultiPoly& p);

/// Covariant (phi_0, ..., phi_q | x1, x2)^q of degree m of the generic d-ic.
class Covariant {
public:
    /// Validates shape, homogeneity and the isobaric weights.
    Covariant(int source_order, int degree, int order, std::vector<MultiPoly> coefficients);

    /// The degree is read from the coefficients unless given; a zero form needs it given.
    static Covariant from_form(const BinaryForm& form, int source_order, std::optional<int> degree = std::nullopt);
    static Covariant zero(int source_order, int degree, int order);

    int source_order() const { return d_; }
    int degree() const { return m_; }
    int order() const { return q_; }
    int weight() const { return (d_ * m_ - q_) / 2; }
    const std::vector<MultiPoly>& coefficients() const { return coeffs_; }
    const MultiPoly& source() const { return coeffs_.front(); }
    bool is_zero() const;

    BinaryForm form() const;
    /// sum C(q,k) phi_k x1^(q-k) x2^k
    MultiPoly bihomogeneous() const;

    Covariant operator*(const Rational& c) const;
    bool operator==(const Covariant& other) const;

private:
    int d_;
    int m_;
    int q_;
    std::vector<MultiPoly> coeffs_;
};

/// phi_k = ((q-k)!/q!) E+^k phi_0. Throws DomainError when phi_0 is not a source.
Covariant covariant_from_source(const MultiPoly& source, int d);

struct CovariantCertificate {
    bool is_covariant = false;
    /// Operators that fail to annihilate, checked in the order Gamma-, Gamma+, Gamma0.
    std::vector<CayleyOp> failing;
};

CovariantCertificate verify_covariant(const Covariant& phi);

/// Partitions of n into at most k parts, each part at most l.
Integer partition_count(long n, long k, long l);
/// Dimension of the space of degree-m order-q covariants of binary d-ics.
Integer zeta(int d, int m, int q);

/// Value of a compound-transvectant expression of one base form.
struct FormExpr {
    BinaryForm form;
    int degree;
};

/// Evaluates expressions such as "T(F,T(F,F,2),1)", "MUL(F,F)",
/// "{2*(2*d-5)/(d-4)}*T(F,T(F,F,2),3) - 3/2*T(F,F,2)^2". Both F and B name
/// the base form; d inside braces is the base form's order.
FormExpr evaluate_form_expression(std::string_view text, const BinaryForm& base);

/// Compares two expressions of the generic d-ic coefficientwise.
/// Throws DomainError when the sides differ in degree or order.
bool identity_check(std::string_view lhs, std::string_view rhs, int d);

} // namespace covforge
