#pragma once

#include "covforge/context.hpp"
#include "covforge/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace covforge {

/// Exponent vector over all variables of a context. Exponents are capped at 255.
using Exponents = boost::container::small_vector<std::uint8_t, 24>;

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept;
};

unsigned total_degree(const Exponents& e);

/// Graded lexicographic order; earlier variables dominate.
bool grlex_less(const Exponents& a, const Exponents& b);

struct Term {
    Exponents exps;
    Rational coef;
};

/// Sparse polynomial with exact rational coefficients over a fixed context.
/// Terms are kept sorted ascending in grlex order with no zero coefficients.
class MultiPoly {
public:
    explicit MultiPoly(ContextPtr ctx);

    static MultiPoly constant(ContextPtr ctx, const Rational& c);
    static MultiPoly variable(ContextPtr ctx, std::size_t var, unsigned power = 1);
    static MultiPoly monomial(ContextPtr ctx, Exponents exps, const Rational& c);
    /// Sums duplicate exponent vectors and drops zeros.
    static MultiPoly from_terms(ContextPtr ctx, std::vector<Term> terms);
    /// Terms must already be grlex-sorted, unique and nonzero.
    static MultiPoly from_canonical(ContextPtr ctx, std::vector<Term> terms);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Value of a constant polynomial; throws DomainError otherwise.
    Rational constant_value() const;
    Rational coefficient_of(const Exponents& e) const;

    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;
    /// Variables that occur with a positive exponent.
    std::vector<std::size_t> support() const;

    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(const MultiPoly& other);
    MultiPoly& operator*=(const Rational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;

    bool operator==(const MultiPoly& other) const;

    MultiPoly pow(long n) const;
    MultiPoly diff(std::size_t var, unsigned times = 1) const;

    /// Simultaneous substitution; unbound variables are carried over by name into `target`.
    MultiPoly substitute(const std::map<std::size_t, MultiPoly>& bindings, ContextPtr target) const;
    MultiPoly substitute(const std::map<std::size_t, MultiPoly>& bindings) const;

    /// Re-express in a context that contains every variable name used here.
    MultiPoly embed(ContextPtr target) const;

    /// Coefficient of the monomial with the given exponents in `family`,
    /// expressed in the context without that family.
    MultiPoly coefficient(std::string_view family, std::span<const unsigned> pattern) const;

    /// Degree in the variables of one family; nullopt if not homogeneous there.
    /// The zero polynomial reports nullopt.
    std::optional<unsigned> homogeneous_degree(std::string_view family) const;
    bool is_homogeneous(std::string_view family, unsigned degree) const;
    /// Isobaric with variable k of the family carrying weight (first index + k).
    bool is_isobaric(std::string_view family, unsigned weight) const;

private:
    void require_same(const MultiPoly& other) const;

    ContextPtr ctx_;
    std::vector<Term> terms_;
};

/// Linear first-order operator sum_k c_k * v_target(k) * d/d v_source(k).
/// A part without target acts as c_k * d/d v_source(k).
class LinearDerivation {
public:
    struct Part {
        std::optional<std::size_t> target;
        std::size_t source;
        Rational coef;
    };

    LinearDerivation() = default;
    explicit LinearDerivation(std::vector<Part> parts) : parts_(std::move(parts)) {}

    void add(std::optional<std::size_t> target, std::size_t source, const Rational& coef);
    MultiPoly apply(const MultiPoly& p) const;
    MultiPoly apply(const MultiPoly& p, unsigned times) const;

private:
    std::vector<Part> parts_;
};

/// Reusable substitution with memoized monomial images; cheap to apply to many
/// polynomials sharing the same bindings.
class Substitution {
public:
    Substitution(ContextPtr source, ContextPtr target);

    void bind(std::size_t var, MultiPoly value);
    MultiPoly apply(const MultiPoly& p);
    const ContextPtr& target() const { return target_; }

private:
    const MultiPoly& image_of(const Exponents& e);

    ContextPtr source_;
    ContextPtr target_;
    std::vector<std::optional<MultiPoly>> var_images_;
    std::unordered_map<Exponents, MultiPoly, ExponentsHash> cache_;
};

} // namespace covforge
