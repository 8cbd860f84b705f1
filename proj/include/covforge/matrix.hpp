#pragma once

#include "covforge/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace covforge {

/// Dense row-major matrix of rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    RatMatrix transposed() const;
    /// Rows of `this` followed by rows of `below`; column counts must agree.
    RatMatrix stacked(const RatMatrix& below) const;
    void append_row(std::span<const Rational> values);

    std::vector<Rational> apply(std::span<const Rational> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Exact rank over Q by fraction-free (Bareiss) elimination on the
/// row-scaled integer matrix.
std::size_t matrix_rank(const RatMatrix& m);

/// Kernel basis {v : M v = 0}, one vector per free column of the reduced
/// row echelon form, with that free coordinate equal to 1.
std::vector<std::vector<Rational>> matrix_kernel(const RatMatrix& m);

/// Rank of the row-scaled integer matrix reduced modulo `prime`.
/// Always a lower bound for the rank over Q.
std::size_t modular_rank(const RatMatrix& m, std::uint64_t prime);

/// Sparse row: (column, value) pairs with distinct columns.
using SparseRow = std::vector<std::pair<std::uint32_t, Rational>>;

/// Rank modulo `prime` of the matrix whose rows are given, each row scaled
/// to clear denominators. Throws DomainError if a denominator vanishes mod p.
/// Stops early once the rank reaches `cols`.
std::size_t modular_rank(const std::vector<SparseRow>& rows, std::size_t cols, std::uint64_t prime);

/// Primes below 2^62 used by the modular pre-pass.
inline constexpr std::uint64_t kRankPrimes[] = {4611686018427387847ULL, 4611686018427387817ULL,
                                                 2305843009213693951ULL};

} // namespace covforge
