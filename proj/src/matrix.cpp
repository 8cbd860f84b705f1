#include "covforge/matrix.hpp"

#include "covforge/error.hpp"

#include <algorithm>
#include <utility>

namespace covforge {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols)
{
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw DomainError("ragged rows in matrix construction");
        }
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<long>(i * cols));
    }
    return m;
}

RatMatrix RatMatrix::transposed() const
{
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t.at(j, i) = at(i, j);
        }
    }
    return t;
}

RatMatrix RatMatrix::stacked(const RatMatrix& below) const
{
    if (below.cols_ != cols_ && below.rows_ != 0 && rows_ != 0) {
        throw DomainError("column mismatch when stacking matrices");
    }
    RatMatrix out = rows_ == 0 ? RatMatrix(0, below.cols_) : *this;
    out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
    out.rows_ += below.rows_;
    return out;
}

void RatMatrix::append_row(std::span<const Rational> values)
{
    if (values.size() != cols_) {
        throw DomainError("row length mismatch");
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

std::vector<Rational> RatMatrix::apply(std::span<const Rational> v) const
{
    if (v.size() != cols_) {
        throw DomainError("vector length mismatch");
    }
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (sgn(at(i, j)) != 0 && sgn(v[j]) != 0) {
                s += at(i, j) * v[j];
            }
        }
        out[i] = s;
    }
    return out;
}

namespace {

// Each row multiplied by the lcm of its denominators; zero rows dropped.
std::vector<std::vector<Integer>> integer_rows(const RatMatrix& m)
{
    std::vector<std::vector<Integer>> out;
    out.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        Integer l = 1;
        bool nonzero = false;
        for (const auto& q : r) {
            if (sgn(q) != 0) {
                nonzero = true;
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
            }
        }
        if (!nonzero) {
            continue;
        }
        std::vector<Integer> row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (sgn(r[j]) != 0) {
                mpz_divexact(row[j].get_mpz_t(), l.get_mpz_t(), r[j].get_den_mpz_t());
                row[j] *= r[j].get_num();
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    while (e > 0) {
        if (e & 1) {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

} // namespace

std::size_t matrix_rank(const RatMatrix& m)
{
    auto a = integer_rows(m);
    const std::size_t rows = a.size();
    const std::size_t cols = m.cols();
    std::size_t rank = 0;
    Integer prev = 1;
    Integer t1, t2;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        // Smallest nonzero entry keeps intermediate growth down.
        std::size_t piv = rows;
        for (std::size_t i = rank; i < rows; ++i) {
            if (sgn(a[i][c]) != 0 &&
                (piv == rows || mpz_sizeinbase(a[i][c].get_mpz_t(), 2) < mpz_sizeinbase(a[piv][c].get_mpz_t(), 2))) {
                piv = i;
            }
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[rank]);
        const auto& prow = a[rank];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            auto& row = a[i];
            const Integer lead = row[c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                // row[j] = (prow[c]*row[j] - lead*prow[j]) / prev, exact
                mpz_mul(t1.get_mpz_t(), prow[c].get_mpz_t(), row[j].get_mpz_t());
                if (sgn(lead) != 0 && sgn(prow[j]) != 0) {
                    mpz_mul(t2.get_mpz_t(), lead.get_mpz_t(), prow[j].get_mpz_t());
                    mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                }
                mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = prow[c];
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rational>> matrix_kernel(const RatMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<Rational>> a(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        a[i].assign(m.row(i).begin(), m.row(i).end());
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    Rational f;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (sgn(a[i][c]) != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[r]);
        const Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) {
            if (sgn(a[r][j]) != 0) {
                a[r][j] *= inv;
            }
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) {
                continue;
            }
            f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                if (sgn(a[r][j]) != 0) {
                    a[i][j] -= f * a[r][j];
                }
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            v[pivot_cols[i]] = -a[i][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t modular_rank(const RatMatrix& m, std::uint64_t prime)
{
    const auto ints = integer_rows(m);
    const std::size_t cols = m.cols();
    std::vector<std::vector<std::uint64_t>> a(ints.size(), std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < ints.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (sgn(ints[i][j]) != 0) {
                a[i][j] = mpz_fdiv_ui(ints[i][j].get_mpz_t(), prime);
            }
        }
    }
    std::size_t rank = 0;
    const std::size_t rows = a.size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = rank; i < rows; ++i) {
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[rank]);
        const std::uint64_t inv = pow_mod(a[rank][c], prime - 2, prime);
        for (std::size_t j = c; j < cols; ++j) {
            a[rank][j] = mul_mod(a[rank][j], inv, prime);
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const std::uint64_t f = a[i][c];
            if (f == 0) {
                continue;
            }
            const std::uint64_t nf = prime - f;
            for (std::size_t j = c; j < cols; ++j) {
                if (a[rank][j] != 0) {
                    a[i][j] = (a[i][j] + mul_mod(nf, a[rank][j], prime)) % prime;
                }
            }
        }
        ++rank;
    }
    return rank;
}

std::size_t modular_rank(const std::vector<SparseRow>& rows, std::size_t cols, std::uint64_t prime)
{
    // echelon rows indexed by pivot column, each normalized to 1 at its pivot
    std::vector<std::vector<std::uint64_t>> pivots(cols);
    std::size_t rank = 0;
    std::vector<std::uint64_t> v(cols);
    Integer tmp;
    for (const auto& row : rows) {
        if (rank == cols) {
            break;
        }
        std::fill(v.begin(), v.end(), 0);
        std::size_t first = cols;
        for (const auto& [c, q] : row) {
            const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), prime);
            if (den == 0) {
                throw DomainError("denominator vanishes modulo the chosen prime");
            }
            const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), prime);
            v[c] = mul_mod(num, pow_mod(den, prime - 2, prime), prime);
            if (v[c] != 0) {
                first = std::min<std::size_t>(first, c);
            }
        }
        for (std::size_t c = first; c < cols; ++c) {
            if (v[c] == 0) {
                continue;
            }
            if (pivots[c].empty()) {
                const std::uint64_t inv = pow_mod(v[c], prime - 2, prime);
                for (std::size_t j = c; j < cols; ++j) {
                    v[j] = mul_mod(v[j], inv, prime);
                }
                pivots[c] = v;
                ++rank;
                break;
            }
            const std::uint64_t f = prime - v[c];
            const auto& p = pivots[c];
            for (std::size_t j = c; j < cols; ++j) {
                if (p[j] != 0) {
                    v[j] = (v[j] + mul_mod(f, p[j], prime)) % prime;
                }
            }
        }
    }
    return rank;
}

} // namespace covforge
