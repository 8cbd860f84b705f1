#pragma once

#include "covforge/matrix.hpp"
#include "covforge/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace covforge {

/// Degree-m monomials in a0..ad, ordered by isobaric weight and then grlex.
class MonomialBasis {
public:
    /// Shared instance per (d, m).
    static std::shared_ptr<const MonomialBasis> get(int d, int m);

    int source_order() const { return d_; }
    int degree() const { return m_; }
    std::size_t size() const { return monomials_.size(); }
    const Exponents& monomial(std::size_t i) const { return monomials_[i]; }
    unsigned weight(std::size_t i) const { return weights_[i]; }
    std::optional<std::size_t> index_of(const Exponents& e) const;

    unsigned max_weight() const { return static_cast<unsigned>(d_ * m_); }
    /// Half-open index range of the monomials of weight w.
    std::pair<std::size_t, std::size_t> block(unsigned w) const { return blocks_.at(w); }

    MonomialBasis(int d, int m);

private:
    int d_;
    int m_;
    std::vector<Exponents> monomials_;
    std::vector<unsigned> weights_;
    std::vector<std::pair<std::size_t, std::size_t>> blocks_;
    std::unordered_map<Exponents, std::size_t, ExponentsHash> index_;
};

/// dim R_m refused above this. Reads COVFORGE_MAX_DIM, default 20000.
std::size_t feasibility_limit();
/// Ambient dimension up to which ranks are computed exactly.
inline constexpr std::size_t kExactRankLimit = 2000;

/// A subspace of R_m = Q[a0..ad]_m given by isobaric spanning rows.
/// Rows are indexed by the shared monomial basis.
class GradedPiece {
public:
    /// Every row must be supported in a single weight block.
    GradedPiece(std::shared_ptr<const MonomialBasis> basis, std::vector<SparseRow> rows);

    static GradedPiece from_polynomials(int d, int m, const std::vector<MultiPoly>& polys);

    int source_order() const { return basis_->source_order(); }
    int degree() const { return basis_->degree(); }
    const MonomialBasis& basis() const { return *basis_; }
    const std::shared_ptr<const MonomialBasis>& basis_ptr() const { return basis_; }
    const std::vector<SparseRow>& rows() const { return rows_; }
    std::size_t ambient_dimension() const { return basis_->size(); }

    /// Rank of the spanning rows. Exact up to kExactRankLimit ambient
    /// dimension, above that the larger of two modular ranks (a lower bound).
    std::size_t dimension() const;
    bool dimension_exact() const { return basis_->size() <= kExactRankLimit; }
    /// Exact rank regardless of size.
    std::size_t exact_dimension() const;

    /// Rows of one weight block, with columns local to that block.
    RatMatrix block_matrix(unsigned w) const;
    /// Dense matrix over the full monomial basis.
    RatMatrix span() const;
    /// Spanning rows as polynomials in a0..ad.
    std::vector<MultiPoly> polynomials() const;

private:
    std::size_t compute_rank(bool exact) const;

    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<SparseRow> rows_;
    std::vector<std::vector<std::size_t>> by_block_;
    mutable std::optional<std::size_t> rank_;
    mutable std::optional<std::size_t> exact_rank_;
};

/// Degree-m piece of J = (h_0, ..., h_N), the ideal of Hilbert covariant coefficients.
GradedPiece j_piece(int r, int d, int m);

/// Cayley coefficients of G^(d/e) for a generic order-e form G in q0..qe.
/// Cached per (e, d).
const std::vector<MultiPoly>& power_map(int e, int d);

/// Degree-m piece of the ideal of d-ics that are (d/e)-th powers: the kernel of
/// a_i -> power_map(e, d)[i] on R_m.
GradedPiece ix_piece(int e, int d, int m);

/// dim R_m minus the rank of the substitution map, computed exactly.
std::size_t ix_dimension(int e, int d, int m);

/// Degree-m piece of the ideal of maximal minors of the generic alpha matrix.
GradedPiece g_piece(int r, int d, int m);

enum class Containment { Equal, FirstInSecond, SecondInFirst, Incomparable };
std::string to_string(Containment c);

struct PieceComparison {
    Containment relation;
    std::size_t dim_first;
    std::size_t dim_second;
    std::size_t dim_sum;
};

/// Exact comparison by ranks of stacked blocks. Throws ContextError when the
/// pieces live in different R_m.
PieceComparison compare_pieces(const GradedPiece& a, const GradedPiece& b);

/// Whether J_{r1,d} contains J_{r2,d}: every generator of the latter lies in
/// the degree r2+1 piece of the former.
bool ideal_containment(int r1, int r2, int d);

struct ScanRow {
    int degree;
    std::size_t dim_j;
    std::size_t dim_ix;
    bool equal;
    /// False when some reported dimension rests on modular ranks only. The
    /// equal/unequal verdict is always certified.
    bool dims_exact;
};

struct SaturationReport {
    int r;
    int d;
    int max_degree;
    std::vector<ScanRow> rows;
    /// Least m0 with equality for every m0 <= m <= max_degree.
    std::optional<int> candidate;
};

/// Compares dim J_m with dim (I_X)_m for m = r+1 .. max_degree, where X is the
/// variety of (d/r)-th powers of r-ics. Throws DomainError unless r | d and
/// InfeasibleError when dim R_max_degree exceeds feasibility_limit().
SaturationReport saturation_scan(int r, int d, int max_degree);

std::string to_csv(const SaturationReport& report);

/// Whether a0^r a_k occurs in h_{k-r-1} for every r+1 <= k <= d.
bool saturation_lemma_check(int r, int d);

} // namespace covforge
