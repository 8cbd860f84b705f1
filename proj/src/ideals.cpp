#include "covforge/ideals.hpp"

#include "covforge/binary_form.hpp"
#include "covforge/covariant.hpp"
#include "covforge/error.hpp"
#include "covforge/hilbert.hpp"
#include "covforge/power.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace covforge {

namespace {

unsigned weight_of(const Exponents& e)
{
    unsigned w = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        w += static_cast<unsigned>(k) * e[k];
    }
    return w;
}

void compositions(std::size_t slots, unsigned total, Exponents& cur, std::size_t pos, std::vector<Exponents>& out)
{
    if (pos + 1 == slots) {
        cur[pos] = static_cast<std::uint8_t>(total);
        out.push_back(cur);
        return;
    }
    for (unsigned v = 0; v <= total; ++v) {
        cur[pos] = static_cast<std::uint8_t>(v);
        compositions(slots, total - v, cur, pos + 1, out);
    }
}

std::size_t exact_rank(const std::vector<SparseRow>& rows, std::size_t cols)
{
    if (rows.empty() || cols == 0) {
        return 0;
    }
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [c, v] : rows[i]) {
            m.at(i, c) = v;
        }
    }
    return matrix_rank(m);
}

// Larger of the ranks modulo the first two usable primes.
std::size_t probable_rank(const std::vector<SparseRow>& rows, std::size_t cols)
{
    std::size_t best = 0;
    int used = 0;
    for (auto p : kRankPrimes) {
        try {
            best = std::max(best, modular_rank(rows, cols, p));
        } catch (const DomainError&) {
            continue;
        }
        if (best == std::min(rows.size(), cols) || ++used == 2) {
            break;
        }
    }
    return best;
}

std::size_t single_modular_rank(const std::vector<SparseRow>& rows, std::size_t cols)
{
    for (auto p : kRankPrimes) {
        try {
            return modular_rank(rows, cols, p);
        } catch (const DomainError&) {
        }
    }
    return exact_rank(rows, cols);
}

void check_degree_args(int d, int m)
{
    if (d < 0 || m < 0) {
        throw DomainError("form order and degree must be nonnegative");
    }
}

void check_feasible(int d, int m)
{
    const Integer dim = binomial(d + m, d);
    if (dim > Integer(std::to_string(feasibility_limit()))) {
        throw InfeasibleError("dim R_" + std::to_string(m) + " = " + dim.get_str() + " for order " +
                              std::to_string(d) + " exceeds the feasibility limit " +
                              std::to_string(feasibility_limit()) + " (set COVFORGE_MAX_DIM to raise it)");
    }
}

// Row of u * p in the basis, where u is a monomial and p is homogeneous of the right degree.
SparseRow shifted_row(const MonomialBasis& basis, const Exponents& u, const MultiPoly& p)
{
    SparseRow row;
    row.reserve(p.size());
    for (const auto& t : p.terms()) {
        Exponents e = t.exps;
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] = static_cast<std::uint8_t>(e[k] + u[k]);
        }
        auto idx = basis.index_of(e);
        if (!idx) {
            throw DomainError("generator is not homogeneous of the expected degree");
        }
        row.emplace_back(static_cast<std::uint32_t>(*idx), t.coef);
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return row;
}

// Span of all monomial multiples of the generators in degree m.
GradedPiece multiples_piece(int d, int m, const std::vector<MultiPoly>& gens, int gen_degree)
{
    check_degree_args(d, m);
    auto basis = MonomialBasis::get(d, m);
    std::vector<SparseRow> rows;
    if (m >= gen_degree) {
        auto shifts = MonomialBasis::get(d, m - gen_degree);
        for (std::size_t i = 0; i < shifts->size(); ++i) {
            for (const auto& g : gens) {
                if (!g.is_zero()) {
                    rows.push_back(shifted_row(*basis, shifts->monomial(i), g));
                }
            }
        }
    }
    return GradedPiece(std::move(basis), std::move(rows));
}

std::vector<MultiPoly> hilbert_generators(int r, int d)
{
    auto h = hilbert_covariant(r, d);
    return h.coefficients();
}

// Images of the degree-m monomials under a_i -> power_map(e, d)[i], built one
// degree at a time from the previous layer.
class PowerImages {
public:
    PowerImages(int e, int d) : d_(d), f_(power_map(e, d))
    {
        basis_ = MonomialBasis::get(d, 0);
        layer_ = {MultiPoly::constant(f_.front().context(), 1)};
    }

    void advance()
    {
        auto next = MonomialBasis::get(d_, basis_->degree() + 1);
        std::vector<MultiPoly> images;
        images.reserve(next->size());
        for (std::size_t i = 0; i < next->size(); ++i) {
            Exponents e = next->monomial(i);
            std::size_t k = 0;
            while (e[k] == 0) {
                ++k;
            }
            --e[k];
            images.push_back(layer_[*basis_->index_of(e)] * f_[k]);
        }
        basis_ = std::move(next);
        layer_ = std::move(images);
    }

    void advance_to(int m)
    {
        while (basis_->degree() < m) {
            advance();
        }
    }

    // Rows of the substitution map restricted to one weight block: one row per
    // source monomial, columns indexed by the target monomials met.
    std::vector<SparseRow> block_rows(unsigned w, std::size_t& cols) const
    {
        auto [b, e] = basis_->block(w);
        std::unordered_map<Exponents, std::uint32_t, ExponentsHash> target;
        std::vector<SparseRow> rows;
        for (std::size_t i = b; i < e; ++i) {
            SparseRow row;
            for (const auto& t : layer_[i].terms()) {
                auto [it, fresh] = target.emplace(t.exps, static_cast<std::uint32_t>(target.size()));
                row.emplace_back(it->second, t.coef);
            }
            rows.push_back(std::move(row));
        }
        cols = target.size();
        return rows;
    }

    const MonomialBasis& basis() const { return *basis_; }

private:
    int d_;
    const std::vector<MultiPoly>& f_;
    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<MultiPoly> layer_;
};

void check_divides(int e, int d)
{
    if (e < 1 || d < 1 || d % e != 0) {
        throw DomainError("power-map ideal needs 1 <= e dividing d, got e=" + std::to_string(e) +
                          " d=" + std::to_string(d));
    }
}

std::vector<SparseRow> localize(const std::vector<SparseRow>& rows, const std::vector<std::size_t>& which,
                                std::size_t offset)
{
    std::vector<SparseRow> out;
    out.reserve(which.size());
    for (auto i : which) {
        SparseRow r = rows[i];
        for (auto& [c, v] : r) {
            c = static_cast<std::uint32_t>(c - offset);
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

MonomialBasis::MonomialBasis(int d, int m) : d_(d), m_(m)
{
    check_degree_args(d, m);
    if (m > 255) {
        throw DomainError("degree too large");
    }
    Exponents cur(static_cast<std::size_t>(d + 1), 0);
    compositions(cur.size(), static_cast<unsigned>(m), cur, 0, monomials_);
    std::stable_sort(monomials_.begin(), monomials_.end(), [](const Exponents& a, const Exponents& b) {
        const unsigned wa = weight_of(a), wb = weight_of(b);
        return wa != wb ? wa < wb : grlex_less(a, b);
    });
    blocks_.assign(static_cast<std::size_t>(d * m) + 1, {0, 0});
    weights_.reserve(monomials_.size());
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
        const unsigned w = weight_of(monomials_[i]);
        weights_.push_back(w);
        index_.emplace(monomials_[i], i);
        if (i == 0 || weights_[i - 1] != w) {
            blocks_[w].first = i;
        }
        blocks_[w].second = i + 1;
    }
    // empty blocks do not occur for d >= 1, but keep ranges well formed
    for (std::size_t w = 1; w < blocks_.size(); ++w) {
        if (blocks_[w].second == 0) {
            blocks_[w] = {blocks_[w - 1].second, blocks_[w - 1].second};
        }
    }
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int d, int m)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{d, m}];
    if (!slot) {
        slot = std::make_shared<const MonomialBasis>(d, m);
    }
    return slot;
}

std::optional<std::size_t> MonomialBasis::index_of(const Exponents& e) const
{
    auto it = index_.find(e);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t feasibility_limit()
{
    constexpr std::size_t fallback = 20000;
    const char* env = std::getenv("COVFORGE_MAX_DIM");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) {
        throw DomainError(std::string("COVFORGE_MAX_DIM must be a positive integer, got '") + env + "'");
    }
    return static_cast<std::size_t>(v);
}

GradedPiece::GradedPiece(std::shared_ptr<const MonomialBasis> basis, std::vector<SparseRow> rows)
    : basis_(std::move(basis)), rows_(std::move(rows))
{
    by_block_.resize(basis_->max_weight() + 1);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& row = rows_[i];
        if (row.empty()) {
            continue;
        }
        std::optional<unsigned> w;
        for (const auto& [c, v] : row) {
            if (c >= basis_->size()) {
                throw DomainError("row column outside the monomial basis");
            }
            if (w && *w != basis_->weight(c)) {
                throw DomainError("spanning row is not isobaric");
            }
            w = basis_->weight(c);
        }
        by_block_[*w].push_back(i);
    }
}

GradedPiece GradedPiece::from_polynomials(int d, int m, const std::vector<MultiPoly>& polys)
{
    return multiples_piece(d, m, polys, m);
}

RatMatrix GradedPiece::block_matrix(unsigned w) const
{
    auto [b, e] = basis_->block(w);
    const auto rows = localize(rows_, by_block_.at(w), b);
    RatMatrix m(rows.size(), e - b);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [c, v] : rows[i]) {
            m.at(i, c) = v;
        }
    }
    return m;
}

RatMatrix GradedPiece::span() const
{
    RatMatrix m(rows_.size(), basis_->size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& [c, v] : rows_[i]) {
            m.at(i, c) = v;
        }
    }
    return m;
}

std::vector<MultiPoly> GradedPiece::polynomials() const
{
    auto ctx = coefficient_context(source_order());
    std::vector<MultiPoly> out;
    for (const auto& row : rows_) {
        std::vector<Term> terms;
        for (const auto& [c, v] : row) {
            terms.push_back({basis_->monomial(c), v});
        }
        out.push_back(MultiPoly::from_terms(ctx, std::move(terms)));
    }
    return out;
}

std::size_t GradedPiece::compute_rank(bool exact) const
{
    std::size_t total = 0;
    for (unsigned w = 0; w < by_block_.size(); ++w) {
        if (by_block_[w].empty()) {
            continue;
        }
        auto [b, e] = basis_->block(w);
        const auto rows = localize(rows_, by_block_[w], b);
        total += exact ? exact_rank(rows, e - b) : probable_rank(rows, e - b);
    }
    return total;
}

std::size_t GradedPiece::dimension() const
{
    if (dimension_exact()) {
        return exact_dimension();
    }
    if (!rank_) {
        rank_ = compute_rank(false);
    }
    return *rank_;
}

std::size_t GradedPiece::exact_dimension() const
{
    if (!exact_rank_) {
        exact_rank_ = compute_rank(true);
    }
    return *exact_rank_;
}

GradedPiece j_piece(int r, int d, int m)
{
    check_degree_args(d, m);
    check_feasible(d, m);
    if (m < r + 1) {
        return GradedPiece(MonomialBasis::get(d, m), {});
    }
    return multiples_piece(d, m, hilbert_generators(r, d), r + 1);
}

const std::vector<MultiPoly>& power_map(int e, int d)
{
    check_divides(e, d);
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<MultiPoly>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({e, d});
    if (it == cache.end()) {
        auto g = BinaryForm::generic(e, "q").pow(static_cast<unsigned>(d / e));
        it = cache.emplace(std::pair{e, d}, g.coefficients()).first;
    }
    return it->second;
}

GradedPiece ix_piece(int e, int d, int m)
{
    check_divides(e, d);
    check_degree_args(d, m);
    check_feasible(d, m);
    PowerImages images(e, d);
    images.advance_to(m);
    const auto& basis = images.basis();
    std::vector<SparseRow> rows;
    for (unsigned w = 0; w <= basis.max_weight(); ++w) {
        auto [b, end] = basis.block(w);
        if (b == end) {
            continue;
        }
        std::size_t tcols = 0;
        const auto src = images.block_rows(w, tcols);
        // kernel of the transposed block: combinations of source monomials mapping to zero
        RatMatrix a(tcols, end - b);
        for (std::size_t i = 0; i < src.size(); ++i) {
            for (const auto& [c, v] : src[i]) {
                a.at(c, i) = v;
            }
        }
        for (const auto& v : matrix_kernel(a)) {
            SparseRow row;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (sgn(v[j]) != 0) {
                    row.emplace_back(static_cast<std::uint32_t>(b + j), v[j]);
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return GradedPiece(MonomialBasis::get(d, m), std::move(rows));
}

std::size_t ix_dimension(int e, int d, int m)
{
    check_divides(e, d);
    check_degree_args(d, m);
    check_feasible(d, m);
    PowerImages images(e, d);
    images.advance_to(m);
    const auto& basis = images.basis();
    std::size_t dim = 0;
    for (unsigned w = 0; w <= basis.max_weight(); ++w) {
        auto [b, end] = basis.block(w);
        std::size_t tcols = 0;
        const auto rows = images.block_rows(w, tcols);
        dim += (end - b) - exact_rank(rows, tcols);
    }
    return dim;
}

GradedPiece g_piece(int r, int d, int m)
{
    check_degree_args(d, m);
    check_feasible(d, m);
    if (r < 1) {
        throw DomainError("g_piece needs r >= 1");
    }
    if (m < r + 1) {
        return GradedPiece(MonomialBasis::get(d, m), {});
    }
    const auto alpha = alpha_matrix_generic(r, d);
    const std::size_t n = alpha.size();
    const std::size_t k = static_cast<std::size_t>(r + 1);
    std::vector<MultiPoly> minors;
    if (n >= k) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
        do {
            std::vector<std::vector<MultiPoly>> sub;
            for (std::size_t i = 0; i < n; ++i) {
                if (pick[i]) {
                    sub.push_back(alpha[i]);
                }
            }
            auto det = poly_determinant(sub);
            if (!det.is_zero()) {
                minors.push_back(std::move(det));
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return multiples_piece(d, m, minors, r + 1);
}

std::string to_string(Containment c)
{
    switch (c) {
    case Containment::Equal: return "equal";
    case Containment::FirstInSecond: return "first-in-second";
    case Containment::SecondInFirst: return "second-in-first";
    case Containment::Incomparable: return "incomparable";
    }
    return "?";
}

PieceComparison compare_pieces(const GradedPiece& a, const GradedPiece& b)
{
    if (a.source_order() != b.source_order() || a.degree() != b.degree()) {
        throw ContextError("pieces live in different graded components");
    }
    const auto& basis = a.basis();
    PieceComparison out{Containment::Equal, 0, 0, 0};
    for (unsigned w = 0; w <= basis.max_weight(); ++w) {
        auto [lo, hi] = basis.block(w);
        const RatMatrix ma = a.block_matrix(w);
        const RatMatrix mb = b.block_matrix(w);
        const std::size_t ra = ma.rows() ? matrix_rank(ma) : 0;
        const std::size_t rb = mb.rows() ? matrix_rank(mb) : 0;
        std::size_t rs = std::max(ra, rb);
        if (ma.rows() && mb.rows() && ra < hi - lo && rb < hi - lo) {
            rs = matrix_rank(ma.stacked(mb));
        } else if (ma.rows() && mb.rows()) {
            rs = hi - lo;
        }
        out.dim_first += ra;
        out.dim_second += rb;
        out.dim_sum += rs;
    }
    const bool a_in_b = out.dim_sum == out.dim_second;
    const bool b_in_a = out.dim_sum == out.dim_first;
    out.relation = a_in_b && b_in_a ? Containment::Equal
                   : a_in_b         ? Containment::FirstInSecond
                   : b_in_a         ? Containment::SecondInFirst
                                    : Containment::Incomparable;
    return out;
}

bool ideal_containment(int r1, int r2, int d)
{
    if (r1 < 1 || r2 < 1 || d < 1) {
        throw DomainError("ideal_containment needs positive r1, r2, d");
    }
    std::vector<MultiPoly> gens;
    for (auto& h : hilbert_generators(r2, d)) {
        if (!h.is_zero()) {
            gens.push_back(std::move(h));
        }
    }
    if (gens.empty()) {
        return true;
    }
    const int m = r2 + 1;
    const GradedPiece big = j_piece(r1, d, m);
    const GradedPiece small = GradedPiece::from_polynomials(d, m, gens);
    for (unsigned w = 0; w <= big.basis().max_weight(); ++w) {
        const RatMatrix mb = small.block_matrix(w);
        if (mb.rows() == 0) {
            continue;
        }
        const RatMatrix ma = big.block_matrix(w);
        if (ma.rows() == 0) {
            return false;
        }
        if (matrix_rank(ma.stacked(mb)) != matrix_rank(ma)) {
            return false;
        }
    }
    return true;
}

SaturationReport saturation_scan(int r, int d, int max_degree)
{
    if (r < 1 || d % r != 0) {
        throw DomainError("saturation scan needs r dividing d");
    }
    check_degree_args(d, max_degree);
    check_feasible(d, max_degree);
    SaturationReport report{r, d, max_degree, {}, std::nullopt};
    if (max_degree < r + 1) {
        return report;
    }
    const auto gens = hilbert_generators(r, d);

    // J lies in I_X: every generator vanishes under the power map.
    {
        Substitution sub(coefficient_context(d), power_map(r, d).front().context());
        for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
            sub.bind(i, power_map(r, d)[i]);
        }
        for (const auto& h : gens) {
            if (!sub.apply(h).is_zero()) {
                throw std::logic_error("Hilbert covariant coefficient does not vanish on powers");
            }
        }
    }

    PowerImages images(r, d);
    for (int m = r + 1; m <= max_degree; ++m) {
        images.advance_to(m);
        const GradedPiece jp = multiples_piece(d, m, gens, r + 1);
        const auto& basis = jp.basis();
        const bool exact = basis.size() <= kExactRankLimit;

        struct BlockRanks {
            std::size_t size, rj, rf;
            bool exact;
        };
        std::vector<BlockRanks> blocks;
        std::vector<std::vector<SparseRow>> jrows(basis.max_weight() + 1);
        for (std::size_t i = 0; i < jp.rows().size(); ++i) {
            const auto& row = jp.rows()[i];
            if (!row.empty()) {
                const unsigned w = basis.weight(row.front().first);
                SparseRow local = row;
                for (auto& [c, v] : local) {
                    c = static_cast<std::uint32_t>(c - basis.block(w).first);
                }
                jrows[w].push_back(std::move(local));
            }
        }
        for (unsigned w = 0; w <= basis.max_weight(); ++w) {
            auto [b, e] = basis.block(w);
            std::size_t tcols = 0;
            const auto frows = images.block_rows(w, tcols);
            BlockRanks br{e - b, 0, 0, exact};
            if (exact) {
                br.rj = exact_rank(jrows[w], br.size);
                br.rf = exact_rank(frows, tcols);
            } else {
                br.rj = single_modular_rank(jrows[w], br.size);
                br.rf = single_modular_rank(frows, tcols);
                if (br.rj + br.rf < br.size) {
                    br.rj = std::max(br.rj, probable_rank(jrows[w], br.size));
                    br.rf = std::max(br.rf, probable_rank(frows, tcols));
                }
                // lower bounds meeting the upper bound are exact
                br.exact = br.rj + br.rf == br.size;
            }
            if (br.rj + br.rf > br.size) {
                throw std::logic_error("rank bound violated: J is not inside the power ideal");
            }
            blocks.push_back(br);
        }

        // a deficit found modulo primes is confirmed exactly on its lowest block
        bool confirmed_deficit = false;
        for (unsigned w = 0; w < blocks.size() && !confirmed_deficit; ++w) {
            auto& br = blocks[w];
            if (br.exact) {
                confirmed_deficit = br.rj + br.rf < br.size;
                continue;
            }
            std::size_t tcols = 0;
            const auto frows = images.block_rows(w, tcols);
            br.rj = exact_rank(jrows[w], br.size);
            br.rf = exact_rank(frows, tcols);
            br.exact = true;
            confirmed_deficit = br.rj + br.rf < br.size;
        }

        ScanRow row{m, 0, 0, !confirmed_deficit, true};
        for (const auto& br : blocks) {
            row.dim_j += br.rj;
            row.dim_ix += br.size - br.rf;
            row.dims_exact = row.dims_exact && br.exact;
        }
        report.rows.push_back(row);
    }

    for (auto it = report.rows.rbegin(); it != report.rows.rend() && it->equal; ++it) {
        report.candidate = it->degree;
    }
    return report;
}

std::string to_csv(const SaturationReport& report)
{
    std::ostringstream out;
    out << "m,dim_J,dim_IX,equal\n";
    for (const auto& row : report.rows) {
        out << row.degree << ',' << row.dim_j << ',' << row.dim_ix << ',' << (row.equal ? "true" : "false") << '\n';
    }
    return out.str();
}

bool saturation_lemma_check(int r, int d)
{
    if (r < 1 || r + 1 > d) {
        throw DomainError("saturation lemma needs 1 <= r and r+1 <= d");
    }
    const auto h = hilbert_generators(r, d);
    for (int k = r + 1; k <= d; ++k) {
        Exponents e(static_cast<std::size_t>(d + 1), 0);
        e[0] = static_cast<std::uint8_t>(r);
        e[static_cast<std::size_t>(k)] = 1;
        if (sgn(h.at(static_cast<std::size_t>(k - r - 1)).coefficient_of(e)) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace covforge
