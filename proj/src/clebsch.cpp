#include "covforge/clebsch.hpp"

#include "covforge/covariant.hpp"
#include "covforge/error.hpp"
#include "covforge/hilbert.hpp"
#include "covforge/ideals.hpp"
#include "covforge/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace covforge {

namespace {

constexpr const char* kReserved[] = {"x", "p", "q", "u", "lam"};

ContextPtr x_context(int n)
{
    return Context::make({VarFamily::flat("x", 1, n)});
}

void check_coefficient_context(const ContextPtr& ctx)
{
    for (const char* name : kReserved) {
        if (ctx->has_family(name)) {
            throw ContextError(std::string("coefficient context of an n-ary form may not use the family '") + name +
                               "'");
        }
    }
}

void collect_indices(int n, unsigned left, MultiIndex& cur, std::size_t pos, std::vector<MultiIndex>& out)
{
    if (pos + 1 == static_cast<std::size_t>(n)) {
        cur[pos] = left;
        out.push_back(cur);
        return;
    }
    for (unsigned v = left + 1; v-- > 0;) {
        cur[pos] = v;
        collect_indices(n, left - v, cur, pos + 1, out);
    }
}

// x^I in a context holding the x family.
MultiPoly x_monomial(const ContextPtr& ctx, const MultiIndex& index)
{
    Exponents e(ctx->num_vars(), 0);
    for (std::size_t k = 0; k < index.size(); ++k) {
        e[ctx->var("x", static_cast<int>(k + 1))] = static_cast<std::uint8_t>(index[k]);
    }
    return MultiPoly::monomial(ctx, std::move(e), 1);
}

const Covariant& goettingen_24()
{
    static const Covariant g = goettingen_basic(2, 4);
    return g;
}

} // namespace

std::vector<MultiIndex> multi_indices(int n, int d)
{
    if (n < 1 || d < 0) {
        throw DomainError("multi-indices need n >= 1 and d >= 0");
    }
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(n), 0);
    collect_indices(n, static_cast<unsigned>(d), cur, 0, out);
    return out;
}

Integer multinomial(const MultiIndex& index)
{
    unsigned total = 0;
    Integer den = 1;
    for (auto i : index) {
        total += i;
        den *= factorial(i);
    }
    return factorial(total) / den;
}

NaryForm::NaryForm(int n, int order, std::map<MultiIndex, MultiPoly> coefficients, ContextPtr coefficient_ctx)
    : n_(n), order_(order), coeff_ctx_(std::move(coefficient_ctx)), zero_(coeff_ctx_)
{
    if (n < 2) {
        throw DomainError("n-ary forms need at least two variables");
    }
    if (order < 0) {
        throw DomainError("negative form order");
    }
    check_coefficient_context(coeff_ctx_);
    for (auto& [index, c] : coefficients) {
        if (index.size() != static_cast<std::size_t>(n) ||
            std::accumulate(index.begin(), index.end(), 0U) != static_cast<unsigned>(order)) {
            throw DomainError("multi-index does not match the form's variables and order");
        }
        if (!same_context(c.context(), coeff_ctx_)) {
            throw ContextError("coefficient lives outside the form's coefficient context");
        }
        if (!c.is_zero()) {
            coeffs_.emplace(index, std::move(c));
        }
    }
}

NaryForm NaryForm::from_rationals(int n, int order, const std::map<MultiIndex, Rational>& coefficients)
{
    auto ctx = Context::empty();
    std::map<MultiIndex, MultiPoly> cs;
    for (const auto& [index, c] : coefficients) {
        cs.emplace(index, MultiPoly::constant(ctx, c));
    }
    return NaryForm(n, order, std::move(cs), ctx);
}

NaryForm NaryForm::from_polynomial(const MultiPoly& p, int n, int order)
{
    const auto& src = p.context();
    auto coeff_ctx = src->has_family("x") ? src->without("x") : src;
    auto target = Context::unite(coeff_ctx, x_context(n));
    const MultiPoly q = p.embed(target);
    const std::size_t nc = coeff_ctx->num_vars();
    std::map<MultiIndex, std::vector<Term>> parts;
    for (const auto& t : q.terms()) {
        MultiIndex index(static_cast<std::size_t>(n));
        unsigned deg = 0;
        for (int k = 0; k < n; ++k) {
            index[static_cast<std::size_t>(k)] = t.exps[nc + static_cast<std::size_t>(k)];
            deg += index[static_cast<std::size_t>(k)];
        }
        if (deg != static_cast<unsigned>(order)) {
            throw DomainError("polynomial is not homogeneous of order " + std::to_string(order) + " in x");
        }
        Exponents ce(t.exps.begin(), t.exps.begin() + static_cast<long>(nc));
        parts[index].push_back({std::move(ce), t.coef / Rational(multinomial(index))});
    }
    std::map<MultiIndex, MultiPoly> cs;
    for (auto& [index, terms] : parts) {
        cs.emplace(index, MultiPoly::from_terms(coeff_ctx, std::move(terms)));
    }
    return NaryForm(n, order, std::move(cs), coeff_ctx);
}

const MultiPoly& NaryForm::coefficient(const MultiIndex& index) const
{
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? zero_ : it->second;
}

ContextPtr NaryForm::polynomial_context() const
{
    return Context::unite(coeff_ctx_, x_context(n_));
}

MultiPoly NaryForm::to_polynomial() const
{
    auto ctx = polynomial_context();
    MultiPoly out(ctx);
    for (const auto& [index, c] : coeffs_) {
        out += c.embed(ctx) * x_monomial(ctx, index) * Rational(multinomial(index));
    }
    return out;
}

bool NaryForm::is_zero() const
{
    return coeffs_.empty();
}

NaryForm NaryForm::operator*(const NaryForm& other) const
{
    if (n_ != other.n_) {
        throw DomainError("forms in different numbers of variables");
    }
    auto ctx = Context::unite(polynomial_context(), other.polynomial_context());
    return from_polynomial(to_polynomial().embed(ctx) * other.to_polynomial().embed(ctx), n_, order_ + other.order_);
}

NaryForm NaryForm::pow(unsigned k) const
{
    MultiIndex zero(static_cast<std::size_t>(n_), 0);
    NaryForm out(n_, 0, {{zero, MultiPoly::constant(coeff_ctx_, 1)}}, coeff_ctx_);
    for (unsigned i = 0; i < k; ++i) {
        out = out * *this;
    }
    return out;
}

bool NaryForm::operator==(const NaryForm& other) const
{
    return n_ == other.n_ && order_ == other.order_ && same_context(coeff_ctx_, other.coeff_ctx_) &&
           coeffs_ == other.coeffs_;
}

BinaryForm restrict_along(const NaryForm& form, const std::vector<MultiPoly>& p, const std::vector<MultiPoly>& q)
{
    const auto n = static_cast<std::size_t>(form.variables());
    if (p.size() != n || q.size() != n) {
        throw DomainError("line points need one coordinate per variable");
    }
    const ContextPtr point_ctx = p.front().context();
    for (std::size_t i = 0; i < n; ++i) {
        if (!same_context(p[i].context(), point_ctx) || !same_context(q[i].context(), point_ctx)) {
            throw ContextError("line points must share one context");
        }
    }
    if (point_ctx->has_family("lam")) {
        throw ContextError("line points may not use the family 'lam'");
    }
    auto ctx = Context::unite(Context::unite(form.coefficient_context(), point_ctx), form_variables("lam"));
    const auto lam1 = MultiPoly::variable(ctx, ctx->var("lam", 1));
    const auto lam2 = MultiPoly::variable(ctx, ctx->var("lam", 2));
    std::vector<std::vector<MultiPoly>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        powers[i].push_back(MultiPoly::constant(ctx, 1));
        const MultiPoly xi = lam1 * p[i].embed(ctx) + lam2 * q[i].embed(ctx);
        for (int k = 1; k <= form.order(); ++k) {
            powers[i].push_back(powers[i].back() * xi);
        }
    }
    MultiPoly theta(ctx);
    for (const auto& [index, c] : form.coefficients()) {
        MultiPoly term = c.embed(ctx) * Rational(multinomial(index));
        for (std::size_t i = 0; i < n; ++i) {
            term *= powers[i][index[i]];
        }
        theta += term;
    }
    if (theta.is_zero()) {
        return BinaryForm::zero(form.order(), ctx->without("lam"), "lam");
    }
    return BinaryForm::from_polynomial(theta, form.order(), "lam");
}

BinaryForm restrict_to_line(const NaryForm& form)
{
    const int n = form.variables();
    auto ctx = Context::make({VarFamily::flat("p", 1, n), VarFamily::flat("q", 1, n)});
    std::vector<MultiPoly> p, q;
    for (int i = 1; i <= n; ++i) {
        p.push_back(MultiPoly::variable(ctx, ctx->var("p", i)));
        q.push_back(MultiPoly::variable(ctx, ctx->var("q", i)));
    }
    return restrict_along(form, p, q);
}

bool transfer_vanishing_test(const NaryForm& form, int r)
{
    if (form.order() < 2) {
        throw DomainError("transfer test needs order at least 2");
    }
    if (r < 1) {
        throw DomainError("transfer test needs r >= 1");
    }
    const auto phi = hilbert_covariant(r, form.order());
    return evaluate_covariant(phi, restrict_to_line(form)).is_zero();
}

BracketExpr::BracketExpr(std::vector<char> letters, std::vector<BracketFactor> factors)
    : letters_(std::move(letters)), factors_(std::move(factors))
{
    std::optional<std::size_t> arity;
    for (const auto& f : factors_) {
        if (f.power == 0) {
            throw DomainError("factor power must be positive");
        }
        for (auto l : f.letters) {
            if (l >= letters_.size()) {
                throw DomainError("factor refers to an undeclared letter");
            }
        }
        switch (f.kind) {
        case FactorKind::Linear:
            if (f.letters.size() != 1) {
                throw DomainError("a pairing takes exactly one letter");
            }
            break;
        case FactorKind::Bracket:
        case FactorKind::UBracket: {
            const std::size_t rows = f.letters.size() + (f.kind == FactorKind::UBracket ? 1 : 0);
            if (rows < 2 || f.letters.empty()) {
                throw DomainError("bracket needs at least two rows and one letter");
            }
            if (arity && *arity != rows) {
                throw DomainError("bracket arity inconsistent");
            }
            arity = rows;
            break;
        }
        }
    }
}

std::optional<std::size_t> BracketExpr::arity() const
{
    for (const auto& f : factors_) {
        if (f.kind != FactorKind::Linear) {
            return f.letters.size() + (f.kind == FactorKind::UBracket ? 1 : 0);
        }
    }
    return std::nullopt;
}

unsigned BracketExpr::letter_degree(std::size_t letter) const
{
    unsigned deg = 0;
    for (const auto& f : factors_) {
        deg += f.power * static_cast<unsigned>(std::count(f.letters.begin(), f.letters.end(), letter));
    }
    return deg;
}

unsigned BracketExpr::x_degree() const
{
    unsigned deg = 0;
    for (const auto& f : factors_) {
        deg += f.kind == FactorKind::Linear ? f.power : 0;
    }
    return deg;
}

unsigned BracketExpr::u_degree() const
{
    unsigned deg = 0;
    for (const auto& f : factors_) {
        deg += f.kind == FactorKind::UBracket ? f.power : 0;
    }
    return deg;
}

std::string BracketExpr::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& f : factors_) {
        if (!first) {
            out << ' ';
        }
        first = false;
        if (f.kind == FactorKind::Linear) {
            out << letters_[f.letters.front()] << "_x";
        } else {
            out << '(';
            for (std::size_t i = 0; i < f.letters.size(); ++i) {
                out << (i ? " " : "") << letters_[f.letters[i]];
            }
            out << (f.kind == FactorKind::UBracket ? " u)" : ")");
        }
        if (f.power != 1) {
            out << '^' << f.power;
        }
    }
    return out.str();
}

BracketExpr parse_bracket(std::string_view text)
{
    std::vector<char> letters;
    std::vector<BracketFactor> factors;
    std::optional<std::size_t> arity;
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(pos) + " in '" + std::string(text) + "'");
    };
    auto is_letter = [](char c) { return c >= 'a' && c <= 'z' && c != 'u' && c != 'x'; };
    auto letter_id = [&](char c) {
        auto it = std::find(letters.begin(), letters.end(), c);
        if (it != letters.end()) {
            return static_cast<std::size_t>(it - letters.begin());
        }
        letters.push_back(c);
        return letters.size() - 1;
    };
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto read_power = [&]() -> unsigned {
        skip_space();
        if (pos >= text.size() || text[pos] != '^') {
            return 1;
        }
        ++pos;
        skip_space();
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (start == pos || pos - start > 4) {
            fail("expected a small exponent");
        }
        const unsigned k = static_cast<unsigned>(std::stoul(std::string(text.substr(start, pos - start))));
        if (k == 0) {
            fail("exponent must be positive");
        }
        return k;
    };

    for (;;) {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) {
            ++pos;
        }
        if (pos >= text.size()) {
            break;
        }
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            BracketFactor f{FactorKind::Bracket, {}, 1};
            for (;;) {
                skip_space();
                if (pos >= text.size()) {
                    fail("unterminated bracket");
                }
                const char ch = text[pos];
                if (ch == ')') {
                    ++pos;
                    break;
                }
                if (f.kind == FactorKind::UBracket) {
                    fail("u must be the last row of a bracket");
                }
                if (ch == 'u') {
                    f.kind = FactorKind::UBracket;
                } else if (is_letter(ch)) {
                    const auto id = letter_id(ch);
                    if (std::find(f.letters.begin(), f.letters.end(), id) != f.letters.end()) {
                        fail("repeated letter in bracket");
                    }
                    f.letters.push_back(id);
                } else {
                    fail(std::string("unexpected character '") + ch + "' in bracket");
                }
                ++pos;
            }
            const std::size_t rows = f.letters.size() + (f.kind == FactorKind::UBracket ? 1 : 0);
            if (f.letters.empty() || rows < 2) {
                fail("bracket needs at least two rows and one letter");
            }
            if (arity && *arity != rows) {
                fail("bracket arity inconsistent");
            }
            arity = rows;
            f.power = read_power();
            factors.push_back(std::move(f));
        } else if (is_letter(c)) {
            ++pos;
            if (text.substr(pos, 2) != "_x") {
                fail("expected '_x' after a letter");
            }
            pos += 2;
            BracketFactor f{FactorKind::Linear, {letter_id(c)}, 1};
            f.power = read_power();
            factors.push_back(std::move(f));
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }
    if (factors.empty()) {
        throw ParseError("empty bracket expression");
    }
    return BracketExpr(std::move(letters), std::move(factors));
}

MultiPoly umbral_evaluate(const BracketExpr& expr, const NaryForm& form)
{
    const int n = form.variables();
    const int d = form.order();
    if (auto a = expr.arity(); a && *a != static_cast<std::size_t>(n)) {
        throw DomainError("brackets have " + std::to_string(*a) + " rows but the form has " + std::to_string(n) +
                          " variables");
    }
    const auto& letters = expr.letters();
    for (std::size_t l = 0; l < letters.size(); ++l) {
        if (expr.letter_degree(l) != static_cast<unsigned>(d)) {
            throw DomainError(std::string("letter ") + letters[l] + " has degree " +
                              std::to_string(expr.letter_degree(l)) + ", the form has order " + std::to_string(d));
        }
    }

    std::vector<VarFamily> fams;
    for (char c : letters) {
        fams.push_back(VarFamily::flat(std::string("l") + c, 1, n));
    }
    fams.push_back(VarFamily::flat("x", 1, n));
    fams.push_back(VarFamily::flat("u", 1, n));
    const auto lctx = Context::make(fams);
    auto coord = [&](std::size_t letter, int i) {
        return MultiPoly::variable(lctx, lctx->var(std::string("l") + letters[letter], i));
    };

    MultiPoly product = MultiPoly::constant(lctx, 1);
    for (const auto& f : expr.factors()) {
        MultiPoly base(lctx);
        if (f.kind == FactorKind::Linear) {
            for (int i = 1; i <= n; ++i) {
                base += coord(f.letters.front(), i) * MultiPoly::variable(lctx, lctx->var("x", i));
            }
        } else {
            std::vector<std::vector<MultiPoly>> rows;
            for (auto l : f.letters) {
                std::vector<MultiPoly> row;
                for (int i = 1; i <= n; ++i) {
                    row.push_back(coord(l, i));
                }
                rows.push_back(std::move(row));
            }
            if (f.kind == FactorKind::UBracket) {
                std::vector<MultiPoly> row;
                for (int i = 1; i <= n; ++i) {
                    row.push_back(MultiPoly::variable(lctx, lctx->var("u", i)));
                }
                rows.push_back(std::move(row));
            }
            base = poly_determinant(rows);
        }
        product *= base.pow(f.power);
    }

    const auto& coeff_ctx = form.coefficient_context();
    const auto out_ctx = Context::unite(coeff_ctx, Context::make({VarFamily::flat("x", 1, n), VarFamily::flat("u", 1, n)}));
    const std::size_t nc = coeff_ctx->num_vars();
    const std::size_t nl = letters.size() * static_cast<std::size_t>(n);
    std::vector<Term> terms;
    for (const auto& t : product.terms()) {
        MultiPoly c = MultiPoly::constant(coeff_ctx, t.coef);
        for (std::size_t l = 0; l < letters.size() && !c.is_zero(); ++l) {
            MultiIndex index(t.exps.begin() + static_cast<long>(l * n), t.exps.begin() + static_cast<long>((l + 1) * n));
            c *= form.coefficient(index);
        }
        for (const auto& ct : c.terms()) {
            Exponents e(out_ctx->num_vars(), 0);
            std::copy(ct.exps.begin(), ct.exps.end(), e.begin());
            std::copy(t.exps.begin() + static_cast<long>(nl), t.exps.end(), e.begin() + static_cast<long>(nc));
            terms.push_back({std::move(e), ct.coef});
        }
    }
    return MultiPoly::from_terms(out_ctx, std::move(terms));
}

bool vanishes_on_incidence(const MultiPoly& p, int n)
{
    const auto& src = p.context();
    if (!src->has_family("x") || !src->has_family("u")) {
        throw ContextError("incidence check needs the families x and u");
    }
    if (src->has_family("w")) {
        throw ContextError("incidence check reserves the family 'w'");
    }
    auto ctx = Context::unite(src, Context::make({VarFamily::grid("w", 1, n, 1, n)}));
    Substitution sub(src, ctx);
    for (int i = 1; i <= n; ++i) {
        MultiPoly ui(ctx);
        for (int j = 1; j <= n; ++j) {
            if (j != i) {
                const auto xj = MultiPoly::variable(ctx, ctx->var("x", j));
                ui += (MultiPoly::variable(ctx, ctx->var("w", i, j)) - MultiPoly::variable(ctx, ctx->var("w", j, i))) * xj;
            }
        }
        sub.bind(src->var("u", i), ui);
    }
    return sub.apply(p).is_zero();
}

std::array<BinaryForm, 3> bitangent_system(const NaryForm& form)
{
    if (form.variables() != 3 || form.order() != 4) {
        throw DomainError("bitangent system needs a ternary quartic");
    }
    const auto ctx = Context::make({VarFamily::flat("u", 1, 3)});
    const auto u = [&](int i) { return MultiPoly::variable(ctx, ctx->var("u", i)); };
    const MultiPoly zero(ctx);
    const std::vector<MultiPoly> p1{u(3), zero, -u(1)};
    const std::vector<MultiPoly> q1{u(2), -u(1), zero};
    const std::vector<MultiPoly> p2{zero, u(3), -u(2)};
    const std::vector<MultiPoly> q2{u(3), zero, -u(1)};
    const auto& gott = goettingen_24();
    return {evaluate_covariant(gott, restrict_along(form, p1, q1)),
            evaluate_covariant(gott, restrict_along(form, p2, q1)),
            evaluate_covariant(gott, restrict_along(form, p2, q2))};
}

std::size_t nary_power_ideal_dimension(int n, int e, int d, int m)
{
    if (n < 2 || e < 1 || d < 1 || d % e != 0 || m < 0) {
        throw DomainError("power ideal needs n >= 2 and 1 <= e dividing d");
    }
    const auto targets = multi_indices(n, d);
    const std::size_t count = targets.size();
    const Integer ambient = binomial(static_cast<long>(count) + m - 1, m);
    if (ambient > Integer(std::to_string(feasibility_limit()))) {
        throw InfeasibleError("degree-" + std::to_string(m) + " piece has dimension " + ambient.get_str() +
                              ", above the feasibility limit");
    }

    const auto sources = multi_indices(n, e);
    const auto gctx = Context::make({VarFamily::flat("g", 0, static_cast<int>(sources.size()))});
    std::map<MultiIndex, MultiPoly> gc;
    for (std::size_t j = 0; j < sources.size(); ++j) {
        gc.emplace(sources[j], MultiPoly::variable(gctx, j));
    }
    const NaryForm power = NaryForm(n, e, std::move(gc), gctx).pow(static_cast<unsigned>(d / e));
    std::vector<MultiPoly> images;
    for (const auto& index : targets) {
        images.push_back(power.coefficient(index));
    }

    // degree-m monomials as nondecreasing index lists, grouped by torus weight
    std::map<MultiIndex, std::vector<MultiPoly>> blocks;
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    for (;;) {
        MultiIndex weight(static_cast<std::size_t>(n), 0);
        MultiPoly img = MultiPoly::constant(gctx, 1);
        for (auto i : pick) {
            for (int k = 0; k < n; ++k) {
                weight[static_cast<std::size_t>(k)] += targets[i][static_cast<std::size_t>(k)];
            }
            img *= images[i];
        }
        blocks[weight].push_back(std::move(img));
        std::size_t k = pick.size();
        while (k > 0 && pick[k - 1] + 1 == count) {
            --k;
        }
        if (k == 0) {
            break;
        }
        ++pick[k - 1];
        std::fill(pick.begin() + static_cast<long>(k), pick.end(), pick[k - 1]);
    }

    std::size_t dim = 0;
    for (const auto& [weight, polys] : blocks) {
        std::map<Exponents, std::size_t, decltype(&grlex_less)> cols(&grlex_less);
        for (const auto& p : polys) {
            for (const auto& t : p.terms()) {
                cols.emplace(t.exps, cols.size());
            }
        }
        RatMatrix mat(polys.size(), cols.size());
        for (std::size_t i = 0; i < polys.size(); ++i) {
            for (const auto& t : polys[i].terms()) {
                mat.at(i, cols.at(t.exps)) = t.coef;
            }
        }
        dim += polys.size() - (cols.empty() ? 0 : matrix_rank(mat));
    }
    return dim;
}

} // namespace covforge
