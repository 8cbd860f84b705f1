#include "covforge/binary_form.hpp"

#include "covforge/error.hpp"

#include <unordered_map>

namespace covforge {

ContextPtr form_variables(const std::string& family)
{
    return Context::make({VarFamily::flat(family, 1, 2)});
}

BinaryForm::BinaryForm(int order, std::vector<MultiPoly> coefficients, ContextPtr coefficient_ctx,
                       std::string var_family)
    : order_(order), coeffs_(std::move(coefficients)), coeff_ctx_(std::move(coefficient_ctx)),
      var_family_(std::move(var_family))
{
    const std::size_t expected = order_ >= 0 ? static_cast<std::size_t>(order_) + 1 : 0;
    if (coeffs_.size() != expected) {
        if (!(order_ < 0 && coeffs_.empty())) {
            throw DomainError("binary form of order " + std::to_string(order_) + " needs " +
                              std::to_string(expected) + " coefficients");
        }
    }
    if (coeff_ctx_->has_family(var_family_)) {
        throw ContextError("coefficient context already contains the form variables '" + var_family_ + "'");
    }
    for (const auto& c : coeffs_) {
        if (!same_context(c.context(), coeff_ctx_)) {
            throw ContextError("binary form coefficient in a foreign context");
        }
    }
}

BinaryForm BinaryForm::generic(int d, const std::string& coeff_family, const std::string& var_family)
{
    if (d < 0) {
        throw DomainError("generic form needs a nonnegative order");
    }
    auto ctx = Context::make({VarFamily::flat(coeff_family, 0, d + 1)});
    std::vector<MultiPoly> cs;
    for (int i = 0; i <= d; ++i) {
        cs.push_back(MultiPoly::variable(ctx, ctx->var(coeff_family, i)));
    }
    return BinaryForm(d, std::move(cs), ctx, var_family);
}

BinaryForm BinaryForm::from_rationals(const std::vector<Rational>& cayley, const std::string& var_family)
{
    if (cayley.empty()) {
        throw DomainError("a binary form needs at least one coefficient");
    }
    auto ctx = Context::empty();
    std::vector<MultiPoly> cs;
    for (const auto& c : cayley) {
        cs.push_back(MultiPoly::constant(ctx, c));
    }
    return BinaryForm(static_cast<int>(cayley.size()) - 1, std::move(cs), ctx, var_family);
}

BinaryForm BinaryForm::zero(int order, ContextPtr coefficient_ctx, const std::string& var_family)
{
    std::vector<MultiPoly> cs(order >= 0 ? static_cast<std::size_t>(order) + 1 : 0, MultiPoly(coefficient_ctx));
    return BinaryForm(order, std::move(cs), std::move(coefficient_ctx), var_family);
}

BinaryForm BinaryForm::from_polynomial(const MultiPoly& p, int order, const std::string& var_family)
{
    const auto& ctx = p.context();
    if (!ctx->has_family(var_family)) {
        throw ContextError("polynomial has no form variables '" + var_family + "'");
    }
    auto rest = ctx->without(var_family);
    if (order < 0) {
        if (!p.is_zero()) {
            throw DomainError("nonzero polynomial cannot be a form of negative order");
        }
        return zero(order, rest, var_family);
    }
    if (!p.is_homogeneous(var_family, static_cast<unsigned>(order))) {
        throw DomainError("polynomial is not homogeneous of order " + std::to_string(order) + " in " + var_family);
    }
    const auto& fam = ctx->family(var_family);
    if (fam.is_grid() || fam.size() != 2) {
        throw ContextError("form variables must be a flat pair");
    }
    std::vector<MultiPoly> cs;
    for (int i = 0; i <= order; ++i) {
        const unsigned pattern[] = {static_cast<unsigned>(order - i), static_cast<unsigned>(i)};
        Rational inv(1, 1);
        inv /= Rational(binomial(order, i));
        cs.push_back(p.coefficient(var_family, pattern) * inv);
    }
    return BinaryForm(order, std::move(cs), rest, var_family);
}

ContextPtr BinaryForm::polynomial_context() const
{
    return Context::unite(coeff_ctx_, form_variables(var_family_));
}

MultiPoly BinaryForm::to_polynomial() const
{
    auto ctx = polynomial_context();
    const std::size_t base = coeff_ctx_->num_vars();
    const std::size_t x1 = ctx->var(var_family_, 1);
    const std::size_t x2 = ctx->var(var_family_, 2);
    std::vector<Term> terms;
    for (int i = 0; i <= order_; ++i) {
        const Rational w(binomial(order_, i));
        for (const auto& t : coeffs_[static_cast<std::size_t>(i)].terms()) {
            Exponents e(ctx->num_vars(), 0);
            std::copy(t.exps.begin(), t.exps.end(), e.begin());
            if (order_ - i > 255 || i > 255) {
                throw DomainError("exponent overflow (limit 255)");
            }
            e[x1] = static_cast<std::uint8_t>(order_ - i);
            e[x2] = static_cast<std::uint8_t>(i);
            terms.push_back({std::move(e), t.coef * w});
        }
    }
    (void)base;
    return MultiPoly::from_terms(ctx, std::move(terms));
}

bool BinaryForm::is_zero() const
{
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

bool BinaryForm::has_rational_coefficients() const
{
    for (const auto& c : coeffs_) {
        if (!c.is_constant()) {
            return false;
        }
    }
    return true;
}

BinaryForm BinaryForm::embed(ContextPtr coefficient_ctx) const
{
    std::vector<MultiPoly> cs;
    for (const auto& c : coeffs_) {
        cs.push_back(c.embed(coefficient_ctx));
    }
    return BinaryForm(order_, std::move(cs), std::move(coefficient_ctx), var_family_);
}

void BinaryForm::require_compatible(const BinaryForm& other) const
{
    if (!same_context(coeff_ctx_, other.coeff_ctx_)) {
        throw ContextError("binary forms have different coefficient contexts");
    }
    if (var_family_ != other.var_family_) {
        throw ContextError("binary forms use different variables");
    }
}

BinaryForm BinaryForm::operator+(const BinaryForm& other) const
{
    require_compatible(other);
    if (order_ != other.order_) {
        throw DomainError("cannot add forms of different orders");
    }
    auto cs = coeffs_;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        cs[i] += other.coeffs_[i];
    }
    return BinaryForm(order_, std::move(cs), coeff_ctx_, var_family_);
}

BinaryForm BinaryForm::operator-(const BinaryForm& other) const
{
    return *this + other * Rational(-1);
}

BinaryForm BinaryForm::operator*(const BinaryForm& other) const
{
    require_compatible(other);
    const int order = order_ + other.order_;
    if (order_ < 0 || other.order_ < 0) {
        return zero(order, coeff_ctx_, var_family_);
    }
    // Cayley coefficients of a product: c_k = sum C(p,i)C(q,j)/C(p+q,k) a_i b_j.
    std::vector<MultiPoly> cs(static_cast<std::size_t>(order) + 1, MultiPoly(coeff_ctx_));
    for (int i = 0; i <= order_; ++i) {
        for (int j = 0; j <= other.order_; ++j) {
            Rational w(binomial(order_, i) * binomial(other.order_, j));
            w /= Rational(binomial(order, i + j));
            cs[static_cast<std::size_t>(i + j)] += (coeffs_[static_cast<std::size_t>(i)] *
                                                    other.coeffs_[static_cast<std::size_t>(j)]) * w;
        }
    }
    return BinaryForm(order, std::move(cs), coeff_ctx_, var_family_);
}

BinaryForm BinaryForm::operator*(const Rational& c) const
{
    auto cs = coeffs_;
    for (auto& x : cs) {
        x *= c;
    }
    return BinaryForm(order_, std::move(cs), coeff_ctx_, var_family_);
}

BinaryForm BinaryForm::pow(unsigned n) const
{
    std::vector<MultiPoly> one{MultiPoly::constant(coeff_ctx_, 1)};
    BinaryForm out(0, std::move(one), coeff_ctx_, var_family_);
    for (unsigned i = 0; i < n; ++i) {
        out = out * *this;
    }
    return out;
}

bool BinaryForm::operator==(const BinaryForm& other) const
{
    return order_ == other.order_ && var_family_ == other.var_family_ &&
           same_context(coeff_ctx_, other.coeff_ctx_) && coeffs_ == other.coeffs_;
}

BinaryForm transvectant(const BinaryForm& a, const BinaryForm& b, int k)
{
    if (k < 0) {
        throw DomainError("transvectant index must be nonnegative");
    }
    if (!same_context(a.coefficient_context(), b.coefficient_context()) || a.var_family() != b.var_family()) {
        throw ContextError("transvectant operands live in different contexts");
    }
    const int p = a.order();
    const int q = b.order();
    if (k > std::min(p, q)) {
        return BinaryForm::zero(p + q - 2 * k, a.coefficient_context(), a.var_family());
    }
    const auto pa = a.to_polynomial();
    const auto pb = b.to_polynomial();
    const auto& ctx = pa.context();
    const std::size_t x1 = ctx->var(a.var_family(), 1);
    const std::size_t x2 = ctx->var(a.var_family(), 2);
    const auto uk = static_cast<unsigned>(k);
    MultiPoly sum(ctx);
    for (unsigned i = 0; i <= uk; ++i) {
        MultiPoly term = pa.diff(x1, uk - i).diff(x2, i) * pb.diff(x1, i).diff(x2, uk - i);
        Rational c(binomial(static_cast<long>(k), static_cast<long>(i)));
        if (i % 2 == 1) {
            c = -c;
        }
        sum += term * c;
    }
    Rational pre(factorial(static_cast<unsigned>(p - k)) * factorial(static_cast<unsigned>(q - k)));
    pre /= Rational(factorial(static_cast<unsigned>(p)) * factorial(static_cast<unsigned>(q)));
    sum *= pre;
    return BinaryForm::from_polynomial(sum, p + q - 2 * k, a.var_family());
}

namespace {

Integer falling(unsigned n, unsigned k)
{
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
    }
    return r;
}

} // namespace

MultiPoly omega_apply_vars(const MultiPoly& p, std::array<std::size_t, 2> x, std::array<std::size_t, 2> y, unsigned k)
{
    // Omega^k = sum_j C(k,j) (-1)^j d^{k-j}/dx1 d^{k-j}/dy2 d^j/dx2 d^j/dy1
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        for (unsigned j = 0; j <= k; ++j) {
            const unsigned a = k - j;
            if (t.exps[x[0]] < a || t.exps[y[1]] < a || t.exps[x[1]] < j || t.exps[y[0]] < j) {
                continue;
            }
            Integer c = binomial(static_cast<long>(k), static_cast<long>(j)) * falling(t.exps[x[0]], a) * falling(t.exps[y[1]], a) *
                        falling(t.exps[x[1]], j) * falling(t.exps[y[0]], j);
            Exponents e = t.exps;
            e[x[0]] -= static_cast<std::uint8_t>(a);
            e[y[1]] -= static_cast<std::uint8_t>(a);
            e[x[1]] -= static_cast<std::uint8_t>(j);
            e[y[0]] -= static_cast<std::uint8_t>(j);
            Rational coef = t.coef * Rational(c);
            if (j % 2 == 1) {
                coef = -coef;
            }
            out.push_back({std::move(e), std::move(coef)});
        }
    }
    return MultiPoly::from_terms(p.context(), std::move(out));
}

MultiPoly omega_apply(const MultiPoly& p, const std::string& x_family, const std::string& y_family, unsigned k)
{
    const auto& ctx = p.context();
    if (!ctx->has_family(x_family) || !ctx->has_family(y_family)) {
        throw ContextError("omega operator needs families '" + x_family + "' and '" + y_family + "'");
    }
    const auto& fx = ctx->family(x_family);
    const auto& fy = ctx->family(y_family);
    if (fx.is_grid() || fy.is_grid() || fx.size() != 2 || fy.size() != 2) {
        throw ContextError("omega operator needs two-variable flat families");
    }
    const auto ox = ctx->family_offset(x_family);
    const auto oy = ctx->family_offset(y_family);
    return omega_apply_vars(p, {ox, ox + 1}, {oy, oy + 1}, k);
}

MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        throw DomainError("determinant of an empty matrix");
    }
    if (n > 20) {
        throw DomainError("polynomial determinant too large");
    }
    for (const auto& row : m) {
        if (row.size() != n) {
            throw DomainError("determinant of a non-square matrix");
        }
    }
    const auto& ctx = m[0][0].context();
    // minors[S] = determinant of the bottom |S| rows restricted to columns S
    std::unordered_map<std::uint32_t, MultiPoly> minors;
    minors.emplace(0u, MultiPoly::constant(ctx, 1));
    for (std::size_t size = 1; size <= n; ++size) {
        const std::size_t row = n - size;
        std::unordered_map<std::uint32_t, MultiPoly> next;
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
            if (static_cast<std::size_t>(__builtin_popcount(s)) != size) {
                continue;
            }
            MultiPoly acc(ctx);
            int pos = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(s & (1u << j))) {
                    continue;
                }
                const auto& entry = m[row][j];
                if (!entry.is_zero()) {
                    const auto& sub = minors.at(s & ~(1u << j));
                    if (!sub.is_zero()) {
                        auto prod = entry * sub;
                        if (pos % 2 == 0) {
                            acc += prod;
                        } else {
                            acc -= prod;
                        }
                    }
                }
                ++pos;
            }
            next.emplace(s, std::move(acc));
        }
        minors = std::move(next);
    }
    return minors.at((1u << n) - 1);
}

BinaryForm wronskian(const std::vector<BinaryForm>& forms)
{
    if (forms.empty()) {
        throw DomainError("wronskian of no forms");
    }
    const int n = forms[0].order();
    const auto m = static_cast<int>(forms.size());
    for (const auto& f : forms) {
        if (f.order() != n) {
            throw DomainError("wronskian needs forms of equal order");
        }
        if (!same_context(f.coefficient_context(), forms[0].coefficient_context()) ||
            f.var_family() != forms[0].var_family()) {
            throw ContextError("wronskian operands live in different contexts");
        }
    }
    if (m > n + 1) {
        throw DomainError("wronskian needs at most order+1 forms");
    }
    std::vector<MultiPoly> polys;
    for (const auto& f : forms) {
        polys.push_back(f.to_polynomial());
    }
    const auto& ctx = polys[0].context();
    const std::size_t x1 = ctx->var(forms[0].var_family(), 1);
    const std::size_t x2 = ctx->var(forms[0].var_family(), 2);
    std::vector<std::vector<MultiPoly>> mat(forms.size());
    for (std::size_t i = 0; i < forms.size(); ++i) {
        for (int j = 1; j <= m; ++j) {
            mat[i].push_back(polys[i].diff(x1, static_cast<unsigned>(m - j)).diff(x2, static_cast<unsigned>(j - 1)));
        }
    }
    return BinaryForm::from_polynomial(poly_determinant(mat), m * (n - m + 1), forms[0].var_family());
}

BinaryForm hessian(const BinaryForm& f)
{
    if (f.order() < 2) {
        throw DomainError("hessian needs order at least 2");
    }
    const auto p = f.to_polynomial();
    const auto& ctx = p.context();
    const std::size_t x1 = ctx->var(f.var_family(), 1);
    const std::size_t x2 = ctx->var(f.var_family(), 2);
    const auto fxy = p.diff(x1).diff(x2);
    const auto h = p.diff(x1, 2) * p.diff(x2, 2) - fxy * fxy;
    return BinaryForm::from_polynomial(h, 2 * f.order() - 4, f.var_family());
}

BinaryForm sl2_transform(const BinaryForm& f, const std::array<std::array<Rational, 2>, 2>& g)
{
    if (g[0][0] * g[1][1] - g[0][1] * g[1][0] != 1) {
        throw DomainError("transformation matrix must have determinant 1");
    }
    const auto p = f.to_polynomial();
    const auto& ctx = p.context();
    const std::size_t x1 = ctx->var(f.var_family(), 1);
    const std::size_t x2 = ctx->var(f.var_family(), 2);
    const auto v1 = MultiPoly::variable(ctx, x1);
    const auto v2 = MultiPoly::variable(ctx, x2);
    // g = [[alpha, gamma], [beta, delta]]
    const auto img1 = v1 * g[0][0] + v2 * g[1][0];
    const auto img2 = v1 * g[0][1] + v2 * g[1][1];
    return BinaryForm::from_polynomial(p.substitute({{x1, img1}, {x2, img2}}), f.order(), f.var_family());
}

std::optional<Rational> proportionality(const MultiPoly& a, const MultiPoly& b)
{
    if (!same_context(a.context(), b.context())) {
        throw ContextError("proportionality test across contexts");
    }
    if (a.is_zero() || b.is_zero() || a.size() != b.size()) {
        return std::nullopt;
    }
    const Rational c = a.terms()[0].coef / b.terms()[0].coef;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.terms()[i].exps != b.terms()[i].exps || a.terms()[i].coef != c * b.terms()[i].coef) {
            return std::nullopt;
        }
    }
    return c;
}

std::optional<Rational> proportionality(const BinaryForm& a, const BinaryForm& b)
{
    if (a.order() != b.order()) {
        return std::nullopt;
    }
    return proportionality(a.to_polynomial(), b.to_polynomial());
}

} // namespace covforge
