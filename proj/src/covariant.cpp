#include "covforge/covariant.hpp"

#include "covforge/error.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <tuple>

namespace covforge {

ContextPtr coefficient_context(int d)
{
    if (d < 0) {
        throw DomainError("negative form order");
    }
    return Context::make({VarFamily::flat("a", 0, d + 1)});
}

std::string to_string(CayleyOp op)
{
    switch (op) {
    case CayleyOp::EPlus: return "E+";
    case CayleyOp::EMinus: return "E-";
    case CayleyOp::EZero: return "E0";
    case CayleyOp::GammaPlus: return "Gamma+";
    case CayleyOp::GammaMinus: return "Gamma-";
    case CayleyOp::GammaZero: return "Gamma0";
    }
    return "?";
}

namespace {

std::size_t a_var(const Context& ctx, int d, int i)
{
    (void)d;
    return ctx.var("a", i);
}

LinearDerivation build_operator(CayleyOp op, const Context& ctx, int d)
{
    if (!ctx.has_family("a")) {
        throw ContextError("operator needs the coefficient family a");
    }
    const auto& fam = ctx.family("a");
    if (fam.is_grid() || fam.first() != 0 || fam.count() != d + 1) {
        throw ContextError("coefficient family must be a0..a" + std::to_string(d));
    }
    LinearDerivation der;
    const bool gamma = op == CayleyOp::GammaPlus || op == CayleyOp::GammaMinus || op == CayleyOp::GammaZero;
    if (gamma && !ctx.has_family("x")) {
        throw ContextError("Gamma operators need the form variables x1, x2");
    }
    switch (op) {
    case CayleyOp::EPlus:
    case CayleyOp::GammaPlus:
        for (int i = 0; i < d; ++i) {
            der.add(a_var(ctx, d, i + 1), a_var(ctx, d, i), Rational(d - i));
        }
        if (gamma) {
            der.add(ctx.var("x", 1), ctx.var("x", 2), Rational(-1));
        }
        break;
    case CayleyOp::EMinus:
    case CayleyOp::GammaMinus:
        for (int i = 1; i <= d; ++i) {
            der.add(a_var(ctx, d, i - 1), a_var(ctx, d, i), Rational(i));
        }
        if (gamma) {
            der.add(ctx.var("x", 2), ctx.var("x", 1), Rational(-1));
        }
        break;
    case CayleyOp::EZero:
    case CayleyOp::GammaZero:
        for (int i = 0; i <= d; ++i) {
            der.add(a_var(ctx, d, i), a_var(ctx, d, i), Rational(2 * i - d));
        }
        if (gamma) {
            der.add(ctx.var("x", 1), ctx.var("x", 1), Rational(1));
            der.add(ctx.var("x", 2), ctx.var("x", 2), Rational(-1));
        }
        break;
    }
    return der;
}

} // namespace

MultiPoly cayley_operator(CayleyOp op, const MultiPoly& p, int d, unsigned times)
{
    return build_operator(op, *p.context(), d).apply(p, times);
}

std::optional<unsigned> isobaric_weight(const MultiPoly& p)
{
    if (p.is_zero() || !p.context()->has_family("a")) {
        return std::nullopt;
    }
    const auto& ctx = *p.context();
    const auto& fam = ctx.family("a");
    const auto off = ctx.family_offset("a");
    long w = 0;
    for (std::size_t k = 0; k < fam.size(); ++k) {
        w += long(p.terms()[0].exps[off + k]) * (fam.first() + long(k));
    }
    if (w < 0 || !p.is_isobaric("a", static_cast<unsigned>(w))) {
        return std::nullopt;
    }
    return static_cast<unsigned>(w);
}

Covariant::Covariant(int source_order, int degree, int order, std::vector<MultiPoly> coefficients)
    : d_(source_order), m_(degree), q_(order), coeffs_(std::move(coefficients))
{
    if (d_ < 0 || m_ < 0 || q_ < 0) {
        throw DomainError("covariant needs nonnegative source order, degree and order");
    }
    const int twice_w = d_ * m_ - q_;
    if (twice_w < 0 || twice_w % 2 != 0) {
        throw DomainError("covariant weight (dm-q)/2 must be a nonnegative integer");
    }
    if (coeffs_.size() != static_cast<std::size_t>(q_) + 1) {
        throw DomainError("covariant of order " + std::to_string(q_) + " needs " + std::to_string(q_ + 1) +
                          " coefficients");
    }
    const auto expected = coefficient_context(d_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const auto& c = coeffs_[k];
        if (!same_context(c.context(), expected)) {
            throw ContextError("covariant coefficients must live in a0..a" + std::to_string(d_));
        }
        if (!c.is_homogeneous("a", static_cast<unsigned>(m_))) {
            throw DomainError("covariant coefficient " + std::to_string(k) + " is not homogeneous of degree " +
                              std::to_string(m_));
        }
        if (!c.is_isobaric("a", static_cast<unsigned>(twice_w / 2) + static_cast<unsigned>(k))) {
            throw DomainError("covariant coefficient " + std::to_string(k) + " is not isobaric of weight " +
                              std::to_string(twice_w / 2 + static_cast<int>(k)));
        }
    }
}

Covariant Covariant::from_form(const BinaryForm& form, int source_order, std::optional<int> degree)
{
    if (!degree) {
        for (const auto& c : form.coefficients()) {
            if (!c.is_zero()) {
                const auto deg = c.homogeneous_degree("a");
                if (!deg) {
                    throw DomainError("form coefficients are not homogeneous in the a family");
                }
                degree = static_cast<int>(*deg);
                break;
            }
        }
        if (!degree) {
            throw DomainError("degree of a zero covariant must be given");
        }
    }
    auto ctx = coefficient_context(source_order);
    std::vector<MultiPoly> cs;
    for (const auto& c : form.coefficients()) {
        cs.push_back(same_context(c.context(), ctx) ? c : c.embed(ctx));
    }
    return Covariant(source_order, *degree, form.order(), std::move(cs));
}

Covariant Covariant::zero(int source_order, int degree, int order)
{
    auto ctx = coefficient_context(source_order);
    return Covariant(source_order, degree, order,
                     std::vector<MultiPoly>(static_cast<std::size_t>(std::max(order, 0)) + 1, MultiPoly(ctx)));
}

bool Covariant::is_zero() const
{
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

BinaryForm Covariant::form() const
{
    return BinaryForm(q_, coeffs_, coeffs_.front().context());
}

MultiPoly Covariant::bihomogeneous() const
{
    return form().to_polynomial();
}

Covariant Covariant::operator*(const Rational& c) const
{
    auto cs = coeffs_;
    for (auto& x : cs) {
        x *= c;
    }
    return Covariant(d_, m_, q_, std::move(cs));
}

bool Covariant::operator==(const Covariant& other) const
{
    return d_ == other.d_ && m_ == other.m_ && q_ == other.q_ && coeffs_ == other.coeffs_;
}

Covariant covariant_from_source(const MultiPoly& source, int d)
{
    auto ctx = coefficient_context(d);
    const MultiPoly phi0 = same_context(source.context(), ctx) ? source : source.embed(ctx);
    if (phi0.is_zero()) {
        throw DomainError("the zero polynomial is not a source");
    }
    const auto m = phi0.homogeneous_degree("a");
    if (!m) {
        throw DomainError("source is not homogeneous");
    }
    const auto w = isobaric_weight(phi0);
    if (!w) {
        throw DomainError("source is not isobaric");
    }
    const long q = long(d) * long(*m) - 2 * long(*w);
    if (q < 0) {
        throw DomainError("source weight too large: dm - 2w < 0");
    }
    if (!cayley_operator(CayleyOp::EMinus, phi0, d).is_zero()) {
        throw DomainError("not a source: E- does not annihilate it");
    }
    std::vector<MultiPoly> coeffs{phi0};
    const auto eplus = build_operator(CayleyOp::EPlus, *ctx, d);
    MultiPoly cur = phi0;
    Rational scale = 1;
    for (long k = 1; k <= q; ++k) {
        cur = eplus.apply(cur);
        scale /= Rational(q - k + 1);
        coeffs.push_back(cur * scale);
    }
    if (!eplus.apply(cur).is_zero()) {
        throw DomainError("E+^(q+1) does not annihilate the source");
    }
    return Covariant(d, static_cast<int>(*m), static_cast<int>(q), std::move(coeffs));
}

CovariantCertificate verify_covariant(const Covariant& phi)
{
    CovariantCertificate cert;
    const auto poly = phi.bihomogeneous();
    for (auto op : {CayleyOp::GammaMinus, CayleyOp::GammaPlus, CayleyOp::GammaZero}) {
        if (!cayley_operator(op, poly, phi.source_order()).is_zero()) {
            cert.failing.push_back(op);
        }
    }
    cert.is_covariant = cert.failing.empty();
    return cert;
}

Integer partition_count(long n, long k, long l)
{
    static std::mutex mu;
    static std::map<std::tuple<long, long, long>, Integer> memo;
    if (n < 0) {
        return 0;
    }
    if (n == 0) {
        return 1;
    }
    if (k <= 0 || l <= 0 || n > k * l) {
        return 0;
    }
    const auto key = std::make_tuple(n, k, l);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
    }
    // either no part equals l, or remove one part of size l
    Integer r = partition_count(n, k, l - 1) + partition_count(n - l, k - 1, l);
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, r);
    return r;
}

Integer zeta(int d, int m, int q)
{
    const long twice_w = long(d) * m - q;
    if (twice_w < 0 || twice_w % 2 != 0) {
        return 0;
    }
    const long w = twice_w / 2;
    return partition_count(w, d, m) - partition_count(w - 1, d, m);
}

namespace {

class ScalarParser {
public:
    ScalarParser(std::string_view text, long d) : s_(text), d_(d) {}

    Rational parse()
    {
        Rational v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected character");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("scalar expression: " + what + " at position " + std::to_string(pos_) + " in '" +
                         std::string(s_) + "'");
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Rational expr()
    {
        Rational v = term();
        for (;;) {
            if (eat('+')) {
                v += term();
            } else if (eat('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }
    Rational term()
    {
        Rational v = factor();
        for (;;) {
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                Rational den = factor();
                if (sgn(den) == 0) {
                    throw DomainError("division by zero in scalar expression '" + std::string(s_) + "'");
                }
                v /= den;
            } else {
                return v;
            }
        }
    }
    Rational factor()
    {
        skip();
        if (eat('-')) {
            return -factor();
        }
        if (eat('(')) {
            Rational v = expr();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (eat('d')) {
            return Rational(d_);
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number, d or '('");
        }
        return Rational(Integer(std::string(s_.substr(start, pos_ - start))));
    }

    std::string_view s_;
    long d_;
    std::size_t pos_ = 0;
};

class FormParser {
public:
    FormParser(std::string_view text, const BinaryForm& base) : s_(text), base_(base) {}

    FormExpr parse()
    {
        FormExpr v = sum();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected character");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("form expression: " + what + " at position " + std::to_string(pos_) + " in '" +
                         std::string(s_) + "'");
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c)
    {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w)
    {
        skip();
        if (s_.substr(pos_, w.size()) != w) {
            return false;
        }
        const std::size_t end = pos_ + w.size();
        if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) {
            return false;
        }
        pos_ = end;
        return true;
    }
    unsigned integer()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer");
        }
        return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
    }

    static FormExpr add(const FormExpr& a, const FormExpr& b, bool negate)
    {
        if (a.degree != b.degree || a.form.order() != b.form.order()) {
            throw DomainError("cannot add terms of degree/order (" + std::to_string(a.degree) + "," +
                              std::to_string(a.form.order()) + ") and (" + std::to_string(b.degree) + "," +
                              std::to_string(b.form.order()) + ")");
        }
        return {negate ? a.form - b.form : a.form + b.form, a.degree};
    }

    FormExpr sum()
    {
        bool neg = false;
        if (eat('-')) {
            neg = true;
        } else {
            eat('+');
        }
        FormExpr v = term();
        if (neg) {
            v.form = v.form * Rational(-1);
        }
        for (;;) {
            if (eat('+')) {
                v = add(v, term(), false);
            } else if (eat('-')) {
                v = add(v, term(), true);
            } else {
                return v;
            }
        }
    }

    FormExpr term()
    {
        Rational scalar = 1;
        std::optional<FormExpr> prod;
        do {
            skip();
            if (peek('{')) {
                ++pos_;
                const std::size_t close = s_.find('}', pos_);
                if (close == std::string_view::npos) {
                    fail("unterminated '{'");
                }
                scalar *= ScalarParser(s_.substr(pos_, close - pos_), base_.order()).parse();
                pos_ = close + 1;
            } else if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                Rational r{Integer(integer())};
                if (eat('/')) {
                    const unsigned den = integer();
                    if (den == 0) {
                        fail("zero denominator");
                    }
                    r /= Rational(den);
                }
                scalar *= r;
            } else {
                FormExpr f = power();
                if (prod) {
                    prod = FormExpr{prod->form * f.form, prod->degree + f.degree};
                } else {
                    prod = std::move(f);
                }
            }
        } while (eat('*'));
        if (!prod) {
            fail("term has no form factor");
        }
        prod->form = prod->form * scalar;
        return *prod;
    }

    FormExpr power()
    {
        FormExpr v = atom();
        if (eat('^')) {
            const unsigned n = integer();
            v = FormExpr{v.form.pow(n), v.degree * static_cast<int>(n)};
        }
        return v;
    }

    FormExpr atom()
    {
        if (eat('(')) {
            FormExpr v = sum();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (eat_word("MUL")) {
            if (!eat('(')) {
                fail("expected '(' after MUL");
            }
            FormExpr v = sum();
            while (eat(',')) {
                FormExpr w = sum();
                v = FormExpr{v.form * w.form, v.degree + w.degree};
            }
            if (!eat(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (eat_word("T")) {
            if (!eat('(')) {
                fail("expected '(' after T");
            }
            FormExpr a = sum();
            if (!eat(',')) {
                fail("expected ','");
            }
            FormExpr b = sum();
            if (!eat(',')) {
                fail("expected ','");
            }
            const unsigned k = integer();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return FormExpr{transvectant(a.form, b.form, static_cast<int>(k)), a.degree + b.degree};
        }
        if (eat_word("F") || eat_word("B")) {
            return FormExpr{base_, 1};
        }
        fail("expected F, B, T(...), MUL(...) or '('");
    }

    std::string_view s_;
    const BinaryForm& base_;
    std::size_t pos_ = 0;
};

} // namespace

FormExpr evaluate_form_expression(std::string_view text, const BinaryForm& base)
{
    return FormParser(text, base).parse();
}

bool identity_check(std::string_view lhs, std::string_view rhs, int d)
{
    const auto base = BinaryForm::generic(d);
    const auto l = evaluate_form_expression(lhs, base);
    const auto r = evaluate_form_expression(rhs, base);
    if (l.degree != r.degree || l.form.order() != r.form.order()) {
        throw DomainError("identity sides differ: degree/order (" + std::to_string(l.degree) + "," +
                          std::to_string(l.form.order()) + ") vs (" + std::to_string(r.degree) + "," +
                          std::to_string(r.form.order()) + ")");
    }
    return l.form == r.form;
}

} // namespace covforge
