#include "covforge/poly.hpp"

#include "covforge/error.hpp"

#include <algorithm>

namespace covforge {

std::size_t ExponentsHash::operator()(const Exponents& e) const noexcept
{
    std::size_t h = 1469598103934665603ULL;
    for (auto x : e) {
        h ^= x;
        h *= 1099511628211ULL;
    }
    return h;
}

unsigned total_degree(const Exponents& e)
{
    unsigned s = 0;
    for (auto x : e) {
        s += x;
    }
    return s;
}

bool grlex_less(const Exponents& a, const Exponents& b)
{
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) {
        return da < db;
    }
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

Exponents add_exponents(const Exponents& a, const Exponents& b)
{
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const unsigned s = unsigned(a[i]) + unsigned(b[i]);
        if (s > 255) {
            throw DomainError("exponent overflow (limit 255)");
        }
        out[i] = static_cast<std::uint8_t>(s);
    }
    return out;
}

using TermMap = std::unordered_map<Exponents, Rational, ExponentsHash>;

std::vector<Term> collect(TermMap& acc)
{
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc) {
        if (sgn(c) != 0) {
            out.push_back(Term{e, std::move(c)});
        }
    }
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return grlex_less(x.exps, y.exps); });
    return out;
}

} // namespace

MultiPoly::MultiPoly(ContextPtr ctx) : ctx_(std::move(ctx))
{
    if (!ctx_) {
        throw ContextError("null context");
    }
}

MultiPoly MultiPoly::constant(ContextPtr ctx, const Rational& c)
{
    MultiPoly p(std::move(ctx));
    if (sgn(c) != 0) {
        p.terms_.push_back(Term{Exponents(p.ctx_->num_vars(), 0), c});
    }
    return p;
}

MultiPoly MultiPoly::variable(ContextPtr ctx, std::size_t var, unsigned power)
{
    if (var >= ctx->num_vars()) {
        throw ContextError("variable index out of range");
    }
    if (power > 255) {
        throw DomainError("exponent overflow (limit 255)");
    }
    Exponents e(ctx->num_vars(), 0);
    e[var] = static_cast<std::uint8_t>(power);
    return monomial(std::move(ctx), std::move(e), 1);
}

MultiPoly MultiPoly::monomial(ContextPtr ctx, Exponents exps, const Rational& c)
{
    MultiPoly p(std::move(ctx));
    if (exps.size() != p.ctx_->num_vars()) {
        throw ContextError("exponent vector length does not match context");
    }
    if (sgn(c) != 0) {
        p.terms_.push_back(Term{std::move(exps), c});
    }
    return p;
}

MultiPoly MultiPoly::from_terms(ContextPtr ctx, std::vector<Term> terms)
{
    MultiPoly p(std::move(ctx));
    TermMap acc;
    acc.reserve(terms.size());
    for (auto& t : terms) {
        if (t.exps.size() != p.ctx_->num_vars()) {
            throw ContextError("exponent vector length does not match context");
        }
        acc[t.exps] += t.coef;
    }
    p.terms_ = collect(acc);
    return p;
}

MultiPoly MultiPoly::from_canonical(ContextPtr ctx, std::vector<Term> terms)
{
    MultiPoly p(std::move(ctx));
    p.terms_ = std::move(terms);
    return p;
}

bool MultiPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && covforge::total_degree(terms_[0].exps) == 0);
}

Rational MultiPoly::constant_value() const
{
    if (!is_constant()) {
        throw DomainError("polynomial is not constant");
    }
    return terms_.empty() ? Rational(0) : terms_[0].coef;
}

Rational MultiPoly::coefficient_of(const Exponents& e) const
{
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                     [](const Term& t, const Exponents& x) { return grlex_less(t.exps, x); });
    if (it != terms_.end() && it->exps == e) {
        return it->coef;
    }
    return 0;
}

unsigned MultiPoly::total_degree() const
{
    return terms_.empty() ? 0 : covforge::total_degree(terms_.back().exps);
}

unsigned MultiPoly::degree_in(std::size_t var) const
{
    unsigned out = 0;
    for (const auto& t : terms_) {
        out = std::max<unsigned>(out, t.exps.at(var));
    }
    return out;
}

std::vector<std::size_t> MultiPoly::support() const
{
    std::vector<bool> seen(ctx_->num_vars(), false);
    for (const auto& t : terms_) {
        for (std::size_t v = 0; v < t.exps.size(); ++v) {
            if (t.exps[v] != 0) {
                seen[v] = true;
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < seen.size(); ++v) {
        if (seen[v]) {
            out.push_back(v);
        }
    }
    return out;
}

void MultiPoly::require_same(const MultiPoly& other) const
{
    if (!same_context(ctx_, other.ctx_)) {
        throw ContextError("operands live in different contexts");
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other)
{
    require_same(other);
    if (other.terms_.empty()) {
        return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto i = terms_.begin();
    auto j = other.terms_.begin();
    while (i != terms_.end() || j != other.terms_.end()) {
        if (j == other.terms_.end() || (i != terms_.end() && grlex_less(i->exps, j->exps))) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || grlex_less(j->exps, i->exps)) {
            out.push_back(*j++);
        } else {
            Rational s = i->coef + j->coef;
            if (sgn(s) != 0) {
                out.push_back(Term{std::move(i->exps), std::move(s)});
            }
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other)
{
    return *this += -other;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly out = *this;
    for (auto& t : out.terms_) {
        t.coef = -t.coef;
    }
    return out;
}

MultiPoly& MultiPoly::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.coef *= c;
    }
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other)
{
    *this = *this * other;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    a.require_same(b);
    MultiPoly out(a.ctx_);
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    if (a.is_constant()) {
        return b * a.terms_[0].coef;
    }
    if (b.is_constant()) {
        return a * b.terms_[0].coef;
    }
    TermMap acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
    Rational prod;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            mpq_mul(prod.get_mpq_t(), ta.coef.get_mpq_t(), tb.coef.get_mpq_t());
            auto [it, inserted] = acc.try_emplace(add_exponents(ta.exps, tb.exps));
            if (inserted) {
                it->second = prod;
            } else {
                it->second += prod;
            }
        }
    }
    out.terms_ = collect(acc);
    return out;
}

bool MultiPoly::operator==(const MultiPoly& other) const
{
    if (!same_context(ctx_, other.ctx_) || terms_.size() != other.terms_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].exps != other.terms_[i].exps || terms_[i].coef != other.terms_[i].coef) {
            return false;
        }
    }
    return true;
}

MultiPoly MultiPoly::pow(long n) const
{
    if (n < 0) {
        throw DomainError("negative exponent in pow");
    }
    MultiPoly result = constant(ctx_, 1);
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

MultiPoly MultiPoly::diff(std::size_t var, unsigned times) const
{
    if (var >= ctx_->num_vars()) {
        throw ContextError("unknown variable in diff");
    }
    MultiPoly out(ctx_);
    if (times == 0) {
        return *this;
    }
    for (const auto& t : terms_) {
        const unsigned e = t.exps[var];
        if (e < times) {
            continue;
        }
        Integer falling = 1;
        for (unsigned k = 0; k < times; ++k) {
            falling *= (e - k);
        }
        Term nt{t.exps, t.coef * falling};
        nt.exps[var] = static_cast<std::uint8_t>(e - times);
        out.terms_.push_back(std::move(nt));
    }
    // Uniform decrease of one coordinate preserves grlex order among survivors.
    return out;
}

MultiPoly MultiPoly::substitute(const std::map<std::size_t, MultiPoly>& bindings, ContextPtr target) const
{
    Substitution s(ctx_, std::move(target));
    for (const auto& [v, value] : bindings) {
        s.bind(v, value);
    }
    return s.apply(*this);
}

MultiPoly MultiPoly::substitute(const std::map<std::size_t, MultiPoly>& bindings) const
{
    if (bindings.empty()) {
        return *this;
    }
    return substitute(bindings, bindings.begin()->second.context());
}

MultiPoly MultiPoly::embed(ContextPtr target) const
{
    if (same_context(ctx_, target)) {
        MultiPoly out = *this;
        out.ctx_ = std::move(target);
        return out;
    }
    std::vector<std::size_t> map(ctx_->num_vars());
    for (std::size_t v = 0; v < map.size(); ++v) {
        const auto w = target->find(ctx_->var_name(v));
        if (!w) {
            bool used = false;
            for (const auto& t : terms_) {
                used = used || t.exps[v] != 0;
            }
            if (used) {
                throw ContextError("variable '" + ctx_->var_name(v) + "' missing from target context");
            }
            map[v] = target->num_vars();
        } else {
            map[v] = *w;
        }
    }
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(target->num_vars(), 0);
        for (std::size_t v = 0; v < map.size(); ++v) {
            if (t.exps[v] != 0) {
                e[map[v]] = t.exps[v];
            }
        }
        ts.push_back(Term{std::move(e), t.coef});
    }
    return from_terms(std::move(target), std::move(ts));
}

MultiPoly MultiPoly::coefficient(std::string_view family, std::span<const unsigned> pattern) const
{
    const auto& fam = ctx_->family(family);
    if (pattern.size() != fam.size()) {
        throw DomainError("exponent pattern length does not match family '" + std::string(family) + "'");
    }
    const std::size_t off = ctx_->family_offset(family);
    auto rest = ctx_->without(family);
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        bool match = true;
        for (std::size_t k = 0; k < pattern.size() && match; ++k) {
            match = t.exps[off + k] == pattern[k];
        }
        if (!match) {
            continue;
        }
        Exponents e;
        e.reserve(rest->num_vars());
        for (std::size_t v = 0; v < t.exps.size(); ++v) {
            if (v < off || v >= off + pattern.size()) {
                e.push_back(t.exps[v]);
            }
        }
        ts.push_back(Term{std::move(e), t.coef});
    }
    return from_terms(std::move(rest), std::move(ts));
}

std::optional<unsigned> MultiPoly::homogeneous_degree(std::string_view family) const
{
    const auto& fam = ctx_->family(family);
    const std::size_t off = ctx_->family_offset(family);
    std::optional<unsigned> deg;
    for (const auto& t : terms_) {
        unsigned s = 0;
        for (std::size_t k = 0; k < fam.size(); ++k) {
            s += t.exps[off + k];
        }
        if (deg && *deg != s) {
            return std::nullopt;
        }
        deg = s;
    }
    return deg;
}

bool MultiPoly::is_homogeneous(std::string_view family, unsigned degree) const
{
    if (is_zero()) {
        return true;
    }
    const auto deg = homogeneous_degree(family);
    return deg && *deg == degree;
}

bool MultiPoly::is_isobaric(std::string_view family, unsigned weight) const
{
    const auto& fam = ctx_->family(family);
    if (fam.is_grid()) {
        throw DomainError("isobaric weight is defined for flat families only");
    }
    const std::size_t off = ctx_->family_offset(family);
    for (const auto& t : terms_) {
        long w = 0;
        for (std::size_t k = 0; k < fam.size(); ++k) {
            w += long(t.exps[off + k]) * (fam.first() + long(k));
        }
        if (w != long(weight)) {
            return false;
        }
    }
    return true;
}

void LinearDerivation::add(std::optional<std::size_t> target, std::size_t source, const Rational& coef)
{
    if (sgn(coef) != 0) {
        parts_.push_back(Part{target, source, coef});
    }
}

MultiPoly LinearDerivation::apply(const MultiPoly& p) const
{
    const std::size_t nv = p.context()->num_vars();
    for (const auto& part : parts_) {
        if (part.source >= nv || (part.target && *part.target >= nv)) {
            throw ContextError("derivation refers to a variable outside the context");
        }
    }
    TermMap acc;
    acc.reserve(p.size() * 2 + 1);
    Rational c;
    for (const auto& t : p.terms()) {
        for (const auto& part : parts_) {
            const unsigned e = t.exps[part.source];
            if (e == 0) {
                continue;
            }
            Exponents ne = t.exps;
            ne[part.source] = static_cast<std::uint8_t>(e - 1);
            if (part.target) {
                if (ne[*part.target] == 255) {
                    throw DomainError("exponent overflow (limit 255)");
                }
                ne[*part.target] += 1;
            }
            c = t.coef * part.coef;
            c *= e;
            acc[std::move(ne)] += c;
        }
    }
    return MultiPoly::from_canonical(p.context(), collect(acc));
}

MultiPoly LinearDerivation::apply(const MultiPoly& p, unsigned times) const
{
    MultiPoly out = p;
    for (unsigned k = 0; k < times && !out.is_zero(); ++k) {
        out = apply(out);
    }
    return out;
}

Substitution::Substitution(ContextPtr source, ContextPtr target)
    : source_(std::move(source)), target_(std::move(target)), var_images_(source_->num_vars())
{
}

void Substitution::bind(std::size_t var, MultiPoly value)
{
    if (var >= source_->num_vars()) {
        throw ContextError("substitution binds a variable outside the source context");
    }
    if (!same_context(value.context(), target_)) {
        value = value.embed(target_);
    }
    var_images_[var] = std::move(value);
    cache_.clear();
}

const MultiPoly& Substitution::image_of(const Exponents& e)
{
    auto it = cache_.find(e);
    if (it != cache_.end()) {
        return it->second;
    }
    std::size_t v = 0;
    while (v < e.size() && e[v] == 0) {
        ++v;
    }
    if (v == e.size()) {
        return cache_.emplace(e, MultiPoly::constant(target_, 1)).first->second;
    }
    if (!var_images_[v]) {
        const auto w = target_->find(source_->var_name(v));
        if (!w) {
            throw ContextError("unbound variable '" + source_->var_name(v) + "' missing from target context");
        }
        var_images_[v] = MultiPoly::variable(target_, *w);
    }
    Exponents rest = e;
    rest[v] -= 1;
    MultiPoly img = image_of(rest) * *var_images_[v];
    return cache_.emplace(e, std::move(img)).first->second;
}

MultiPoly Substitution::apply(const MultiPoly& p)
{
    if (!same_context(p.context(), source_)) {
        throw ContextError("substitution applied to a polynomial from another context");
    }
    TermMap acc;
    Rational c;
    for (const auto& t : p.terms()) {
        const MultiPoly& img = image_of(t.exps);
        for (const auto& it : img.terms()) {
            c = it.coef * t.coef;
            acc[it.exps] += c;
        }
    }
    return MultiPoly::from_canonical(target_, collect(acc));
}

} // namespace covforge
