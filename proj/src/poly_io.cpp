#include "covforge/poly_io.hpp"

#include "covforge/error.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace covforge {

std::string to_string(const MultiPoly& p)
{
    if (p.is_zero()) {
        return "0";
    }
    const auto& ctx = *p.context();
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Rational c = it->coef;
        const bool negative = sgn(c) < 0;
        if (negative) {
            c = -c;
        }
        if (first) {
            out << (negative ? "-" : "");
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (c != 1 || total_degree(it->exps) == 0) {
            out << c.get_str();
            wrote = true;
        }
        for (std::size_t v = 0; v < it->exps.size(); ++v) {
            const unsigned e = it->exps[v];
            if (e == 0) {
                continue;
            }
            if (wrote) {
                out << '*';
            }
            out << ctx.var_name(v);
            if (e > 1) {
                out << '^' << e;
            }
            wrote = true;
        }
    }
    return out.str();
}

namespace {

struct Lexer {
    std::string_view s;
    std::size_t pos = 0;

    void skip()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
    }
    bool done()
    {
        skip();
        return pos >= s.size();
    }
    char peek()
    {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at position " + std::to_string(pos) + " in '" + std::string(s) + "'");
    }
    std::string digits()
    {
        skip();
        std::string out;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            out.push_back(s[pos++]);
        }
        if (out.empty()) {
            fail("expected digits");
        }
        return out;
    }
    // letters followed by digits, or letters '_' digits '_' digits
    std::string name()
    {
        skip();
        std::string out;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
            out.push_back(s[pos++]);
        }
        if (out.empty()) {
            fail("expected variable name");
        }
        if (pos < s.size() && s[pos] == '_') {
            out.push_back(s[pos++]);
            out += digits_raw();
            if (pos >= s.size() || s[pos] != '_') {
                fail("expected '_' in doubly-indexed name");
            }
            out.push_back(s[pos++]);
            out += digits_raw();
        } else {
            out += digits_raw();
        }
        return out;
    }
    std::string digits_raw()
    {
        std::string out;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            out.push_back(s[pos++]);
        }
        if (out.empty()) {
            fail("expected index digits");
        }
        return out;
    }
};

struct ParsedName {
    std::string family;
    bool grid = false;
    int i = 0;
    int j = 0;
};

ParsedName split_name(const std::string& name)
{
    ParsedName out;
    std::size_t k = 0;
    while (k < name.size() && std::isalpha(static_cast<unsigned char>(name[k]))) {
        ++k;
    }
    out.family = name.substr(0, k);
    if (k < name.size() && name[k] == '_') {
        const auto second = name.find('_', k + 1);
        out.grid = true;
        out.i = std::stoi(name.substr(k + 1, second - k - 1));
        out.j = std::stoi(name.substr(second + 1));
    } else {
        out.i = std::stoi(name.substr(k));
    }
    return out;
}

// Generic walk over the grammar; `on_var` resolves names.
template <typename Resolve>
MultiPoly parse_with(std::string_view text, const ContextPtr& ctx, Resolve&& resolve)
{
    Lexer lx{text};
    MultiPoly acc(ctx);
    if (lx.done()) {
        lx.fail("empty polynomial");
    }
    bool first = true;
    while (!lx.done()) {
        bool negative = false;
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            negative = true;
        } else if (!first) {
            lx.fail("expected '+' or '-'");
        }
        first = false;
        Rational coef = 1;
        Exponents e(ctx->num_vars(), 0);
        bool need_factor = true;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            std::string num = lx.digits();
            if (lx.accept('/')) {
                num += "/" + lx.digits();
            }
            coef = parse_rational(num);
            need_factor = false;
            if (!lx.accept('*')) {
                acc += MultiPoly::monomial(ctx, e, negative ? Rational(-coef) : coef);
                continue;
            }
            need_factor = true;
        }
        while (need_factor) {
            const std::string nm = lx.name();
            const std::size_t v = resolve(nm, lx);
            unsigned power = 1;
            if (lx.accept('^')) {
                const std::string p = lx.digits();
                if (p.size() > 3 || std::stoul(p) > 255) {
                    lx.fail("exponent too large");
                }
                power = static_cast<unsigned>(std::stoul(p));
            }
            const unsigned ne = unsigned(e[v]) + power;
            if (ne > 255) {
                lx.fail("exponent too large");
            }
            e[v] = static_cast<std::uint8_t>(ne);
            need_factor = lx.accept('*');
            if (need_factor && std::isdigit(static_cast<unsigned char>(lx.peek()))) {
                lx.fail("numeric factor must lead the term");
            }
        }
        acc += MultiPoly::monomial(ctx, std::move(e), negative ? Rational(-coef) : coef);
    }
    return acc;
}

} // namespace

MultiPoly parse_poly(std::string_view text, const ContextPtr& ctx)
{
    return parse_with(text, ctx, [&](const std::string& nm, Lexer& lx) -> std::size_t {
        const auto v = ctx->find(nm);
        if (!v) {
            lx.fail("unknown variable '" + nm + "'");
        }
        return *v;
    });
}

ContextPtr infer_context(std::string_view text)
{
    // First pass: collect names with a throwaway context that accepts anything.
    std::vector<std::string> order;
    std::map<std::string, std::pair<int, int>> flat_max;
    std::map<std::string, std::pair<std::pair<int, int>, bool>> grid_max;
    Lexer lx{text};
    while (!lx.done()) {
        const char c = lx.peek();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const ParsedName pn = split_name(lx.name());
            bool known = false;
            for (const auto& o : order) {
                known = known || o == pn.family;
            }
            if (!known) {
                order.push_back(pn.family);
            }
            if (pn.grid) {
                if (flat_max.count(pn.family)) {
                    lx.fail("family '" + pn.family + "' used both flat and doubly-indexed");
                }
                auto& g = grid_max[pn.family];
                g.first.first = std::max(g.first.first, pn.i);
                g.first.second = std::max(g.first.second, pn.j);
            } else {
                if (grid_max.count(pn.family)) {
                    lx.fail("family '" + pn.family + "' used both flat and doubly-indexed");
                }
                auto [it, fresh] = flat_max.try_emplace(pn.family, pn.i, pn.i);
                it->second.first = std::min(it->second.first, pn.i);
                it->second.second = std::max(it->second.second, pn.i);
            }
        } else {
            ++lx.pos;
        }
    }
    std::vector<VarFamily> fams;
    for (const auto& name : order) {
        if (flat_max.count(name)) {
            const auto [lo, hi] = flat_max[name];
            fams.push_back(VarFamily::flat(name, lo, hi - lo + 1));
        } else {
            const auto& g = grid_max[name].first;
            fams.push_back(VarFamily::grid(name, 0, g.first + 1, 0, g.second + 1));
        }
    }
    return Context::make(std::move(fams));
}

} // namespace covforge
