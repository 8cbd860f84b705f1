#include "covforge/json_io.hpp"

#include "covforge/error.hpp"
#include "covforge/poly_io.hpp"

#include <fstream>
#include <sstream>

namespace covforge {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

int int_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer()) {
        throw ParseError(std::string("field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

std::string poly_text(const Json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    throw ParseError("coefficients must be strings or integers");
}

// Context covering every variable named in the texts.
ContextPtr joint_context(const std::vector<std::string>& texts)
{
    std::string joined;
    for (const auto& t : texts) {
        joined += "(" + t + ")+";
    }
    joined += "0";
    return infer_context(joined);
}

std::string var_family_of(const Json& j)
{
    if (!j.contains("vars")) {
        return "x";
    }
    const Json& vars = j.at("vars");
    if (!vars.is_array() || vars.size() != 2 || !vars[0].is_string() || !vars[1].is_string()) {
        throw ParseError("'vars' must be a pair of variable names");
    }
    const auto a = vars[0].get<std::string>();
    const auto b = vars[1].get<std::string>();
    if (a.size() < 2 || a.back() != '1' || b != a.substr(0, a.size() - 1) + "2") {
        throw ParseError("'vars' must read like [\"x1\", \"x2\"]");
    }
    return a.substr(0, a.size() - 1);
}

// Re-express with the full family pair, whatever subset of it was mentioned.
ContextPtr with_family(const ContextPtr& ctx, const std::string& family, int n)
{
    auto rest = ctx->has_family(family) ? ctx->without(family) : ctx;
    return Context::unite(rest, Context::make({VarFamily::flat(family, 1, n)}));
}

} // namespace

Json to_json(const BinaryForm& f)
{
    Json j;
    j["order"] = f.order();
    j["vars"] = {f.var_family() + "1", f.var_family() + "2"};
    Json cs = Json::array();
    for (const auto& c : f.coefficients()) {
        cs.push_back(to_string(c));
    }
    j["cayley_coefficients"] = cs;
    return j;
}

BinaryForm binary_form_from_json(const Json& j)
{
    const int order = int_field(j, "order");
    const std::string fam = var_family_of(j);
    if (j.contains("polynomial")) {
        const std::string text = poly_text(j.at("polynomial"));
        auto ctx = with_family(infer_context(text), fam, 2);
        return BinaryForm::from_polynomial(parse_poly(text, ctx), order, fam);
    }
    const Json& cs = field(j, "cayley_coefficients");
    if (!cs.is_array()) {
        throw ParseError("'cayley_coefficients' must be an array");
    }
    if (order < 0 || cs.size() != static_cast<std::size_t>(order) + 1) {
        throw ParseError("expected " + std::to_string(order + 1) + " Cayley coefficients");
    }
    std::vector<std::string> texts;
    for (const auto& c : cs) {
        texts.push_back(poly_text(c));
    }
    auto ctx = joint_context(texts);
    if (ctx->has_family(fam)) {
        throw ParseError("Cayley coefficients may not use the form variables");
    }
    std::vector<MultiPoly> coeffs;
    for (const auto& t : texts) {
        coeffs.push_back(parse_poly(t, ctx));
    }
    return BinaryForm(order, std::move(coeffs), ctx, fam);
}

Json to_json(const Covariant& c)
{
    Json j;
    j["d"] = c.source_order();
    j["degree"] = c.degree();
    j["order"] = c.order();
    Json cs = Json::array();
    for (const auto& p : c.coefficients()) {
        cs.push_back(to_string(p));
    }
    j["coefficients"] = cs;
    return j;
}

Covariant covariant_from_json(const Json& j)
{
    const int d = int_field(j, "d");
    const int m = int_field(j, "degree");
    const int q = int_field(j, "order");
    const Json& cs = field(j, "coefficients");
    if (!cs.is_array()) {
        throw ParseError("'coefficients' must be an array");
    }
    auto ctx = coefficient_context(d);
    std::vector<MultiPoly> coeffs;
    for (const auto& c : cs) {
        coeffs.push_back(parse_poly(poly_text(c), ctx));
    }
    return Covariant(d, m, q, std::move(coeffs));
}

Json to_json(const NaryForm& f)
{
    Json j;
    j["n"] = f.variables();
    j["order"] = f.order();
    Json cs = Json::object();
    for (const auto& index : multi_indices(f.variables(), f.order())) {
        const auto& c = f.coefficient(index);
        if (c.is_zero()) {
            continue;
        }
        std::string key = "(";
        for (std::size_t k = 0; k < index.size(); ++k) {
            key += (k ? "," : "") + std::to_string(index[k]);
        }
        cs[key + ")"] = to_string(c);
    }
    j["coefficients"] = cs;
    return j;
}

NaryForm nary_form_from_json(const Json& j)
{
    const int n = int_field(j, "n");
    const int order = int_field(j, "order");
    if (n < 2 || order < 0) {
        throw ParseError("n-ary form needs n >= 2 and a nonnegative order");
    }
    if (j.contains("polynomial")) {
        const std::string text = poly_text(j.at("polynomial"));
        auto ctx = with_family(infer_context(text), "x", n);
        return NaryForm::from_polynomial(parse_poly(text, ctx), n, order);
    }
    const Json& cs = field(j, "coefficients");
    if (!cs.is_object()) {
        throw ParseError("'coefficients' must be an object keyed by \"(i1,...,in)\"");
    }
    std::vector<std::string> texts;
    std::vector<MultiIndex> keys;
    for (const auto& [key, value] : cs.items()) {
        if (key.size() < 2 || key.front() != '(' || key.back() != ')') {
            throw ParseError("bad multi-index key '" + key + "'");
        }
        MultiIndex index;
        std::stringstream in(key.substr(1, key.size() - 2));
        std::string part;
        while (std::getline(in, part, ',')) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(part, &used);
                if (v < 0 || part.find_first_not_of(' ', used) != std::string::npos) {
                    throw ParseError("");
                }
                index.push_back(static_cast<unsigned>(v));
            } catch (const std::exception&) {
                throw ParseError("bad multi-index key '" + key + "'");
            }
        }
        keys.push_back(std::move(index));
        texts.push_back(poly_text(value));
    }
    auto ctx = joint_context(texts);
    std::map<MultiIndex, MultiPoly> coeffs;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (coeffs.count(keys[i])) {
            throw ParseError("repeated multi-index");
        }
        coeffs.emplace(keys[i], parse_poly(texts[i], ctx));
    }
    try {
        return NaryForm(n, order, std::move(coeffs), ctx);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

Json power_result_json(const std::optional<PowerDecomposition>& result, int mu)
{
    Json j;
    j["is_power"] = result.has_value();
    j["mu"] = mu;
    if (result) {
        j["base"] = to_json(result->base);
        j["scalar"] = result->scalar.get_str();
    } else {
        j["base"] = nullptr;
        j["scalar"] = nullptr;
    }
    return j;
}

Json to_json(const SaturationReport& report)
{
    Json j;
    j["r"] = report.r;
    j["d"] = report.d;
    j["max_degree"] = report.max_degree;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"m", row.degree},
                        {"dim_J", row.dim_j},
                        {"dim_IX", row.dim_ix},
                        {"equal", row.equal},
                        {"dims_exact", row.dims_exact}});
    }
    j["rows"] = rows;
    if (report.candidate) {
        j["candidate_si"] = *report.candidate;
    } else {
        j["candidate_si"] = nullptr;
    }
    j["verified_up_to"] = report.max_degree;
    return j;
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

} // namespace covforge
