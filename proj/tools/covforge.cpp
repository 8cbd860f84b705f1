#include "covforge/clebsch.hpp"
#include "covforge/error.hpp"
#include "covforge/hilbert.hpp"
#include "covforge/ideals.hpp"
#include "covforge/json_io.hpp"
#include "covforge/poly_io.hpp"
#include "covforge/power.hpp"
#include "covforge/suites.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

using namespace covforge;

namespace {

/// Inconsistent flags that CLI11 cannot see on its own (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

struct Output {
    Json doc;
    std::string text;
    /// Set by tabular commands; others fall back to key,value rows.
    std::optional<std::string> csv;
    /// Claims that were checked and failed turn the exit code to 1.
    bool failed = false;
};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string scalar_text(const Json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string generic_csv(const Json& doc)
{
    std::string out = "key,value\n";
    for (const auto& [key, value] : doc.items()) {
        out += csv_field(key) + "," + csv_field(scalar_text(value)) + "\n";
    }
    return out;
}

std::string bool_text(bool b)
{
    return b ? "true" : "false";
}

std::string rs(int r, int d)
{
    return "{" + std::to_string(r) + "," + std::to_string(d) + "}";
}

std::string covariant_text(const std::string& name, const Covariant& c)
{
    std::ostringstream out;
    out << name << ": degree " << c.degree() << ", order " << c.order() << "\n";
    for (std::size_t k = 0; k < c.coefficients().size(); ++k) {
        out << "phi_" << k << " = " << to_string(c.coefficients()[k]) << "\n";
    }
    return out.str();
}

std::string form_text(const BinaryForm& f)
{
    return to_string(f.to_polynomial());
}

void require_same(int flag, int actual, const std::string& what)
{
    if (flag != actual) {
        throw UsageError("--" + what + " is " + std::to_string(flag) + " but the form has " + what + " " +
                         std::to_string(actual));
    }
}

Output cmd_hilbert(int r, int d, const std::string& eval_file)
{
    const auto h = hilbert_covariant(r, d);
    Output o;
    o.doc["covariant"] = to_json(h);
    o.text = covariant_text("Hilb_" + rs(r, d), h);
    if (!eval_file.empty()) {
        const auto f = binary_form_from_json(load_json_file(eval_file));
        require_same(d, f.order(), "d");
        const auto value = evaluate_covariant(h, f);
        o.doc["evaluation"] = {{"form", to_json(f)}, {"value", to_json(value)}, {"vanishes", value.is_zero()}};
        o.text += "value at form: " + form_text(value) + "\nvanishes: " + bool_text(value.is_zero()) + "\n";
    }
    return o;
}

Output cmd_goettingen(int r, int d, const std::string& psi_text)
{
    Output o;
    if (psi_text.empty()) {
        const auto g = goettingen_basic(r, d);
        o.doc["covariant"] = to_json(g);
        o.text = covariant_text("Gott_" + rs(r, d), g);
        return o;
    }
    if (d < 2) {
        throw UsageError("--psi needs d >= 2");
    }
    const auto v = evaluate_form_expression(psi_text, BinaryForm::generic(d - 2));
    const auto psi = Covariant::from_form(v.form, d - 2, v.degree);
    const auto g = goettingen_general(psi, r, d);
    o.doc["psi"] = psi_text;
    o.doc["covariant"] = to_json(g);
    o.text = covariant_text("Gott_" + rs(r, d) + "[" + psi_text + "]", g);
    return o;
}

Output cmd_check_theorem(int r, int d)
{
    const auto kappa = kappa_scalar(r, d);
    const auto g = goettingen_basic(r, d);
    const auto h = hilbert_covariant(r, d);
    const bool sources = g.source() == hilbert_source(r, d) * kappa;
    const bool full = g == h * kappa;
    Output o;
    o.doc = {{"r", r}, {"d", d}, {"kappa", kappa.get_str()}, {"sources_equal", sources}, {"covariants_equal", full}};
    o.text = "Gott_" + rs(r, d) + " = kappa_" + rs(r, d) + " * Hilb_" + rs(r, d) + ": " + bool_text(full) +
             "\nsources agree: " + bool_text(sources) + "\nkappa_" + rs(r, d) + " = " + kappa.get_str() + "\n";
    o.failed = !(sources && full);
    return o;
}

Output cmd_kappa(int r, int d)
{
    const auto k = kappa_scalar(r, d);
    Output o;
    o.doc = {{"r", r}, {"d", d}, {"kappa", k.get_str()}};
    o.text = k.get_str() + "\n";
    return o;
}

Output cmd_power_test(int mu, const std::string& file)
{
    const auto f = binary_form_from_json(load_json_file(file));
    const auto dec = perfect_power_decompose(f, mu);
    Output o;
    o.doc = power_result_json(dec, mu);
    if (dec) {
        o.text = "power: true\nbase: " + form_text(dec->base) + "\nscalar: " + dec->scalar.get_str() + "\n";
    } else {
        o.text = "power: false\n";
    }
    return o;
}

Output cmd_zeta(int d, int m, int q)
{
    const auto z = zeta(d, m, q);
    Output o;
    o.doc = {{"d", d}, {"m", m}, {"q", q}, {"zeta", z.get_str()}};
    o.text = z.get_str() + "\n";
    return o;
}

Output cmd_ideal_dims(int r, int d, int m, const std::string& which)
{
    const int e = std::gcd(r, d);
    const auto basis = MonomialBasis::get(d, m);
    Output o;
    o.doc = {{"r", r}, {"d", d}, {"degree", m}, {"ambient", basis->size()}};
    Json dims = Json::object();
    bool exact = true;
    std::string csv = "ideal,dim\n";
    auto add = [&](const std::string& key, const std::string& label, const GradedPiece& piece) {
        dims[key] = piece.dimension();
        exact = exact && piece.dimension_exact();
        o.text += "dim " + label + " = " + std::to_string(piece.dimension()) + "\n";
        csv += key + "," + std::to_string(piece.dimension()) + "\n";
    };
    const auto deg = std::to_string(m);
    if (which == "j" || which == "all") {
        add("J", "J_" + rs(r, d) + " in degree " + deg, j_piece(r, d, m));
    }
    if (which == "g" || which == "all") {
        add("g", "g_" + rs(r, d) + " in degree " + deg, g_piece(r, d, m));
    }
    if (which == "ix" || which == "all") {
        add("IX", "I_X_" + rs(e, d) + " in degree " + deg, ix_piece(e, d, m));
    }
    o.doc["dims"] = dims;
    o.doc["exact"] = exact;
    o.text = "dim R_" + deg + " = " + std::to_string(basis->size()) + "\n" + o.text;
    if (!exact) {
        o.text += "(some dimensions rest on modular ranks)\n";
    }
    o.csv = csv;
    return o;
}

Output cmd_si_scan(int r, int d, int max_degree)
{
    if (d % r != 0) {
        throw UsageError("si-scan needs r dividing d");
    }
    const auto rep = saturation_scan(r, d, max_degree);
    Output o;
    o.doc = to_json(rep);
    o.csv = to_csv(rep);
    std::ostringstream t;
    t << "m dim_J dim_IX equal\n";
    for (const auto& row : rep.rows) {
        t << row.degree << " " << row.dim_j << " " << row.dim_ix << " " << bool_text(row.equal)
          << (row.dims_exact ? "" : " (modular)") << "\n";
    }
    if (rep.candidate) {
        t << "SI" << rs(r, d) << " candidate: " << *rep.candidate << " (verified up to m=" << max_degree << ")\n";
    } else {
        t << "no equality up to m=" << max_degree << "\n";
    }
    o.text = t.str();
    return o;
}

Output cmd_containment(int r1, int r2, int d)
{
    const bool c = ideal_containment(r1, r2, d);
    Output o;
    o.doc = {{"r1", r1}, {"r2", r2}, {"d", d}, {"contains", c}};
    o.text = "J_" + rs(r1, d) + " contains J_" + rs(r2, d) + ": " + bool_text(c) + "\n";
    return o;
}

Output cmd_transfer_test(int n, int r, const std::string& file)
{
    const auto f = nary_form_from_json(load_json_file(file));
    require_same(n, f.variables(), "n");
    const bool v = transfer_vanishing_test(f, r);
    Output o;
    o.doc = {{"n", n}, {"r", r}, {"order", f.order()}, {"vanishes", v}};
    o.text = "vanishes: " + bool_text(v) + "\n";
    return o;
}

Output cmd_umbral(int n, int d, const std::string& expr_text, const std::string& file)
{
    const auto expr = parse_bracket(expr_text);
    const auto f = nary_form_from_json(load_json_file(file));
    require_same(n, f.variables(), "n");
    require_same(d, f.order(), "d");
    const auto value = umbral_evaluate(expr, f);
    Output o;
    o.doc = {{"expr", expr.to_string()}, {"n", n}, {"d", d}, {"value", to_string(value)}, {"zero", value.is_zero()}};
    o.text = to_string(value) + "\n";
    if (expr.u_degree() > 0) {
        const bool inc = vanishes_on_incidence(value, n);
        o.doc["vanishes_on_incidence"] = inc;
        o.text += "vanishes on incidence: " + bool_text(inc) + "\n";
    }
    return o;
}

Output cmd_bitangent(const std::string& file)
{
    const auto f = nary_form_from_json(load_json_file(file));
    if (f.variables() != 3 || f.order() != 4) {
        throw UsageError("bitangent-system needs a ternary quartic");
    }
    const auto sys = bitangent_system(f);
    Output o;
    Json pairs = Json::array();
    std::optional<unsigned> u_degree;
    bool uniform = true;
    for (std::size_t k = 0; k < sys.size(); ++k) {
        pairs.push_back(to_json(sys[k]));
        o.text += "pair " + std::to_string(k + 1) + "\n";
        for (int i = 0; i <= sys[k].order(); ++i) {
            const auto& c = sys[k].coefficient(i);
            o.text += "  c_" + std::to_string(i) + " = " + to_string(c) + "\n";
            if (c.is_zero()) {
                continue;
            }
            const auto deg = c.homogeneous_degree("u");
            uniform = uniform && deg && (!u_degree || *u_degree == *deg);
            u_degree = deg ? deg : u_degree;
        }
    }
    o.doc["pairs"] = pairs;
    if (uniform && u_degree) {
        o.doc["u_degree"] = *u_degree;
        o.text += "u-degree: " + std::to_string(*u_degree) + "\n";
    } else {
        o.doc["u_degree"] = nullptr;
        o.text += "u-degree: " + std::string(u_degree ? "mixed" : "none (all zero)") + "\n";
    }
    return o;
}

Output cmd_verify_identities(const std::string& suite)
{
    std::vector<std::string> names;
    if (suite == "all") {
        names = identity_suite_names();
    } else {
        names.push_back(suite);
    }
    Output o;
    Json suites = Json::array();
    std::string csv = "suite,check,passed,detail\n";
    bool all = true;
    for (const auto& name : names) {
        Json checks = Json::array();
        for (const auto& c : run_identity_suite(name)) {
            all = all && c.passed;
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            o.text += std::string(c.passed ? "PASS " : "FAIL ") + name + ": " + c.name +
                      (c.detail.empty() ? "" : " [" + c.detail + "]") + "\n";
            csv += csv_field(name) + "," + csv_field(c.name) + "," + bool_text(c.passed) + "," +
                   csv_field(c.detail) + "\n";
        }
        suites.push_back({{"suite", name}, {"checks", checks}});
    }
    o.doc = {{"suites", suites}, {"all_passed", all}};
    o.csv = csv;
    o.failed = !all;
    return o;
}

std::string error_kind(const std::exception& e)
{
    if (dynamic_cast<const ParseError*>(&e)) {
        return "parse_error";
    }
    if (dynamic_cast<const InfeasibleError*>(&e)) {
        return "infeasible";
    }
    if (dynamic_cast<const ContextError*>(&e)) {
        return "context_error";
    }
    if (dynamic_cast<const DomainError*>(&e)) {
        return "domain_error";
    }
    if (dynamic_cast<const UsageError*>(&e)) {
        return "usage_error";
    }
    return "error";
}

int report_error(const std::exception& e, Format format, int code)
{
    if (format == Format::Json) {
        std::cerr << Json{{"error", {{"type", error_kind(e)}, {"message", e.what()}}}}.dump() << "\n";
    } else {
        std::cerr << "error: " << e.what() << "\n";
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact covariants of binary forms, Hilbert and Goettingen covariants, and their ideals"};
    app.require_subcommand(1);

    Format format = Format::Text;
    const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
    app.add_option("--format", format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("text");

    std::function<Output()> run;
    int r = 0, d = 0, m = 0, q = 0, mu = 0, n = 0, r1 = 0, r2 = 0;
    std::string file, text, which = "all", suite = "all";
    const auto positive = CLI::PositiveNumber;
    const auto nonneg = CLI::NonNegativeNumber;

    auto* hil = app.add_subcommand("hilbert", "Hilbert covariant Hilb_{r,d}");
    hil->add_option("--r", r)->required()->check(positive);
    hil->add_option("--d", d)->required()->check(positive);
    hil->add_option("--eval", file, "Binary form JSON file to evaluate on")->check(CLI::ExistingFile);
    hil->callback([&] { run = [&] { return cmd_hilbert(r, d, file); }; });

    auto* got = app.add_subcommand("goettingen", "Goettingen covariant, basic or attached to --psi");
    got->add_option("--r", r)->required()->check(positive);
    got->add_option("--d", d)->required()->check(positive);
    got->add_option("--psi", text, "Expression in B, the generic (d-2)-ic, of degree r+1");
    got->callback([&] { run = [&] { return cmd_goettingen(r, d, text); }; });

    auto* thm = app.add_subcommand("check-theorem-hgeq", "Check Gott_{r,d} = kappa_{r,d} Hilb_{r,d}");
    thm->add_option("--r", r)->required()->check(positive);
    thm->add_option("--d", d)->required()->check(positive);
    thm->callback([&] { run = [&] { return cmd_check_theorem(r, d); }; });

    auto* kap = app.add_subcommand("kappa", "Proportionality scalar kappa_{r,d}");
    kap->add_option("--r", r)->required()->check(positive);
    kap->add_option("--d", d)->required()->check(CLI::Range(2, 1 << 20));
    kap->callback([&] { run = [&] { return cmd_kappa(r, d); }; });

    auto* pow = app.add_subcommand("power-test", "Decompose a binary form as scalar * G^mu");
    pow->add_option("--mu", mu)->required()->check(positive);
    pow->add_option("--form", file)->required()->check(CLI::ExistingFile);
    pow->callback([&] { run = [&] { return cmd_power_test(mu, file); }; });

    auto* zet = app.add_subcommand("zeta", "Dimension of degree-m order-q covariants of d-ics");
    zet->add_option("--d", d)->required()->check(nonneg);
    zet->add_option("--m", m)->required()->check(nonneg);
    zet->add_option("--q", q)->required()->check(nonneg);
    zet->callback([&] { run = [&] { return cmd_zeta(d, m, q); }; });

    auto* dims = app.add_subcommand("ideal-dims", "Dimensions of J, g and I_X in one degree");
    dims->add_option("--r", r)->required()->check(positive);
    dims->add_option("--d", d)->required()->check(positive);
    dims->add_option("--degree", m)->required()->check(nonneg);
    dims->add_option("--which", which)->check(CLI::IsMember({"j", "g", "ix", "all"}))->default_str("all");
    dims->callback([&] { run = [&] { return cmd_ideal_dims(r, d, m, which); }; });

    auto* scan = app.add_subcommand("si-scan", "Compare dim J_m with dim (I_X)_m up to a degree");
    scan->add_option("--r", r)->required()->check(positive);
    scan->add_option("--d", d)->required()->check(positive);
    scan->add_option("--max-degree", m)->required()->check(positive);
    scan->callback([&] { run = [&] { return cmd_si_scan(r, d, m); }; });

    auto* con = app.add_subcommand("containment", "Whether J_{r1,d} contains J_{r2,d}");
    con->add_option("--r1", r1)->required()->check(positive);
    con->add_option("--r2", r2)->required()->check(positive);
    con->add_option("--d", d)->required()->check(positive);
    con->callback([&] { run = [&] { return cmd_containment(r1, r2, d); }; });

    auto* tra = app.add_subcommand("transfer-test", "Hilbert covariant on the line restriction of an n-ary form");
    tra->add_option("--n", n)->required()->check(CLI::Range(2, 64));
    tra->add_option("--r", r)->required()->check(positive);
    tra->add_option("--form", file)->required()->check(CLI::ExistingFile);
    tra->callback([&] { run = [&] { return cmd_transfer_test(n, r, file); }; });

    auto* umb = app.add_subcommand("umbral", "Evaluate a bracket monomial on an n-ary form");
    umb->add_option("--n", n)->required()->check(CLI::Range(2, 64));
    umb->add_option("--d", d)->required()->check(positive);
    umb->add_option("--expr", text)->required();
    umb->add_option("--form", file)->required()->check(CLI::ExistingFile);
    umb->callback([&] { run = [&] { return cmd_umbral(n, d, text, file); }; });

    auto* bit = app.add_subcommand("bitangent-system", "Goettingen system on lines of a ternary quartic");
    bit->add_option("--form", file)->required()->check(CLI::ExistingFile);
    bit->callback([&] { run = [&] { return cmd_bitangent(file); }; });

    auto* ver = app.add_subcommand("verify-identities", "Run named identity suites");
    std::vector<std::string> suite_choices = identity_suite_names();
    suite_choices.push_back("all");
    ver->add_option("--suite", suite)->check(CLI::IsMember(suite_choices))->default_str("all");
    ver->callback([&] { run = [&] { return cmd_verify_identities(suite); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Output out = run();
        switch (format) {
        case Format::Text:
            std::cout << out.text;
            break;
        case Format::Json:
            std::cout << out.doc.dump(2) << "\n";
            break;
        case Format::Csv:
            std::cout << (out.csv ? *out.csv : generic_csv(out.doc));
            break;
        }
        return out.failed ? 1 : 0;
    } catch (const UsageError& e) {
        return report_error(e, format, 2);
    } catch (const std::exception& e) {
        return report_error(e, format, 1);
    }
}
