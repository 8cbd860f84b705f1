// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "covforge/clebsch.hpp"
#include "covforge/error.hpp"
#include "covforge/hilbert.hpp"
#include "covforge/ideals.hpp"
#include "covforge/poly_io.hpp"
#include "covforge/power.hpp"
#include "covforge/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace covforge;

namespace {

struct Verdict {
    bool ok = true;
    std::vector<std::string> failures;
    std::string note;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

MultiPoly a_poly(const std::string& text, int d)
{
    return parse_poly(text, coefficient_context(d));
}

std::string rd(int r, int d)
{
    return "(" + std::to_string(r) + "," + std::to_string(d) + ")";
}

std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240611);
    return gen;
}

long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

NaryForm random_nary(int n, int d, long span)
{
    for (;;) {
        std::map<MultiIndex, Rational> cs;
        for (const auto& index : multi_indices(n, d)) {
            cs[index] = Rational(uniform(-span, span));
        }
        auto f = NaryForm::from_rationals(n, d, cs);
        if (!f.is_zero()) {
            return f;
        }
    }
}

Verdict hilbert_closed_forms()
{
    Verdict v;
    for (int d = 2; d <= 8; ++d) {
        v.expect(hilbert_source(1, d) == a_poly("a0*a2 - a1^2", d) * Rational(d - 1), "r=1 d=" + std::to_string(d));
    }
    for (int d = 3; d <= 8; ++d) {
        const long s = 2L * d * d - 6 * d + 4;
        const auto expect = a_poly("a0^2*a3", d) * Rational(s) - a_poly("a0*a1*a2", d) * Rational(3 * s) +
                            a_poly("a1^3", d) * Rational(2 * s);
        v.expect(hilbert_source(2, d) == expect, "r=2 d=" + std::to_string(d));
    }
    return v;
}

Verdict theorem_hgeq()
{
    Verdict v;
    for (auto [r, d] : std::vector<std::pair<int, int>>{
             {1, 3}, {1, 4}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 6}}) {
        v.expect(goettingen_basic(r, d).source() == hilbert_source(r, d) * kappa_scalar(r, d), "source " + rd(r, d));
    }
    for (auto [r, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 4}, {2, 6}}) {
        v.expect(goettingen_basic(r, d) == hilbert_covariant(r, d) * kappa_scalar(r, d), "covariant " + rd(r, d));
    }
    return v;
}

Verdict worked_expansion()
{
    Verdict v;
    const auto phi = evaluate_form_expression("T(F,T(F,F,2),1)", BinaryForm::generic(6)).form.to_polynomial();
    const auto rest = phi.context()->without("x");
    const char* printed[] = {
        "a0^2*a3 + 2*a1^3 - 3*a0*a1*a2",
        "12*a1^2*a2 - 15*a0*a2^2 + 3*a0^2*a4",
        "15*a1*a2^2 + 3*a0^2*a5 + 18*a0*a1*a4 + 24*a1^2*a3 - 60*a0*a2*a3",
        "25*a2^3 + 60*a1^2*a4 - 80*a0*a3^2 + a0^2*a6 - 30*a4*a0*a2 + 24*a1*a0*a5",
    };
    for (unsigned k = 0; k < 4; ++k) {
        const unsigned pattern[] = {12 - k, k};
        v.expect(phi.coefficient("x", pattern) == parse_poly(printed[k], rest), "x1^" + std::to_string(12 - k));
    }
    return v;
}

Verdict zeta_values()
{
    Verdict v;
    v.expect(zeta(6, 3, 6) == 2, "zeta(6,3,6)");
    v.expect(partition_count(6, 6, 3) == 7, "pi(6,6,3)");
    v.expect(zeta(15, 6, 78) == 4, "zeta(15,6,78)");
    return v;
}

Verdict suite_verdict(const std::vector<std::string>& suites)
{
    Verdict v;
    for (const auto& s : suites) {
        for (const auto& c : run_identity_suite(s)) {
            v.expect(c.passed, s + ": " + c.name);
        }
    }
    return v;
}

Verdict three_way()
{
    Verdict v;
    std::string note;
    for (auto [r, d] : std::vector<std::pair<int, int>>{{2, 4}, {2, 6}, {3, 6}, {2, 5}}) {
        const auto rep = three_way_agreement(r, d, 100);
        v.expect(rep.disagreements == 0, std::to_string(rep.disagreements) + " disagreements at " + rd(r, d));
        note += (note.empty() ? "" : ", ") + rd(r, d) + " " + std::to_string(rep.powers) + "/100 powers";
    }
    v.note = note;
    return v;
}

Verdict saturation_table()
{
    Verdict v;
    v.expect(saturation_scan(2, 4, 5).candidate == 3, "SI(2,4)");
    v.expect(saturation_scan(2, 6, 8).candidate == 7, "SI(2,6)");
    const auto heavy = saturation_scan(3, 6, 10);
    v.expect(heavy.candidate == 9, "SI(3,6)");
    v.expect(ix_dimension(3, 6, 4) == 45, "dim (I_X)_4 for (3,6)");
    return v;
}

Verdict containment_table()
{
    Verdict v;
    struct Row {
        int r1, r2, d;
        bool contains;
    };
    for (const auto& row : std::vector<Row>{
             {2, 3, 5, false}, {3, 4, 5, false}, {2, 4, 5, true}, {4, 6, 5, false}, {2, 6, 4, true}, {6, 10, 4, true}}) {
        v.expect(ideal_containment(row.r1, row.r2, row.d) == row.contains,
                 "J" + rd(row.r1, row.d) + " vs J" + rd(row.r2, row.d));
    }
    for (int d : {5, 6}) {
        for (int r = 2; r <= 4; ++r) {
            v.expect(ideal_containment(1, r, d), "J" + rd(1, d) + " contains J" + rd(r, d));
        }
    }
    return v;
}

Verdict clebsch_transfer()
{
    Verdict v;
    const auto a = parse_bracket("(ab u)^2 (ac u) a_x b_x^2 c_x^3");
    const auto b = parse_bracket("(ab u) (ac u)^2 a_x b_x^3 c_x^2");
    for (int t = 0; t < 20; ++t) {
        v.expect(transfer_vanishing_test(random_nary(3, 2, 3).pow(2), 2), "double conic " + std::to_string(t));
    }
    const auto fermat = NaryForm::from_rationals(3, 4, {{{4, 0, 0}, 1}, {{0, 4, 0}, 1}, {{0, 0, 4}, 1}});
    v.expect(!transfer_vanishing_test(fermat, 2), "Fermat quartic");

    // a double conic with indeterminate coefficients s1..s6
    const auto sctx = Context::make({VarFamily::flat("s", 1, 6)});
    std::map<MultiIndex, MultiPoly> qc;
    int next = 1;
    for (const auto& index : multi_indices(3, 2)) {
        qc.emplace(index, MultiPoly::variable(sctx, sctx->var("s", next++)));
    }
    const NaryForm generic_dc = NaryForm(3, 2, qc, sctx).pow(2);
    v.expect(umbral_evaluate(a, generic_dc).is_zero(), "umbral tGott_{2,4} on the generic double conic");

    for (int t = 0; t < 10; ++t) {
        const auto q = random_nary(3, 4, 3);
        v.expect(umbral_evaluate(a, q) == umbral_evaluate(b, q), "renderings " + std::to_string(t));
    }
    for (const auto& e : bitangent_system(fermat)) {
        v.expect(!e.is_zero(), "bitangent system nonzero");
        for (const auto& c : e.coefficients()) {
            v.expect(c.is_zero() || c.homogeneous_degree("u") == 12u, "u-degree 12");
        }
    }
    return v;
}

Verdict property_suite()
{
    Verdict v;
    std::vector<std::pair<std::string, Covariant>> built;
    for (int d = 2; d <= 6; ++d) {
        for (int r = 1; r <= 3; ++r) {
            built.emplace_back("Hilb" + rd(r, d), hilbert_covariant(r, d));
            built.emplace_back("Gott" + rd(r, d), goettingen_basic(r, d));
        }
        for (const char* e : {"T(F,F,2)", "T(F,T(F,F,2),1)", "MUL(F,T(F,F,2))"}) {
            const auto val = evaluate_form_expression(e, BinaryForm::generic(d));
            built.emplace_back(std::string(e) + " d=" + std::to_string(d),
                               Covariant::from_form(val.form, d, val.degree));
        }
    }
    for (int d : {4, 6}) {
        const auto psi = evaluate_form_expression("T(B,B,2)", BinaryForm::generic(d - 2));
        built.emplace_back("Gott[(B,B)_2] d=" + std::to_string(d),
                           goettingen_general(Covariant::from_form(psi.form, d - 2, psi.degree), 1, d));
    }
    for (const auto& [name, c] : built) {
        v.expect(verify_covariant(c).is_covariant, name);
    }

    bool rejected = false;
    try {
        Covariant(2, 2, 0, {a_poly("a0*a2 - a1^2 + a0*a1", 2)});
    } catch (const DomainError&) {
        rejected = true;
    }
    v.expect(rejected, "non-isobaric covariant coefficient rejected");
    rejected = false;
    try {
        GradedPiece::from_polynomials(4, 2, {a_poly("a0*a2 + a1^2 + a0*a1", 4)});
    } catch (const DomainError&) {
        rejected = true;
    }
    v.expect(rejected, "non-isobaric ideal generator rejected");
    v.expect(!isobaric_weight(a_poly("a0 + a1", 3)).has_value(), "isobaric_weight on mixed weights");

    for (auto [r, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 6}, {3, 6}}) {
        v.expect(saturation_lemma_check(r, d), "saturation lemma " + rd(r, d));
    }
    v.note = std::to_string(built.size()) + " covariants verified";
    return v;
}

struct Criterion {
    int id;
    std::string title;
    std::function<Verdict()> run;
    /// Runtime bound in seconds; 0 for none.
    double limit;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "Hilbert source closed forms", hilbert_closed_forms, 1},
        {2, "Goettingen = kappa * Hilbert", theorem_hgeq, 120},
        {3, "worked expansion of (F,(F,F)_2)_1, d=6", worked_expansion, 0},
        {4, "zeta and partition values", zeta_values, 0},
        {5, "quadratic Goettingen and low-r proportionalities", [] { return suite_verdict({"lowr"}); }, 300},
        {6, "three-way power criteria agreement", three_way, 0},
        {7, "saturation index table", saturation_table, 1800},
        {8, "containment table", containment_table, 0},
        {9, "identity suites", [] { return suite_verdict({"gordan", "lemmaE", "twisted-cubic", "polar"}); }, 0},
        {10, "Clebsch transfer", clebsch_transfer, 0},
        {11, "covariant property suite", property_suite, 0},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.ok = false;
            v.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit > 0 && secs > c.limit) {
            v.ok = false;
            std::ostringstream msg;
            msg << "over the " << c.limit << " s budget";
            v.failures.push_back(msg.str());
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << timing << ")";
        if (!v.note.empty()) {
            std::cout << " [" << v.note << "]";
        }
        for (const auto& f : v.failures) {
            std::cout << "\n    failed: " << f;
        }
        std::cout << std::endl;
        failed += v.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
