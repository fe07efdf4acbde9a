#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "apolar/repro.hpp"

using namespace apolar;

namespace {

// exit codes: 0 ok, 1 verification mismatch, 2 usage/precondition error
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct CommonOpts {
    std::string field = "fp:65537";
    std::string poly;
    int vars = 0;
    bool json = false;
};

int resolve_vars(const CommonOpts& o, char prefix = 'x') {
    if (o.vars > 0) return o.vars;
    int n = std::max(infer_variable_count(o.poly, prefix), infer_variable_count(o.poly, 'a'));
    if (n == 0) throw PreconditionError("cannot infer variable count; pass --vars");
    return n;
}

void print_human_analysis(const Json& j) {
    std::cout << "field:              " << j["field"].get<std::string>() << "\n";
    std::cout << "hilbert function:   " << j["hilbert_function"].dump() << "\n";
    std::cout << "length:             " << j["length"] << "\n";
    std::cout << "socle degree:       " << j["socle_degree"] << "\n";
    std::cout << "essential variables:" << j["essential_variables"] << "\n";
    if (j.contains("symmetric_decomposition")) {
        std::cout << "decomposition rows: " << j["symmetric_decomposition"].dump() << "\n";
        std::cout << "e-vector:           " << j["e_vector"].dump() << "\n";
        std::cout << "standard form:      " << (j["standard_form"].get<bool>() ? "yes" : "no") << "\n";
        if (j.contains("standard_form_witness"))
            std::cout << "  witness:          " << j["standard_form_witness"].dump() << "\n";
    }
    std::cout << "complete intersection: " << (j["is_complete_intersection"].get<bool>() ? "yes" : "no")
              << "\n";
    std::cout << "tangent dimension:  " << j["tangent_dimension"] << "\n";
    std::cout << "unobstructed:       " << (j["unobstructed"].get<bool>() ? "yes" : "no") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact inverse-systems calculator for local Artinian Gorenstein algebras"};
    app.require_subcommand(1);

    CommonOpts an;
    auto* analyze = app.add_subcommand("analyze", "apolar-algebra report for a polynomial");
    analyze->add_option("--field", an.field, "coefficient field: q or fp:P");
    analyze->add_option("--poly", an.poly, "polynomial in x1..xn")->required();
    analyze->add_option("--vars", an.vars, "number of variables (default: inferred)");
    analyze->add_flag("--json", an.json, "emit JSON");

    CommonOpts rs;
    std::string rs_partial;
    int rs_d = 2;
    auto* raysum = app.add_subcommand("raysum", "ray sum and its annihilator decomposition");
    raysum->add_option("--field", rs.field, "coefficient field: q or fp:P");
    raysum->add_option("--poly", rs.poly, "polynomial in x1..xn")->required();
    raysum->add_option("--partial", rs_partial, "contraction operator in a1..an")->required();
    raysum->add_option("--d", rs_d, "ray exponent d >= 2");
    raysum->add_option("--vars", rs.vars, "number of variables (default: inferred)");
    raysum->add_flag("--json", rs.json, "emit JSON");

    CommonOpts fm;
    std::string fm_partial, fm_kind = "lower";
    int fm_d = 2, fm_samples = 5;
    std::uint64_t fm_seed = 0;
    auto* family = app.add_subcommand("family", "ray family with flatness and fiber diagnostics");
    family->add_option("--field", fm.field, "coefficient field: q or fp:P");
    family->add_option("--poly", fm.poly, "polynomial in x1..xn")->required();
    family->add_option("--partial", fm_partial, "contraction operator in a1..an")->required();
    family->add_option("--d", fm_d, "ray exponent d >= 2");
    family->add_option("--kind", fm_kind, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
    family->add_option("--samples", fm_samples, "nonzero lambda samples for the flatness probe");
    family->add_option("--seed", fm_seed, "sampling seed");
    family->add_option("--vars", fm.vars, "number of variables (default: inferred)");
    family->add_flag("--json", fm.json, "emit JSON");

    CommonOpts tp;
    std::string tp_partial;
    auto* tpre = app.add_subcommand("tangent-preserve", "tangent-preserving unobstructedness criterion");
    tpre->add_option("--field", tp.field, "coefficient field: q or fp:P");
    tpre->add_option("--poly", tp.poly, "polynomial in x1..xn")->required();
    tpre->add_option("--partial", tp_partial, "contraction operator in a1..an")->required();
    tpre->add_option("--vars", tp.vars, "number of variables (default: inferred)");
    tpre->add_flag("--json", tp.json, "emit JSON");

    std::string rp_suite = "all";
    std::uint64_t rp_seed = 20240601;
    auto* repro = app.add_subcommand("repro", "reproduce the recorded numeric results");
    repro->add_option("suite", rp_suite, "suite name or 'all'");
    repro->add_option("--seed", rp_seed, "seed for randomized rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze) {
            int n = resolve_vars(an);
            Json j = with_field(an.field, [&](auto F) {
                auto f = parse_polynomial(F, an.poly, n);
                return analysis_json(F, an.poly, f);
            });
            if (an.json) std::cout << j.dump(2) << "\n";
            else print_human_analysis(j);
            return kOk;
        }
        if (*raysum) {
            int n = resolve_vars(rs);
            Json j = with_field(rs.field, [&](auto F) {
                auto f = parse_polynomial(F, rs.poly, n);
                auto del = parse_polynomial(F, rs_partial, n, 'a');
                return raysum_json(F, rs.poly + " ; " + rs_partial, f, del, rs_d);
            });
            std::cout << j.dump(2) << "\n";
            return j["annihilator_decomposition_verified"].get<bool>() ? kOk : kMismatch;
        }
        if (*family) {
            int n = resolve_vars(fm);
            auto kind = fm_kind == "lower" ? FamilyKind::Lower : FamilyKind::Upper;
            Json j = with_field(fm.field, [&](auto F) {
                auto f = parse_polynomial(F, fm.poly, n);
                auto del = parse_polynomial(F, fm_partial, n, 'a');
                return family_json(F, fm.poly + " ; " + fm_partial, f, del, fm_d, kind, fm_samples,
                                   fm_seed);
            });
            std::cout << j.dump(2) << "\n";
            return j["flatness"]["verdict"] == "FLAT_CONSISTENT" ? kOk : kMismatch;
        }
        if (*tpre) {
            int n = resolve_vars(tp);
            Json j = with_field(tp.field, [&](auto F) {
                auto f = parse_polynomial(F, tp.poly, n);
                auto del = parse_polynomial(F, tp_partial, n, 'a');
                return tangent_preserving_json(F, tp.poly + " ; " + tp_partial, f, del);
            });
            std::cout << j.dump(2) << "\n";
            return j["holds"].get<bool>() ? kOk : kMismatch;
        }
        if (*repro) {
            std::vector<ReproSuite> suites;
            try {
                suites = run_repro(rp_suite, rp_seed);
            } catch (const PreconditionError& e) {
                std::cerr << e.what() << "\navailable suites: all";
                for (const auto& n : repro_suite_names()) std::cerr << " " << n;
                std::cerr << "\n";
                return kUsage;
            }
            bool all_pass = true;
            for (const auto& s : suites) {
                std::printf("== %s ==\n", s.name.c_str());
                for (const auto& r : s.rows) {
                    std::printf("  [%s] %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str());
                    if (!r.pass) {
                        std::printf("        expected: %s\n", r.expected.c_str());
                        std::printf("        computed: %s\n", r.computed.c_str());
                    }
                    all_pass = all_pass && r.pass;
                }
            }
            std::printf("%s\n", all_pass ? "ALL PASS" : "MISMATCH");
            return all_pass ? kOk : kMismatch;
        }
    } catch (const ParseError& e) {
        std::cerr << "syntax error at position " << e.pos << ": " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kUsage;
}
