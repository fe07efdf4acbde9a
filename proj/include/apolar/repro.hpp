#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "report.hpp"

namespace apolar {

struct ReproRow {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct ReproSuite {
    std::string name;
    std::vector<ReproRow> rows;

    bool pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

namespace detail {

inline std::string fmt_vec(const std::vector<long>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

inline std::string fmt_rows(const std::vector<std::vector<long>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? " " : "") << fmt_vec(rows[i]);
    return os.str();
}

inline void expect(ReproSuite& s, const std::string& name, const std::string& want,
                   const std::string& got) {
    s.rows.push_back({name, want, got, want == got});
}

inline void expect_guarded(ReproSuite& s, const std::string& name, const std::string& want,
                           const std::function<std::string()>& run) {
    try {
        expect(s, name, want, run());
    } catch (const Error& e) {
        expect(s, name, want, std::string("error: ") + e.what());
    }
}

} // namespace detail

inline ReproSuite repro_hilbert() {
    GFp F(65537);
    ReproSuite s{"hilbert", {}};
    auto row = [&](const std::string& poly, int n, const std::string& want) {
        detail::expect_guarded(s, "H(" + poly + ")", want, [&] {
            auto f = parse_polynomial(F, poly, n);
            return detail::fmt_vec(hilbert_function(F, f).H);
        });
    };
    row("x1^6+x1^4*x2", 2, "(1,2,2,2,1,1,1)");
    row("x1^2*x2*x3+x4^2*x1", 4, "(1,4,5,3,1)");
    row("x1^2*x3+x2^2*x3+x4^2*x1", 4, "(1,4,4,1)");
    row("x1^2*x3+x2^2*x3+x4^2*x1+x5^2*x4", 5, "(1,5,5,1)");
    row("x1^5+x2^4+x3^2*x1^2+x4^2*x3", 4, "(1,4,4,3,1,1)");
    row("x1*x2*x3+x4^2+x5^2*x4", 5, "(1,5,5,1)");
    return s;
}

inline ReproSuite repro_decomposition() {
    GFp F(65537);
    ReproSuite s{"decomposition", {}};
    detail::expect_guarded(s, "decomposition of x1^6+x1^4*x2",
                           "(1,1,1,1,1,1,1) (0,0,0,0,0,0) (0,1,1,1,0) (0,0,0,0) (0,0,0)", [&] {
                               auto f = parse_polynomial(F, "x1^6+x1^4*x2", 2);
                               return detail::fmt_rows(symmetric_decomposition(F, f).delta);
                           });
    detail::expect_guarded(s, "decomposition of x1^5+x2^4+x3^2*x1^2+x4^2*x3",
                           "(1,1,1,1,1,1) (0,2,2,2,0) (0,1,1,0) (0,0,0)", [&] {
                               auto f = parse_polynomial(F, "x1^5+x2^4+x3^2*x1^2+x4^2*x3", 4);
                               return detail::fmt_rows(symmetric_decomposition(F, f).delta);
                           });
    detail::expect_guarded(s, "search over (1,4,4,3,1,1) with vanishing top row",
                           "(1,1,1,1,1,1) (0,2,2,2,0) (0,1,1,0) (0,0,0)", [&] {
                               auto all = decomposition_search({1, 4, 4, 3, 1, 1});
                               std::string got;
                               int hits = 0;
                               for (const auto& cand : all) {
                                   bool topzero = true;
                                   for (long v : cand.back())
                                       if (v != 0) topzero = false;
                                   if (!topzero) continue;
                                   ++hits;
                                   got = detail::fmt_rows(cand);
                               }
                               return hits == 1 ? got : "not unique (" + std::to_string(hits) + ")";
                           });
    return s;
}

inline ReproSuite repro_standardform() {
    QQ F; // exact signs in the printed transport oracle
    ReproSuite s{"standardform", {}};
    detail::expect_guarded(s, "dual substitution a2 -> a2+a1^2 on x1^6+x1^4*x2",
                           "2*x2^3 + -1*x1^2*x2^2 + 1*x1^6", [&] {
                               auto f = parse_polynomial(F, "x1^6+x1^4*x2", 2);
                               std::vector<MPoly<QQ>> im = {var_poly(F, 2, 0),
                                                             parse_polynomial(F, "a2+a1^2", 2, 'a')};
                               auto psi = make_substitution(F, 2, 7, std::move(im));
                               return poly_to_string(F, dual_substitution(F, psi, f, 6));
                           });
    detail::expect_guarded(s, "annihilator transport under the substitution", "equal", [&] {
        auto f = parse_polynomial(F, "x1^6+x1^4*x2", 2);
        std::vector<MPoly<QQ>> im = {var_poly(F, 2, 0), parse_polynomial(F, "a2+a1^2", 2, 'a')};
        auto psi = make_substitution(F, 2, 8, std::move(im));
        auto g = dual_substitution(F, psi, f, 6);
        auto If = apolar_ideal(F, f, 8);
        std::vector<MPoly<QQ>> moved;
        for (const auto& gen : minimal_generators(F, If))
            moved.push_back(apply_substitution(F, psi, gen));
        auto transported = ideal_from_generators(F, 2, 8, moved, 7);
        auto Ig = apolar_ideal(F, g, 8);
        return ideal_equal(F, transported, Ig) ? std::string("equal") : std::string("different");
    });
    auto verdict = [&](const std::string& poly, int n) {
        auto f = parse_polynomial(F, poly, n);
        auto [ok, w] = check_standard_form(F, f);
        if (ok) return std::string("standard");
        return "witness r=" + std::to_string(w.first) + " i=" + std::to_string(w.second);
    };
    detail::expect_guarded(s, "x1^6+x2^5+x3^3 standard", "standard",
                           [&] { return verdict("x1^6+x2^5+x3^3", 3); });
    detail::expect_guarded(s, "x3^6+x2^5+x1^3 not standard", "witness r=3 i=4",
                           [&] { return verdict("x3^6+x2^5+x1^3", 3); });
    detail::expect_guarded(s, "x1^6+x1^4*x2 not standard", "witness r=2 i=5",
                           [&] { return verdict("x1^6+x1^4*x2", 2); });
    return s;
}

inline ReproSuite repro_macaulay() {
    ReproSuite s{"macaulay", {}};
    auto row = [&](long m, int i, long want) {
        detail::expect_guarded(s, std::to_string(m) + "<" + std::to_string(i) + ">",
                               std::to_string(want),
                               [&] { return std::to_string(macaulay_bound(m, i)); });
    };
    row(3, 2, 4);
    row(4, 2, 5);
    row(6, 2, 10);
    row(4, 3, 5);
    for (int n = 1; n <= 10; ++n) row(1, n, 1);
    return s;
}

inline ReproSuite repro_tangent(std::uint64_t seed) {
    GFp F(65537);
    ReproSuite s{"tangent", {}};
    auto row = [&](const std::string& poly, int n, long want) {
        detail::expect_guarded(s, "tangent(" + poly + ")", std::to_string(want), [&] {
            auto f = parse_polynomial(F, poly, n);
            return std::to_string(tangent_space_dimension(F, f));
        });
    };
    row("x1*x2*x3+x4^2+x5^2*x4", 5, 67);
    row("x1^2*x2*x3+x4^2*x1", 4, 56);
    row("x1^2*x3+x2^2*x3+x4^2*x1", 4, 40);
    row("x1^2*x3+x2^2*x3+x4^2*x1+x5^2*x4", 5, 60);
    GFp Fp(1000003);
    for (int k = 0; k < 3; ++k) {
        detail::expect_guarded(
            s, "tangent of a random (1,6,6,1) cubic over fp:1000003, seed offset " + std::to_string(k),
            "H=(1,6,6,1) tangent=76", [&] {
                Rng rng(seed + static_cast<std::uint64_t>(k));
                auto f = random_dense_form(Fp, 6, 3, rng);
                auto H = hilbert_function(Fp, f).H;
                if (H != std::vector<long>{1, 6, 6, 1}) return "H=" + detail::fmt_vec(H);
                return "H=(1,6,6,1) tangent=" + std::to_string(tangent_space_dimension(Fp, f));
            });
    }
    return s;
}

struct ReproTriple {
    std::string f, del;
    int n, d;
};

inline std::vector<ReproTriple> repro_triples() {
    return {
        {"x1^2*x2^2*x3", "a2^2", 3, 3}, {"x1^3", "a1^2", 1, 2},     {"x1^2*x2^2*x3", "a2^2", 3, 2},
        {"x1^4+x2^4", "a2^2", 2, 3},    {"x1^3*x2", "a1*a2", 2, 2}, {"x1^6+x1^4*x2", "a2", 2, 3},
    };
}

inline ReproSuite repro_raysum() {
    GFp F(65537);
    ReproSuite s{"raysum", {}};
    detail::expect_guarded(s, "ray sum of (x1^2*x2^2*x3, a2^2, 3)",
                           "1*x1^2*x2^2*x3 + 1*x1^2*x3*x4^3", [&] {
                               auto f = parse_polynomial(F, "x1^2*x2^2*x3", 3);
                               auto del = parse_polynomial(F, "a2^2", 3, 'a');
                               return poly_to_string(F, ray_sum(F, f, del, 3));
                           });
    for (const auto& t : repro_triples()) {
        detail::expect_guarded(
            s, "annihilator decomposition for (" + t.f + ", " + t.del + ", " + std::to_string(t.d) + ")",
            "verified", [&] {
                auto f = parse_polynomial(F, t.f, t.n);
                auto del = parse_polynomial(F, t.del, t.n, 'a');
                auto chk = ray_sum_annihilator_check(F, f, del, t.d);
                return chk.equal ? std::string("verified") : "mismatch: " + chk.mismatch;
            });
    }
    return s;
}

inline ReproSuite repro_flatness(std::uint64_t seed) {
    GFp F(65537);
    ReproSuite s{"flatness", {}};
    for (const auto& t : repro_triples()) {
        for (auto kind : {FamilyKind::Lower, FamilyKind::Upper}) {
            std::string kn = kind == FamilyKind::Lower ? "lower" : "upper";
            detail::expect_guarded(
                s, kn + " family of (" + t.f + ", " + t.del + ", " + std::to_string(t.d) + ")",
                "FLAT_CONSISTENT", [&] {
                    auto f = parse_polynomial(F, t.f, t.n);
                    auto del = parse_polynomial(F, t.del, t.n, 'a');
                    auto fam = build_ray_family(F, f, del, t.d, kind);
                    auto rep = flatness_probe(F, fam, 5, seed);
                    return rep.flat ? std::string("FLAT_CONSISTENT") : std::string("NOT_FLAT");
                });
        }
    }
    detail::expect_guarded(s, "hand-built family (a^2 - t a, a^3)", "NOT_FLAT lengths 2 vs 1", [&] {
        RayFamily<GFp> fam;
        fam.n = 1;
        fam.ray_index = 0;
        fam.nu = 2;
        fam.gens = {{parse_polynomial(F, "a1^2", 1, 'a'), parse_polynomial(F, "-a1", 1, 'a')},
                    {parse_polynomial(F, "a1^3", 1, 'a'), MPoly<GFp>(1)}};
        auto rep = flatness_probe(F, fam, 5, seed);
        if (rep.flat) return std::string("FLAT_CONSISTENT");
        return "NOT_FLAT lengths " + std::to_string(rep.length0) + " vs " +
               std::to_string(rep.samples[0].second);
    });
    return s;
}

inline ReproSuite repro_fiber(std::uint64_t seed) {
    GFp F(65537);
    ReproSuite s{"fiber", {}};
    std::vector<ReproTriple> triples = {
        {"x1^3", "a1^2", 1, 2}, {"x1^2*x2^2*x3", "a2^2", 3, 3}, {"x1^2*x2", "a1*a2", 2, 2}};
    Rng rng(seed);
    for (const auto& t : triples) {
        detail::expect_guarded(
            s, "fiber structure of (" + t.f + ", " + t.del + ", " + std::to_string(t.d) + ")",
            "verified", [&] {
                auto f = parse_polynomial(F, t.f, t.n);
                auto del = parse_polynomial(F, t.del, t.n, 'a');
                // lambda = omega^{d-1} guarantees the required roots exist
                auto omega = random_nonzero(F, rng);
                auto lam = F.pow(omega, t.d - 1);
                auto rep = fiber_structure_check(F, f, del, t.d, lam, seed);
                if (!rep.ok) return "failed: " + rep.failure;
                std::ostringstream os;
                os << "verified";
                return os.str();
            });
    }
    detail::expect_guarded(s, "fiber lengths of (x1^3, a1^2, 2) at lambda=1",
                           "total 6 = 4 + 1*2, support lengths {4,2}", [&] {
                               auto f = parse_polynomial(F, "x1^3", 1);
                               auto del = parse_polynomial(F, "a1^2", 1, 'a');
                               auto rep = fiber_structure_check(F, f, del, 2, F.one(), seed);
                               if (!rep.ok) return "failed: " + rep.failure;
                               std::ostringstream os;
                               os << "total " << rep.total_length << " = " << rep.len_f << " + "
                                  << 1 << "*" << rep.len_delf << ", support lengths {";
                               for (std::size_t i = 0; i < rep.local.size(); ++i)
                                   os << (i ? "," : "") << rep.local[i].second;
                               os << "}";
                               return os.str();
                           });
    return s;
}

inline ReproSuite repro_tangentpreserve() {
    GFp F(65537);
    ReproSuite s{"tangentpreserve", {}};
    std::vector<std::pair<std::string, std::string>> cis = {
        {"x1^2*x2^2*x3", "a2^2"}, {"x1^3*x2", "a2"},      {"x1^2*x2*x3", "a3"},
        {"x1^4*x2^2", "a2^2"},    {"x1^3*x2^3", "a2^3"},
    };
    for (const auto& [fp, dp] : cis) {
        detail::expect_guarded(s, "complete intersection (" + fp + ", " + dp + ")", "holds", [&] {
            int n = infer_variable_count(fp, 'x');
            auto f = parse_polynomial(F, fp, n);
            auto del = parse_polynomial(F, dp, n, 'a');
            if (!is_complete_intersection(F, f)) return std::string("not a complete intersection");
            auto rep = tangent_preserving_check(F, f, del);
            return rep.holds ? std::string("holds") : std::string("fails");
        });
    }
    detail::expect_guarded(s, "(x1^2*x3+x2^2*x3+x4^2*x1, a4*a1) with necessity ledger",
                           "holds; I needed, J^2 needed, (I^2:partial) needed", [&] {
                               auto f = parse_polynomial(F, "x1^2*x3+x2^2*x3+x4^2*x1", 4);
                               auto del = parse_polynomial(F, "a4*a1", 4, 'a');
                               auto rep = tangent_preserving_check(F, f, del);
                               std::ostringstream os;
                               os << (rep.holds ? "holds" : "fails") << "; "
                                  << (rep.need_I ? "I needed" : "I redundant") << ", "
                                  << (rep.need_J2 ? "J^2 needed" : "J^2 redundant") << ", "
                                  << (rep.need_colon ? "(I^2:partial) needed"
                                                     : "(I^2:partial) redundant");
                               return os.str();
                           });
    detail::expect_guarded(s, "(x1*x2*x3+x4^2, a4) precondition guard", "rejected", [&] {
        auto f = parse_polynomial(F, "x1*x2*x3+x4^2", 4);
        auto del = parse_polynomial(F, "a4", 4, 'a');
        try {
            tangent_preserving_check(F, f, del);
            return std::string("accepted");
        } catch (const PreconditionError&) {
            return std::string("rejected");
        }
    });
    detail::expect_guarded(s, "double ray sum x1^5+x2^4+x3^2*x1^2+x4^2*x3 unobstructed",
                           "tangent 56 = 4*14, unobstructed", [&] {
                               auto f = parse_polynomial(F, "x1^5+x2^4+x3^2*x1^2+x4^2*x3", 4);
                               auto u = unobstructedness_report(F, f);
                               std::ostringstream os;
                               os << "tangent " << u.tangent_dim << " = " << u.embedding_dim << "*"
                                  << u.length << (u.is_unobstructed ? ", unobstructed" : ", obstructed");
                               return os.str();
                           });
    return s;
}

inline ReproSuite repro_secant(std::uint64_t seed) {
    GFp F(65537);
    ReproSuite s{"secant", {}};
    Rng rng(seed);
    auto power_sum = [&](int n, int deg, int k) {
        // sum of k contraction-normalized powers of random linear forms
        MPoly<GFp> f(n);
        for (int i = 0; i < k; ++i) {
            MPoly<GFp> lin(n);
            for (int j = 0; j < n; ++j) poly_add_term(F, lin, mono_var(n, j), random_elem(F, rng));
            if (lin.is_zero() || lin.degree() != 1) { --i; continue; }
            f = poly_add(F, f, linear_form_power(F, lin, deg));
        }
        return f;
    };
    for (int deg : {4, 6}) {
        for (int k = 1; k <= 4; ++k) {
            detail::expect_guarded(s,
                                   "sum of " + std::to_string(k) + " random degree-" +
                                       std::to_string(deg) + " powers passes sigma4",
                                   "member", [&] {
                                       for (int tries = 0; tries < 10; ++tries) {
                                           auto f = power_sum(3, deg, k);
                                           if (f.is_zero() || f.degree() != deg) continue;
                                           if (sigma4_membership(F, f)) return std::string("member");
                                       }
                                       return std::string("not member");
                                   });
        }
        detail::expect_guarded(s,
                               "sum of 5 generic degree-" + std::to_string(deg) + " powers fails sigma4",
                               "not member", [&] {
                                   for (int tries = 0; tries < 10; ++tries) {
                                       auto f = power_sum(3, deg, 5);
                                       if (f.is_zero() || f.degree() != deg) continue;
                                       if (!sigma4_membership(F, f)) return std::string("not member");
                                   }
                                   return std::string("member");
                               });
    }
    std::vector<std::string> orbits = {"x1^4+x2^4+x3^4", "x1^3*x2+x3^4", "x1^3*x3+x1^2*x2^2"};
    for (const auto& op : orbits) {
        detail::expect_guarded(s, "third-secant orbit form " + op, "rank 3, H begins (1,3,3,3)", [&] {
            auto f = parse_polynomial(F, op, 3);
            int r = catalecticant_rank(F, f, f.degree() / 2).first;
            auto H = hilbert_function(F, f).H;
            std::ostringstream os;
            os << "rank " << r << ", H begins (";
            for (int i = 0; i < 4 && i < static_cast<int>(H.size()); ++i) os << (i ? "," : "") << H[i];
            os << ")";
            return os.str();
        });
    }
    return s;
}

inline std::vector<std::string> repro_suite_names() {
    return {"hilbert", "decomposition", "standardform",   "macaulay", "tangent",
            "raysum",  "flatness",      "fiber",          "secant",   "tangentpreserve"};
}

inline std::vector<ReproSuite> run_repro(const std::string& which, std::uint64_t seed) {
    std::vector<ReproSuite> out;
    auto want = [&](const std::string& n) { return which == "all" || which == n; };
    if (want("hilbert")) out.push_back(repro_hilbert());
    if (want("decomposition")) out.push_back(repro_decomposition());
    if (want("standardform")) out.push_back(repro_standardform());
    if (want("macaulay")) out.push_back(repro_macaulay());
    if (want("tangent")) out.push_back(repro_tangent(seed));
    if (want("raysum")) out.push_back(repro_raysum());
    if (want("flatness")) out.push_back(repro_flatness(seed));
    if (want("fiber")) out.push_back(repro_fiber(seed));
    if (want("secant")) out.push_back(repro_secant(seed));
    if (want("tangentpreserve")) out.push_back(repro_tangentpreserve());
    if (out.empty()) throw PreconditionError("unknown repro suite '" + which + "'");
    return out;
}

} // namespace apolar
