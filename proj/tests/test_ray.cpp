#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apolar/parse.hpp"
#include "apolar/ray.hpp"

using namespace apolar;

TEST_CASE("ray order of pure projections") {
    GFp F(65537);
    // alpha_1^4 - alpha_2^4 annihilates f and projects onto alpha_1^4
    auto f = parse_polynomial(F, "x1^4+x2^4", 2);
    auto I = apolar_ideal(F, f, 6);
    CHECK(ray_order(F, I, 0) == 4);
    auto g = parse_polynomial(F, "x1^2*x2^2", 2);
    auto J = apolar_ideal(F, g, 6);
    CHECK(ray_order(F, J, 0) == 3);
}

TEST_CASE("ray sum appends a fresh variable") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^2*x2^2*x3", 3);
    auto del = parse_polynomial(F, "a2^2", 3, 'a');
    auto g = ray_sum(F, f, del, 3);
    CHECK(g.n == 4);
    CHECK(poly_to_string(F, g) == "1*x1^2*x2^2*x3 + 1*x1^2*x3*x4^3");
    CHECK_THROWS_AS(ray_sum(F, f, del, 1), PreconditionError);
    CHECK_THROWS_AS(ray_sum(F, f, parse_polynomial(F, "1+a1", 3, 'a'), 2), PreconditionError);
}

TEST_CASE("ray sum annihilator decomposition holds and perturbations are caught") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^2*x2^2*x3", 3);
    auto del = parse_polynomial(F, "a2^2", 3, 'a');
    auto chk = ray_sum_annihilator_check(F, f, del, 3);
    CHECK(chk.equal);
    CHECK(chk.mismatch.empty());

    // tampered right-hand side: wrong special generator must be rejected
    int sg = chk.g.degree();
    auto bad = poly_add(F, chk.special, parse_polynomial(F, "a1", 4, 'a'));
    std::vector<MPoly<GFp>> gens = chk.j_gens;
    gens.push_back(bad);
    auto rhs = ideal_from_generators(F, 4, sg + 2, gens, sg + 2);
    auto lhs = apolar_ideal(F, chk.g, sg + 2);
    CHECK_FALSE(ideal_equal(F, lhs, rhs));
}

TEST_CASE("lower and upper families are flat for a monomial triple") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^3*x2", 2);
    auto del = parse_polynomial(F, "a1*a2", 2, 'a');
    for (auto kind : {FamilyKind::Lower, FamilyKind::Upper}) {
        auto fam = build_ray_family(F, f, del, 2, kind);
        auto rep = flatness_probe(F, fam, 4, 99);
        CHECK(rep.flat);
        CHECK(rep.length0 > 0);
        for (const auto& [lam, len] : rep.samples) CHECK(len == rep.length0);
    }
}

TEST_CASE("non-flat families are reported with a witness length") {
    GFp F(65537);
    RayFamily<GFp> fam;
    fam.n = 1;
    fam.ray_index = 0;
    fam.nu = 2;
    fam.gens = {{parse_polynomial(F, "a1^2", 1, 'a'), parse_polynomial(F, "-a1", 1, 'a')},
                {parse_polynomial(F, "a1^3", 1, 'a'), MPoly<GFp>(1)}};
    auto rep = flatness_probe(F, fam, 4, 99);
    CHECK_FALSE(rep.flat);
    CHECK(rep.length0 == 2);
    CHECK(rep.samples[0].second == 1);
}

TEST_CASE("fiber structure splits into the expected local pieces") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^3", 1);
    auto del = parse_polynomial(F, "a1^2", 1, 'a');
    auto rep = fiber_structure_check(F, f, del, 2, F.one(), 99);
    REQUIRE(rep.ok);
    CHECK(rep.total_length == 6);
    CHECK(rep.len_f == 4);
    CHECK(rep.len_delf == 2);
    REQUIRE(rep.local.size() == 2);
    CHECK(rep.local[0].second == 4); // origin carries Apolar(f)
    CHECK(rep.local[1].second == 2); // the translated copy carries Apolar(del -| f)
}

TEST_CASE("fiber structure needs the roots in the base field") {
    // T^2 = 2 has no solution mod 101, so the d=3 fiber cannot split
    GFp F(101);
    auto f = parse_polynomial(F, "x1^3", 1);
    auto del = parse_polynomial(F, "a1^2", 1, 'a');
    CHECK_THROWS_AS(fiber_structure_check(F, f, del, 3, F.from_int(2), 7), RootAvailabilityError);
}

TEST_CASE("tangent preserving criterion on a complete intersection") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^2*x2^2*x3", 3);
    auto del = parse_polynomial(F, "a2^2", 3, 'a');
    auto rep = tangent_preserving_check(F, f, del);
    CHECK(rep.holds);
}

TEST_CASE("necessity ledger shows all three terms matter") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^2*x3+x2^2*x3+x4^2*x1", 4);
    auto del = parse_polynomial(F, "a4*a1", 4, 'a');
    auto rep = tangent_preserving_check(F, f, del);
    CHECK(rep.holds);
    CHECK(rep.need_I);
    CHECK(rep.need_J2);
    CHECK(rep.need_colon);
}

TEST_CASE("ray decomposition recombines to the original ideal") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^4+x1^2*x2^2", 2);
    auto I = apolar_ideal(F, f, 7);
    auto [J, w, nu] = ray_decomposition(F, I, 0);
    CHECK(nu == ray_order(F, I, 0));
    // w has pure alpha_1 part exactly alpha_1^nu
    MPoly<GFp> pure(2);
    for (const auto& [m, c] : w.terms)
        if (m[1] == 0) poly_add_term(F, pure, m, c);
    CHECK(poly_eq(F, pure, var_poly(F, 2, 0, nu)));
    CHECK(ideal_member(F, I, w));
    CHECK(ideal_contains(F, I, J));
}

TEST_CASE("stretched degeneration produces a certified flat family") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^6+x2^2", 2);
    auto [fam, rep] = stretched_degeneration_check(F, f, 4, 99);
    CHECK(fam.kind == FamilyKind::Upper);
    CHECK(rep.flat);
    CHECK(rep.length0 == hilbert_function(F, f).length);
}
