#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apolar/ideal.hpp"
#include "apolar/parse.hpp"
#include "apolar/random.hpp"

using namespace apolar;

TEST_CASE("apolar ideal of (x1^2+x2^2)x3 has the expected generators") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^2*x3+x2^2*x3", 3);
    auto I = apolar_ideal(F, f, 5);
    CHECK(ideal_member(F, I, parse_polynomial(F, "a1^2-a2^2", 3, 'a')));
    CHECK(ideal_member(F, I, parse_polynomial(F, "a1*a2", 3, 'a')));
    CHECK(ideal_member(F, I, parse_polynomial(F, "a3^2", 3, 'a')));
    CHECK_FALSE(ideal_member(F, I, parse_polynomial(F, "a1^2", 3, 'a')));
    auto gens = minimal_generators(F, I);
    CHECK(gens.size() == 3);
    CHECK(ideal_equal(F, I, ideal_from_generators(F, 3, 5, gens, 4)));
}

TEST_CASE("length equals the quotient dimension") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^6+x1^4*x2", 2);
    auto I = apolar_ideal(F, f, 8);
    CHECK(ideal_dim_quotient(I) == 10); // sum of (1,2,2,2,1,1,1)
}

TEST_CASE("sum, intersection, and the modular law") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^3+x2^3", 2);
    auto g = parse_polynomial(F, "x1^2*x2", 2);
    int D = 5;
    auto I = apolar_ideal(F, f, D);
    auto J = apolar_ideal(F, g, D);
    auto S = ideal_sum(F, I, J);
    auto T = ideal_intersect(F, I, J);
    CHECK(ideal_contains(F, S, I));
    CHECK(ideal_contains(F, S, J));
    CHECK(ideal_contains(F, I, T));
    CHECK(ideal_contains(F, J, T));
    // dim(I+J) + dim(I cap J) = dim I + dim J inside S/m^D
    CHECK(S.ech.rank() + T.ech.rank() == I.ech.rank() + J.ech.rank());
}

TEST_CASE("colon by an operator matches the contracted annihilator") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^4+x1^2*x2^2+x2^3", 2);
    auto del = parse_polynomial(F, "a1^2", 2, 'a');
    auto I = apolar_ideal(F, f, 6);
    auto lhs = ideal_colon(F, I, del);
    auto rhs = apolar_ideal(F, contract(F, del, f), 4);
    CHECK(ideal_equal(F, lhs, rhs));
}

TEST_CASE("product lands inside the intersection") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^2", 2);
    auto g = parse_polynomial(F, "x2^2", 2);
    int D = 6;
    auto I = apolar_ideal(F, f, D);
    auto J = apolar_ideal(F, g, D);
    auto P = ideal_product(F, I, J);
    auto T = ideal_intersect(F, I, J);
    CHECK(ideal_contains(F, T, P));
    CHECK(ideal_member(F, P, parse_polynomial(F, "a1^3*a2^3", 2, 'a')));
}

TEST_CASE("generator completeness is verified, not assumed") {
    GFp F(65537);
    // (a1^2, a2^3) does not contain all of m^2, so c = 2 must be rejected
    std::vector<MPoly<GFp>> gens = {parse_polynomial(F, "a1^2", 2, 'a'),
                                    parse_polynomial(F, "a2^3", 2, 'a')};
    CHECK_THROWS_AS(ideal_from_generators(F, 2, 6, gens, 2), TruncationError);
    auto I = ideal_from_generators(F, 2, 6, gens, 4);
    CHECK(ideal_dim_quotient(I) == 6);
}

TEST_CASE("coordinate-subspace intersection keeps the right monomials") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^3+x2^2", 2);
    auto I = apolar_ideal(F, f, 5);
    // restrict to the ideal generated inside (a2): every element must lie in (a2)
    auto J = ideal_intersect_coordinate_subspace(
        F, I, [&](int mi) { return I.tab->mono(mi)[1] > 0; }, I.c);
    CHECK(ideal_contains(F, I, J));
    for (const auto& row : J.ech.rows()) {
        auto p = row_to_poly(F, *J.tab, row);
        for (const auto& [m, c] : p.terms) CHECK(m[1] > 0);
    }
}

TEST_CASE("truncation is functorial") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^4+x2^4", 2);
    auto I = apolar_ideal(F, f, 7);
    auto I6 = ideal_truncate(F, I, 6);
    auto direct = apolar_ideal(F, f, 6);
    CHECK(ideal_equal(F, I6, direct));
    CHECK_THROWS_AS(ideal_truncate(F, I6, 7), TruncationError);
}

TEST_CASE("random annihilators contain the expected socle power") {
    GFp F(65537);
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
        auto f = random_poly(F, 2, 4, 4, rng);
        if (f.is_zero()) continue;
        int s = f.degree();
        auto I = apolar_ideal(F, f, s + 2);
        CHECK(I.c == s + 1);
        CHECK(ideal_member(F, I, var_poly(F, 2, 0, s + 1)));
        CHECK(ideal_member(F, I, MPoly<GFp>(2))); // zero is always a member
    }
}
