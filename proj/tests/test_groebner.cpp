#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apolar/groebner.hpp"
#include "apolar/ideal.hpp"
#include "apolar/parse.hpp"
#include "apolar/random.hpp"

using namespace apolar;

TEST_CASE("normal form reduces to zero exactly on members") {
    GFp F(65537);
    std::vector<MPoly<GFp>> gens = {parse_polynomial(F, "a1^2-a2", 2, 'a'),
                                    parse_polynomial(F, "a2^2", 2, 'a')};
    auto G = buchberger(F, gens);
    CHECK(normal_form(F, parse_polynomial(F, "a1^4", 2, 'a'), G).is_zero());
    CHECK(normal_form(F, parse_polynomial(F, "a1^2*a2-a2^2", 2, 'a'), G).is_zero());
    CHECK_FALSE(normal_form(F, parse_polynomial(F, "a1", 2, 'a'), G).is_zero());
}

TEST_CASE("reduced basis is canonical under generator shuffles") {
    GFp F(65537);
    std::vector<MPoly<GFp>> gens = {parse_polynomial(F, "a1^2+a2^2-1", 2, 'a'),
                                    parse_polynomial(F, "a1*a2-1", 2, 'a')};
    auto G1 = buchberger(F, gens);
    std::swap(gens[0], gens[1]);
    gens.push_back(poly_add(F, gens[0], gens[1]));
    auto G2 = buchberger(F, gens);
    REQUIRE(G1.size() == G2.size());
    for (std::size_t i = 0; i < G1.size(); ++i) CHECK(poly_eq(F, G1[i], G2[i]));
}

TEST_CASE("quotient basis detects positive-dimensional ideals") {
    GFp F(65537);
    std::vector<MPoly<GFp>> gens = {parse_polynomial(F, "a1*a2", 2, 'a')};
    auto G = buchberger(F, gens);
    CHECK_FALSE(quotient_basis(G, 2).has_value());
}

TEST_CASE("quotient dimension matches the apolar length") {
    GFp F(65537);
    auto f = parse_polynomial(F, "x1^6+x1^4*x2", 2);
    auto I = apolar_ideal(F, f, 8);
    auto G = buchberger(F, minimal_generators(F, I));
    auto qb = quotient_basis(G, 2);
    REQUIRE(qb.has_value());
    CHECK(qb->size() == 10);
}

TEST_CASE("univariate arithmetic and gcd") {
    GFp F(101);
    auto u = [&](std::initializer_list<long> v) {
        std::vector<GFp::Elem> c;
        for (long x : v) c.push_back(F.from_int(x));
        return uni_from(F, std::move(c));
    };
    auto a = u({-1, 0, 1});     // T^2 - 1
    auto b = u({1, 1});         // T + 1
    auto [q, r] = uni_divmod(F, a, b);
    CHECK(r.is_zero());
    CHECK(q.deg() == 1);
    auto g = uni_gcd(F, a, u({-1, 1})); // gcd with T - 1
    CHECK(g.deg() == 1);
    CHECK(F.eq(uni_eval(F, a, F.from_int(10)), F.from_int(99)));
    auto pw = uni_powmod(F, u({0, 1}), mpz_class(101), a); // T^101 mod T^2-1
    CHECK(pw.deg() == 1);
}

TEST_CASE("minimal polynomial of a companion matrix") {
    GFp F(101);
    // companion matrix of T^3 - 2T + 5
    DenseMat<GFp> M = {{F.zero(), F.zero(), F.from_int(-5)},
                       {F.one(), F.zero(), F.from_int(2)},
                       {F.zero(), F.one(), F.zero()}};
    auto m = matrix_minpoly(F, M);
    REQUIRE(m.deg() == 3);
    CHECK(F.eq(m.c[0], F.from_int(5)));
    CHECK(F.eq(m.c[1], F.from_int(-2)));
    CHECK(F.eq(m.c[2], F.zero()));
    CHECK(F.eq(m.c[3], F.one()));
}

TEST_CASE("root finding over GF(p) handles multiplicities") {
    GFp F(101);
    Rng rng(31);
    // (T-2)^3 (T-5)
    std::vector<GFp::Elem> lin2 = {F.from_int(-2), F.one()};
    std::vector<GFp::Elem> lin5 = {F.from_int(-5), F.one()};
    auto m = uni_from(F, lin2);
    m = uni_mul(F, m, uni_from(F, lin2));
    m = uni_mul(F, m, uni_from(F, lin2));
    m = uni_mul(F, m, uni_from(F, lin5));
    std::vector<std::pair<GFp::Elem, int>> roots;
    auto res = uni_roots(F, m, roots, rng);
    CHECK(res.complete);
    REQUIRE(roots.size() == 2);
    int total = 0;
    for (auto& [r, mult] : roots) {
        total += mult;
        if (F.eq(r, F.from_int(2))) CHECK(mult == 3);
        if (F.eq(r, F.from_int(5))) CHECK(mult == 1);
    }
    CHECK(total == 4);

    // T^2 + 1 has no roots mod 103 (103 = 3 mod 4)
    GFp F2(103);
    Rng rng2(5);
    auto irr = uni_from(F2, {F2.one(), F2.zero(), F2.one()});
    std::vector<std::pair<GFp::Elem, int>> none;
    auto res2 = uni_roots(F2, irr, none, rng2);
    CHECK_FALSE(res2.complete);
    CHECK(none.empty());
}

TEST_CASE("root finding over Q") {
    QQ F;
    Rng rng(41);
    // T^4 - T^3 = T^3 (T - 1)
    auto m = uni_from(F, {F.zero(), F.zero(), F.zero(), F.from_int(-1), F.one()});
    std::vector<std::pair<QQ::Elem, int>> roots;
    auto res = uni_roots(F, m, roots, rng);
    CHECK(res.complete);
    long zero_mult = 0, one_mult = 0;
    for (auto& [r, mult] : roots) {
        if (F.is_zero(r)) zero_mult = mult;
        if (F.eq(r, F.one())) one_mult = mult;
    }
    CHECK(zero_mult == 3);
    CHECK(one_mult == 1);

    // rational root with denominator: (2T - 1)(T + 3)
    auto m2 = uni_from(F, {F.from_int(-3), F.from_int(5), F.from_int(2)});
    std::vector<std::pair<QQ::Elem, int>> r2;
    CHECK(uni_roots(F, m2, r2, rng).complete);
    bool half = false;
    for (auto& [r, mult] : r2) half = half || F.eq(r, F.from_fraction(1, 2));
    CHECK(half);
}

TEST_CASE("support splitting with multiplicities") {
    GFp F(65537);
    Rng rng(47);
    // V(a1 (a1 - 1)^2, a2) counted with multiplicity: length 3 on the a1 axis
    std::vector<MPoly<GFp>> gens = {
        poly_mul(F, parse_polynomial(F, "a1", 2, 'a'),
                 poly_mul(F, parse_polynomial(F, "a1-1", 2, 'a'), parse_polynomial(F, "a1-1", 2, 'a'))),
        parse_polynomial(F, "a2", 2, 'a')};
    auto G = buchberger(F, gens);
    auto sup = support_and_local_lengths(F, G, 2, rng);
    CHECK(sup.complete);
    CHECK(sup.total_length == 3);
    REQUIRE(sup.points.size() == 2);
    // points are sorted, origin first
    CHECK(F.is_zero(sup.points[0].point[0]));
    CHECK(sup.points[0].local_length == 1);
    CHECK(F.eq(sup.points[1].point[0], F.one()));
    CHECK(sup.points[1].local_length == 2);
    for (const auto& p : sup.points) CHECK(F.is_zero(p.point[1]));
}
