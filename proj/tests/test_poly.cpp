#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apolar/linalg.hpp"
#include "apolar/poly.hpp"
#include "apolar/random.hpp"

using namespace apolar;

TEST_CASE("arithmetic over GF(p) and Q") {
    GFp F(65537);
    auto f = var_poly(F, 2, 0, 3);                    // x1^3
    auto g = var_poly(F, 2, 1, 2);                    // x2^2
    auto h = poly_add(F, f, g);
    CHECK(h.terms.size() == 2);
    CHECK(poly_eq(F, poly_sub(F, h, g), f));
    CHECK(poly_eq(F, poly_add(F, f, poly_neg(F, f)), MPoly<GFp>(2)));
    auto p = poly_mul(F, f, g);                       // x1^3 x2^2
    CHECK(p.degree() == 5);
    CHECK(poly_coeff(F, p, Mono{3, 2}) == F.one());

    QQ Q;
    auto half = Q.from_fraction(1, 2);
    auto q = poly_scale(Q, var_poly(Q, 1, 0), half);
    CHECK(Q.eq(poly_coeff(Q, poly_add(Q, q, q), mono_var(1, 0)), Q.one()));
}

TEST_CASE("contraction acts monomial-by-monomial") {
    GFp F(65537);
    // a^b -| x^a = x^{a-b} when b <= a, else 0; no binomial factors
    auto f = mono_poly<GFp>(2, Mono{3, 1}, F.one()); // x1^3 x2
    auto s1 = mono_poly<GFp>(2, Mono{2, 0}, F.one());
    CHECK(poly_eq(F, contract(F, s1, f), mono_poly<GFp>(2, Mono{1, 1}, F.one())));
    auto s2 = mono_poly<GFp>(2, Mono{0, 2}, F.one()); // exceeds the x2 exponent
    CHECK(contract(F, s2, f).is_zero());
    auto s3 = mono_poly<GFp>(2, Mono{3, 1}, F.one());
    CHECK(poly_eq(F, contract(F, s3, f), mono_poly<GFp>(2, mono_one(2), F.one())));
}

TEST_CASE("contraction module action on a fixed example") {
    GFp F(65537);
    auto f = poly_add(F, var_poly(F, 2, 0, 4), poly_mul(F, var_poly(F, 2, 0, 2), var_poly(F, 2, 1, 2)));
    auto sig = poly_add(F, var_poly(F, 2, 0), var_poly(F, 2, 1));
    auto tau = var_poly(F, 2, 0, 2);
    CHECK(poly_eq(F, contract(F, poly_mul(F, sig, tau), f), contract(F, sig, contract(F, tau, f))));
}

TEST_CASE("truncation and graded components") {
    GFp F(65537);
    auto f = poly_add(F, var_poly(F, 1, 0, 5), poly_add(F, var_poly(F, 1, 0, 2), var_poly(F, 1, 0)));
    CHECK(poly_truncate(F, f, 3).degree() == 2);
    CHECK(poly_component(F, f, 2).terms.size() == 1);
    CHECK(poly_component(F, f, 3).is_zero());
    CHECK(poly_component_range(F, f, 2, 5).terms.size() == 2);
    CHECK(f.order() == 1);
}

TEST_CASE("extend, restrict, linear change") {
    GFp F(65537);
    auto f = poly_mul(F, var_poly(F, 2, 0), var_poly(F, 2, 1)); // x1 x2
    auto g = poly_extend(F, f, 4);
    CHECK(g.n == 4);
    CHECK(poly_eq(F, poly_restrict(F, g, 2), f));
    // x1 -> x1 + x2, x2 -> x2 turns x1 x2 into x1 x2 + x2^2
    DenseMat<GFp> A = {{F.one(), F.one()}, {F.zero(), F.one()}};
    auto h = poly_linear_change(F, f, A);
    CHECK(poly_coeff(F, h, Mono{1, 1}) == F.one());
    CHECK(poly_coeff(F, h, Mono{0, 2}) == F.one());
}

TEST_CASE("printing is degree-ascending with explicit coefficients") {
    QQ Q;
    auto f = poly_add(Q, var_poly(Q, 2, 0, 3),
                      poly_scale(Q, var_poly(Q, 2, 1), Q.from_int(-2)));
    CHECK(poly_to_string(Q, f) == "-2*x2 + 1*x1^3");
}

TEST_CASE("randomized contraction adjoint to multiplication on coefficients") {
    GFp F(65537);
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        auto f = random_poly(F, 3, 4, 5, rng);
        auto sig = random_poly(F, 3, 2, 3, rng);
        auto tau = random_poly(F, 3, 2, 3, rng);
        CHECK(poly_eq(F, contract(F, poly_mul(F, sig, tau), f),
                      contract(F, tau, contract(F, sig, f))));
    }
}
