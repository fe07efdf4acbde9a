#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apolar/linalg.hpp"
#include "apolar/random.hpp"

using namespace apolar;

namespace {

std::vector<GFp::Elem> vec(const GFp& F, std::initializer_list<long> v) {
    std::vector<GFp::Elem> r;
    for (long x : v) r.push_back(F.from_int(x));
    return r;
}

} // namespace

TEST_CASE("echelon insertion and membership") {
    GFp F(101);
    Echelon<GFp> E(F, 4);
    auto v1 = vec(F, {1, 2, 0, 0});
    auto v2 = vec(F, {0, 1, 1, 0});
    auto v3 = vec(F, {1, 3, 1, 0}); // = v1 + v2
    CHECK(E.insert(v1) >= 0);
    CHECK(E.insert(v2) >= 0);
    CHECK(E.insert(v3) == -1);
    CHECK(E.rank() == 2);
    CHECK(E.contains(vec(F, {2, 5, 1, 0})));
    CHECK_FALSE(E.contains(vec(F, {0, 0, 0, 1})));
}

TEST_CASE("canonical form is basis-independent") {
    GFp F(101);
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        Echelon<GFp> A(F, 6), B(F, 6);
        std::vector<std::vector<GFp::Elem>> rows;
        for (int i = 0; i < 4; ++i) {
            std::vector<GFp::Elem> v;
            for (int j = 0; j < 6; ++j) v.push_back(random_elem(F, rng));
            rows.push_back(v);
        }
        for (auto v : rows) A.insert(v);
        // same span from scrambled combinations
        for (int i = 3; i >= 0; --i) {
            auto v = rows[i];
            for (int j = 0; j < 6; ++j) F.addmul(v[j], F.from_int(5 + i), rows[(i + 1) % 4][j]);
            B.insert(v);
        }
        for (auto v : rows) B.insert(v);
        CHECK(A.equals(B));
    }
}

TEST_CASE("dense inverse, solve, kernel") {
    GFp F(101);
    DenseMat<GFp> A = {{F.from_int(2), F.from_int(1)}, {F.from_int(1), F.from_int(1)}};
    auto Ainv = dense_inverse(F, A);
    auto P = dense_mul(F, A, Ainv);
    CHECK(P[0][0] == F.one());
    CHECK(P[0][1] == F.zero());
    CHECK(P[1][0] == F.zero());
    CHECK(P[1][1] == F.one());

    auto b = vec(F, {5, 3});
    auto x = dense_solve(F, A, b);
    auto Ax = dense_apply(F, A, x);
    CHECK(Ax[0] == b[0]);
    CHECK(Ax[1] == b[1]);

    DenseMat<GFp> S = {{F.one(), F.one(), F.zero()}, {F.zero(), F.zero(), F.one()}};
    auto K = dense_kernel(F, S);
    REQUIRE(K.size() == 1);
    auto img = dense_apply(F, S, K[0]);
    CHECK(img[0] == F.zero());
    CHECK(img[1] == F.zero());

    DenseMat<GFp> sing = {{F.one(), F.one()}, {F.one(), F.one()}};
    CHECK_THROWS_AS(dense_inverse(F, sing), NotAutomorphismError);
}

TEST_CASE("kernel dimension matches rank-nullity on random matrices") {
    GFp F(65537);
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        int m = 2 + static_cast<int>(rng.below(4));
        int n = 2 + static_cast<int>(rng.below(5));
        DenseMat<GFp> A(m, std::vector<GFp::Elem>(n, F.zero()));
        for (auto& row : A)
            for (auto& e : row) e = F.from_int(static_cast<long>(rng.below(3)));
        Echelon<GFp> E(F, n);
        for (auto v : A) E.insert(v);
        auto K = dense_kernel(F, A);
        CHECK(static_cast<int>(K.size()) == n - E.rank());
        for (const auto& k : K)
            for (const auto& e : dense_apply(F, A, k)) CHECK(e == F.zero());
    }
}

TEST_CASE("exact rational pivots avoid drift") {
    QQ Q;
    Echelon<QQ> E(Q, 3);
    std::vector<QQ::Elem> v1 = {Q.from_fraction(1, 3), Q.from_fraction(1, 7), Q.zero()};
    std::vector<QQ::Elem> v2 = {Q.from_fraction(2, 3), Q.from_fraction(2, 7), Q.one()};
    CHECK(E.insert(v1) >= 0);
    CHECK(E.insert(v2) >= 0);
    // v2 - 2 v1 has a clean third pivot, so the span contains e3 exactly
    CHECK(E.contains({Q.zero(), Q.zero(), Q.one()}));
}
