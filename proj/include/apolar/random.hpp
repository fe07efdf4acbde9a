#pragma once

#include <random>

#include "poly.hpp"

namespace apolar {

// deterministic seeded source for property tests and sampling
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next() { return eng(); }
    long below(long n) { return static_cast<long>(eng() % static_cast<std::uint64_t>(n)); }
};

inline QQ::Elem random_elem(const QQ& F, Rng& rng) {
    long num = rng.below(21) - 10;
    long den = rng.below(5) + 1;
    return F.from_fraction(num, den);
}

inline GFp::Elem random_elem(const GFp& F, Rng& rng) {
    return F.from_int(static_cast<long>(rng.next() % F.p));
}

template <class R>
typename R::Elem random_nonzero(const R& F, Rng& rng) {
    for (;;) {
        auto c = random_elem(F, rng);
        if (!F.is_zero(c)) return c;
    }
}

template <class R>
MPoly<R> random_poly(const R& F, int n, int maxdeg, int nterms, Rng& rng) {
    MPoly<R> f(n);
    for (int t = 0; t < nterms; ++t) {
        Mono m(n, 0);
        int d = static_cast<int>(rng.below(maxdeg + 1));
        for (int i = 0; i < d; ++i) ++m[rng.below(n)];
        poly_add_term(F, f, m, random_elem(F, rng));
    }
    return f;
}

template <class R>
MPoly<R> random_homogeneous(const R& F, int n, int deg, int nterms, Rng& rng) {
    MPoly<R> f(n);
    while (f.is_zero()) {
        for (int t = 0; t < nterms; ++t) {
            Mono m(n, 0);
            for (int i = 0; i < deg; ++i) ++m[rng.below(n)];
            poly_add_term(F, f, m, random_nonzero(F, rng));
        }
    }
    return f;
}

// contraction-normalized s-th power of a linear form l = sum lambda_i x_i:
// sum_{|a|=s} lambda^a x^a, the rank-one dual generator of [l] on the Veronese
// (the ordinary power l^s carries extra multinomial factors under contraction)
template <class R>
MPoly<R> linear_form_power(const R& F, const MPoly<R>& lin, int s) {
    if (lin.is_zero() || lin.degree() != 1 || lin.order() != 1)
        throw PreconditionError("linear_form_power needs a linear form");
    int n = lin.n;
    std::vector<typename R::Elem> lam(n, F.zero());
    for (int i = 0; i < n; ++i) lam[i] = poly_coeff(F, lin, mono_var(n, i));
    auto tab = MonoTable::get(n, s + 1);
    MPoly<R> f(n);
    for (int mi = tab->degree_begin(s); mi < tab->degree_end(s); ++mi) {
        const Mono& m = tab->mono(mi);
        auto c = F.one();
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < m[i]; ++e) c = F.mul(c, lam[i]);
        if (!F.is_zero(c)) poly_add_term(F, f, m, c);
    }
    return f;
}

// dense homogeneous form: every monomial of the given degree, nonzero coefficient
template <class R>
MPoly<R> random_dense_form(const R& F, int n, int deg, Rng& rng) {
    auto tab = MonoTable::get(n, deg + 1);
    MPoly<R> f(n);
    for (int i = tab->degree_begin(deg); i < tab->degree_end(deg); ++i)
        poly_add_term(F, f, tab->mono(i), random_nonzero(F, rng));
    return f;
}

} // namespace apolar
