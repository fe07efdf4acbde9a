#pragma once

#include <deque>
#include <memory>
#include <vector>

#include "budget.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace apolar {

// Ideal of S represented exactly modulo m^D: a variable-multiplication-closed
// subspace of S_{<D} with a certified completeness bound c (m^c is contained in
// the ideal). Every operation computes the output's (D, c) and throws rather
// than returning an unsound object.
template <class R>
struct TruncatedIdeal {
    int n = 0;
    int D = 0;
    int c = 0;
    std::shared_ptr<const MonoTable> tab;
    Echelon<R> ech;
};

template <class R>
TruncatedIdeal<R> make_empty_ideal(const R& F, int n, int D, int c) {
    if (c > D) throw TruncationError("completeness bound exceeds truncation degree");
    auto tab = MonoTable::get(n, D);
    check_matrix_budget(tab->size());
    return TruncatedIdeal<R>{n, D, c, tab, Echelon<R>(F, tab->size())};
}

template <class R>
std::vector<typename R::Elem> densify(const R& F, const MonoTable& tab, const MPoly<R>& p) {
    std::vector<typename R::Elem> v(tab.size(), F.zero());
    for (const auto& [m, c] : p.terms) {
        int i = tab.index(m);
        if (i < 0) throw TruncationError("term outside truncation window");
        v[i] = c;
    }
    return v;
}

template <class R>
MPoly<R> row_to_poly(const R&, const MonoTable& tab, const SparseRow<R>& row) {
    MPoly<R> p(tab.nvars());
    for (const auto& [i, c] : row.ent) p.terms.emplace(tab.mono(i), c);
    return p;
}

template <class R>
int ideal_dim_quotient(const TruncatedIdeal<R>& I) {
    // finite because m^c is inside I; standard monomials all have degree < c <= D
    return I.tab->size() - I.ech.rank();
}

template <class R>
bool ideal_member(const R& F, const TruncatedIdeal<R>& I, const MPoly<R>& p) {
    return I.ech.contains(densify(F, *I.tab, poly_truncate(F, p, I.D)));
}

namespace detail {

// adjoin generators and close the span under multiplication by variables
template <class R>
void saturate(const R& F, TruncatedIdeal<R>& I, const std::vector<MPoly<R>>& gens) {
    std::deque<int> work;
    for (const auto& g : gens) {
        auto v = densify(F, *I.tab, poly_truncate(F, g, I.D));
        int r = I.ech.insert(v);
        if (r >= 0) work.push_back(r);
    }
    while (!work.empty()) {
        int r = work.front();
        work.pop_front();
        SparseRow<R> row = I.ech.rows()[r]; // copy: rows_ may reallocate below
        for (int v = 0; v < I.n; ++v) {
            std::vector<typename R::Elem> buf(I.tab->size(), F.zero());
            bool any = false;
            for (const auto& [i, a] : row.ent) {
                int j = I.tab->mult_index(v, i);
                if (j >= 0) { buf[j] = a; any = true; }
            }
            if (!any) continue;
            int nr = I.ech.insert(buf);
            if (nr >= 0) work.push_back(nr);
        }
    }
}

template <class R>
void verify_completeness(const R& F, const TruncatedIdeal<R>& I) {
    for (int i = I.tab->degree_begin(I.c); i < I.tab->size(); ++i) {
        std::vector<typename R::Elem> v(I.tab->size(), F.zero());
        v[i] = F.one();
        if (!I.ech.contains(v))
            throw TruncationError("claimed completeness bound fails: monomial of degree " +
                                  std::to_string(I.tab->degree(i)) + " not in span");
    }
}

} // namespace detail

// ideal generated by gens, represented below D; c is the claimed completeness
// bound, verified against the computed span (pass c = D to skip: vacuous claim)
template <class R>
TruncatedIdeal<R> ideal_from_generators(const R& F, int n, int D, const std::vector<MPoly<R>>& gens,
                                        int c) {
    auto I = make_empty_ideal(F, n, D, c);
    detail::saturate(F, I, gens);
    detail::verify_completeness(F, I);
    return I;
}

// Ann_S(f) below D, via the kernel of sigma -> sigma -| f with preimage tracking
template <class R>
TruncatedIdeal<R> apolar_ideal(const R& F, const MPoly<R>& f, int D) {
    if (f.is_zero()) throw PreconditionError("the zero polynomial has no apolar ideal");
    int s = f.degree();
    if (D < s + 2) throw TruncationError("apolar_ideal needs D >= deg(f)+2");
    int n = f.n;
    auto I = make_empty_ideal(F, n, D, s + 1);
    auto tabS = I.tab;
    auto tabP = MonoTable::get(n, s + 1);
    int NP = tabP->size(), NS = tabS->size();
    check_matrix_budget(NP + NS);
    Echelon<R> ker(F, NP + NS);
    for (int si = 0; si < NS; ++si) {
        std::vector<typename R::Elem> v(NP + NS, F.zero());
        const Mono& sm = tabS->mono(si);
        for (const auto& [mf, cf] : f.terms) {
            if (!divides(sm, mf)) continue;
            v[tabP->index(mono_div(mf, sm))] = cf;
        }
        v[NP + si] = F.one();
        int r = ker.insert(v);
        if (r >= 0 && ker.rows()[r].pivot() >= NP) {
            // kernel element: its preimage part is an annihilator
            std::vector<typename R::Elem> row(NS, F.zero());
            for (const auto& [col, a] : ker.rows()[r].ent) row[col - NP] = a;
            I.ech.insert(row);
        }
    }
    return I;
}

template <class R>
TruncatedIdeal<R> ideal_truncate(const R& F, const TruncatedIdeal<R>& I, int D2) {
    if (D2 > I.D) throw TruncationError("cannot extend a truncated ideal");
    if (D2 == I.D) return I;
    if (I.c > D2) throw TruncationError("truncation would lose the completeness bound");
    auto J = make_empty_ideal(F, I.n, D2, I.c);
    int N2 = J.tab->size(); // table order makes smaller windows index-prefixes
    for (const auto& row : I.ech.rows()) {
        if (row.pivot() >= N2 || row.pivot() < 0) continue;
        std::vector<typename R::Elem> v(N2, F.zero());
        for (const auto& [i, a] : row.ent)
            if (i < N2) v[i] = a;
        J.ech.insert(v);
    }
    return J;
}

template <class R>
TruncatedIdeal<R> ideal_sum(const R& F, const TruncatedIdeal<R>& I, const TruncatedIdeal<R>& J) {
    if (I.n != J.n || I.D != J.D) throw MismatchError("ideal_sum: ring or truncation mismatch");
    TruncatedIdeal<R> S = I;
    S.c = std::min(I.c, J.c);
    for (const auto& row : J.ech.rows()) S.ech.insert_sparse(row);
    return S;
}

// Zassenhaus: rows (u|u) for u in I, (v|0) for v in J; rows with zero left half
// carry a basis of the intersection in the right half
template <class R>
TruncatedIdeal<R> ideal_intersect(const R& F, const TruncatedIdeal<R>& I,
                                  const TruncatedIdeal<R>& J) {
    if (I.n != J.n || I.D != J.D) throw MismatchError("ideal_intersect: ring or truncation mismatch");
    int N = I.tab->size();
    check_matrix_budget(2L * N);
    Echelon<R> z(F, 2 * N);
    auto K = make_empty_ideal(F, I.n, I.D, std::max(I.c, J.c));
    auto feed = [&](const SparseRow<R>& row, bool both) {
        std::vector<typename R::Elem> v(2 * N, F.zero());
        for (const auto& [i, a] : row.ent) {
            v[i] = a;
            if (both) v[N + i] = a;
        }
        int r = z.insert(v);
        if (r >= 0 && z.rows()[r].pivot() >= N) {
            std::vector<typename R::Elem> w(N, F.zero());
            for (const auto& [i, a] : z.rows()[r].ent) w[i - N] = a;
            K.ech.insert(w);
        }
    };
    for (const auto& row : I.ech.rows()) feed(row, true);
    for (const auto& row : J.ech.rows()) feed(row, false);
    return K;
}

template <class R>
bool ideal_contains(const R& F, const TruncatedIdeal<R>& I, const TruncatedIdeal<R>& J) {
    if (I.n != J.n) throw MismatchError("ideal_contains: ring mismatch");
    int D = std::min(I.D, J.D);
    if (D < std::max(I.c, J.c))
        throw TruncationError("ideal_contains: common truncation below completeness bounds");
    auto It = ideal_truncate(F, I, D);
    auto Jt = ideal_truncate(F, J, D);
    for (const auto& row : Jt.ech.rows()) {
        std::vector<typename R::Elem> v(It.tab->size(), F.zero());
        for (const auto& [i, a] : row.ent) v[i] = a;
        if (!It.ech.contains(v)) return false;
    }
    return true;
}

template <class R>
bool ideal_equal(const R& F, const TruncatedIdeal<R>& I, const TruncatedIdeal<R>& J) {
    return ideal_contains(F, I, J) && ideal_contains(F, J, I);
}

// operators whose classes form a basis of I/(m I); by Nakayama they generate I
template <class R>
std::vector<MPoly<R>> minimal_generators(const R& F, TruncatedIdeal<R>& I) {
    if (I.D < I.c + 1) throw TruncationError("minimal_generators needs D >= c+1");
    int N = I.tab->size();
    Echelon<R> mI(F, N);
    for (const auto& row : I.ech.rows()) {
        for (int v = 0; v < I.n; ++v) {
            std::vector<typename R::Elem> buf(N, F.zero());
            bool any = false;
            for (const auto& [i, a] : row.ent) {
                int j = I.tab->mult_index(v, i);
                if (j >= 0) { buf[j] = a; any = true; }
            }
            if (any) mI.insert(buf);
        }
    }
    I.ech.canonicalize(); // deterministic generator choice
    std::vector<MPoly<R>> gens;
    for (const auto& row : I.ech.rows()) {
        std::vector<typename R::Elem> v(N, F.zero());
        for (const auto& [i, a] : row.ent) v[i] = a;
        if (mI.insert(v) >= 0) gens.push_back(row_to_poly(F, *I.tab, row));
    }
    return gens;
}

// ideal generated by pairwise products of minimal generators
template <class R>
TruncatedIdeal<R> ideal_product(const R& F, TruncatedIdeal<R>& I, TruncatedIdeal<R>& J) {
    if (I.n != J.n || I.D != J.D) throw MismatchError("ideal_product: ring or truncation mismatch");
    if (I.D < I.c + J.c)
        throw TruncationError("ideal_product: need D >= c_I + c_J for an exact product");
    auto gi = minimal_generators(F, I);
    auto gj = minimal_generators(F, J);
    std::vector<MPoly<R>> prods;
    for (const auto& a : gi)
        for (const auto& b : gj) prods.push_back(poly_mul(F, a, b, I.D));
    return ideal_from_generators(F, I.n, I.D, prods, I.c + J.c);
}

// (I : d) = {sigma : sigma*d in I}; result lives below D - ord(d)
template <class R>
TruncatedIdeal<R> ideal_colon(const R& F, const TruncatedIdeal<R>& I, const MPoly<R>& d) {
    if (d.is_zero()) throw PreconditionError("colon by the zero operator");
    if (d.n != I.n) throw MismatchError("ideal_colon: ring mismatch");
    if (I.D < I.c) throw TruncationError("ideal_colon: input not exact");
    int o = d.order();
    int D2 = I.D - o;
    auto K = make_empty_ideal(F, I.n, D2, std::max(0, I.c - o));
    int N = I.tab->size(), N2 = K.tab->size();
    check_matrix_budget(static_cast<long>(N) + N2);
    Echelon<R> ker(F, N + N2);
    for (int si = 0; si < N2; ++si) {
        MPoly<R> prod = poly_mul(F, mono_poly<R>(I.n, K.tab->mono(si), F.one()), d, I.D);
        auto img = densify(F, *I.tab, prod);
        I.ech.reduce(img); // sigma*d mod I
        std::vector<typename R::Elem> v(N + N2, F.zero());
        for (int i = 0; i < N; ++i) v[i] = img[i];
        v[N + si] = F.one();
        int r = ker.insert(v);
        if (r >= 0 && ker.rows()[r].pivot() >= N) {
            std::vector<typename R::Elem> w(N2, F.zero());
            for (const auto& [col, a] : ker.rows()[r].ent) w[col - N] = a;
            K.ech.insert(w);
        }
    }
    return K;
}

// span of the ideal inside the coordinate subspace spanned by monomials selected
// by keep(index); used for J = I cap p_i in ray decompositions
template <class R, class Keep>
TruncatedIdeal<R> ideal_intersect_coordinate_subspace(const R& F, const TruncatedIdeal<R>& I,
                                                      Keep keep, int c_result) {
    // echelonize with the non-kept ("pure") coordinates first; rows with support
    // only on kept coordinates span the intersection
    int N = I.tab->size();
    std::vector<int> perm(N), inv(N);
    int pos = 0;
    for (int i = 0; i < N; ++i)
        if (!keep(i)) perm[pos++] = i;
    int nonkept = pos;
    for (int i = 0; i < N; ++i)
        if (keep(i)) perm[pos++] = i;
    for (int i = 0; i < N; ++i) inv[perm[i]] = i;
    Echelon<R> z(F, N);
    auto K = make_empty_ideal(F, I.n, I.D, c_result);
    for (const auto& row : I.ech.rows()) {
        std::vector<typename R::Elem> v(N, F.zero());
        for (const auto& [i, a] : row.ent) v[inv[i]] = a;
        z.insert(v);
    }
    z.canonicalize();
    for (const auto& row : z.rows()) {
        if (row.pivot() < nonkept) continue; // touches a pure coordinate
        std::vector<typename R::Elem> v(N, F.zero());
        for (const auto& [i, a] : row.ent) v[perm[i]] = a;
        K.ech.insert(v);
    }
    return K;
}

} // namespace apolar
