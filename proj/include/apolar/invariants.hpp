#pragma once

#include <optional>
#include <vector>

#include "ideal.hpp"
#include "subst.hpp"

namespace apolar {

struct ApolarReport {
    std::vector<long> H;
    long length = 0;
    int socle_degree = 0;
    long essential_variables = 0;
    std::optional<long> tangent_dimension;
};

// H(l) = dim(m^l -| f) - dim(m^{l+1} -| f), using A ~ S -| f
template <class R>
ApolarReport hilbert_function(const R& F, const MPoly<R>& f) {
    if (f.is_zero()) throw PreconditionError("the zero polynomial has no apolar algebra");
    int n = f.n, s = f.degree();
    auto tabP = MonoTable::get(n, s + 1);
    auto tabS = tabP; // operators of degree > s annihilate f
    Echelon<R> span(F, tabP->size());
    std::vector<int> dims(s + 2, 0); // dims[l] = dim span{sigma -| f : deg sigma >= l}
    for (int l = s; l >= 0; --l) {
        for (int si = tabS->degree_begin(l); si < tabS->degree_end(l); ++si) {
            const Mono& sm = tabS->mono(si);
            std::vector<typename R::Elem> v(tabP->size(), F.zero());
            bool any = false;
            for (const auto& [mf, cf] : f.terms) {
                if (!divides(sm, mf)) continue;
                v[tabP->index(mono_div(mf, sm))] = cf;
                any = true;
            }
            if (any) span.insert(v);
        }
        dims[l] = span.rank();
    }
    ApolarReport rep;
    rep.socle_degree = s;
    for (int l = 0; l <= s; ++l) rep.H.push_back(dims[l] - dims[l + 1]);
    for (long h : rep.H) rep.length += h;
    rep.essential_variables = rep.H.size() > 1 ? rep.H[1] : 0;
    return rep;
}

// A = S/I with vector-space basis the standard (non-pivot) monomials
template <class R>
struct QuotientAlgebra {
    int n = 0;
    int dim = 0;
    TruncatedIdeal<R> I;
    std::vector<int> basis;    // table indices of standard monomials
    std::vector<int> col2pos;  // table index -> basis position or -1
    std::vector<DenseMat<R>> mulvar;

    QuotientAlgebra(const R& F, TruncatedIdeal<R> ideal) : I(std::move(ideal)) {
        n = I.n;
        I.ech.canonicalize();
        col2pos.assign(I.tab->size(), -1);
        for (int i = 0; i < I.tab->size(); ++i) {
            if (I.ech.pivot_row(i) < 0) {
                col2pos[i] = static_cast<int>(basis.size());
                basis.push_back(i);
            }
        }
        dim = static_cast<int>(basis.size());
        mulvar.resize(n);
        for (int v = 0; v < n; ++v) {
            mulvar[v].assign(dim, std::vector<typename R::Elem>(dim, F.zero()));
            for (int b = 0; b < dim; ++b) {
                int j = I.tab->mult_index(v, basis[b]);
                if (j < 0) continue; // degree >= D lies in m^c, hence in I
                auto col = reduce_index(F, j);
                for (int r = 0; r < dim; ++r) mulvar[v][r][b] = col[r];
            }
        }
    }

    std::vector<typename R::Elem> reduce_index(const R& F, int tabidx) const {
        std::vector<typename R::Elem> full(I.tab->size(), F.zero());
        full[tabidx] = F.one();
        I.ech.reduce(full);
        std::vector<typename R::Elem> out(dim, F.zero());
        for (int b = 0; b < dim; ++b) out[b] = full[basis[b]];
        return out;
    }

    std::vector<typename R::Elem> mul_mono(const R& F, std::vector<typename R::Elem> v,
                                           const Mono& m) const {
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < m[i]; ++e) v = dense_apply(F, mulvar[i], v);
        return v;
    }
};

// I = Ann(f); tangent space of the Hilbert scheme at [Spec S/I] has dimension
// dim_k I/I^2 = dim_k S/I^2 - dim_k S/I, exact at D = 2s+2
template <class R>
long tangent_space_dimension(const R& F, const MPoly<R>& f) {
    if (f.is_zero()) throw PreconditionError("tangent space of the zero polynomial");
    int s = f.degree();
    auto I = apolar_ideal(F, f, 2 * s + 2);
    auto I2 = ideal_product(F, I, I);
    return static_cast<long>(ideal_dim_quotient(I2)) - ideal_dim_quotient(I);
}

// Change coordinates so that f involves exactly H(1) variables: order-1 elements
// of Ann(f) become pure trailing variables under a dual automorphism.
template <class R>
MPoly<R> essential_reduction(const R& F, const MPoly<R>& f) {
    if (f.is_zero()) throw PreconditionError("essential reduction of zero");
    int n = f.n, s = f.degree();
    if (s < 1) return poly_restrict(F, poly_component(F, f, 0), 0);
    auto I = apolar_ideal(F, f, s + 2);
    I.ech.canonicalize();
    // rows with a degree-1 pivot: their classes kill variables
    std::vector<MPoly<R>> killers;
    for (const auto& row : I.ech.rows()) {
        if (I.tab->degree(row.pivot()) == 1) killers.push_back(row_to_poly(F, *I.tab, row));
    }
    int e = n - static_cast<int>(killers.size());
    if (killers.empty()) return f;
    // complete the killers' linear parts to a basis with unit vectors
    Echelon<R> lin(F, n);
    for (const auto& k : killers) {
        std::vector<typename R::Elem> v(n, F.zero());
        for (int j = 0; j < n; ++j) v[j] = poly_coeff(F, k, mono_var(n, j));
        lin.insert(v);
    }
    std::vector<int> keep;
    for (int j = 0; j < n && static_cast<int>(keep.size()) < e; ++j) {
        std::vector<typename R::Elem> v(n, F.zero());
        v[j] = F.one();
        if (lin.insert(v) >= 0) keep.push_back(j);
    }
    // phi(alpha_m) = alpha_{keep[m]} for m < e, phi(alpha_{e+j}) = killer_j
    std::vector<MPoly<R>> images(n);
    for (int m = 0; m < e; ++m) images[m] = var_poly(F, n, keep[m]);
    for (std::size_t j = 0; j < killers.size(); ++j) images[e + j] = killers[j];
    auto phi = make_substitution(F, n, s + 2, std::move(images));
    auto fr = dual_substitution(F, invert_substitution(F, phi), f, s);
    // Ann(fr) contains the pure trailing variables, so they cannot occur in fr
    return poly_restrict(F, fr, e);
}

template <class R>
bool is_complete_intersection(const R& F, const MPoly<R>& f) {
    auto rep = hilbert_function(F, f);
    long e = rep.essential_variables;
    if (e == 0) return true; // k itself
    auto fr = essential_reduction(F, f);
    if (fr.n != e) throw PreconditionError("essential reduction variable count disagrees with H(1)");
    auto I = apolar_ideal(F, fr, fr.degree() + 2);
    return static_cast<long>(minimal_generators(F, I).size()) == e;
}

struct UnobstructednessReport {
    long length = 0;
    long embedding_dim = 0;
    long tangent_dim = 0;
    bool is_unobstructed = false;
};

template <class R>
UnobstructednessReport unobstructedness_report(const R& F, const MPoly<R>& f) {
    auto rep = hilbert_function(F, f);
    auto fr = essential_reduction(F, f);
    UnobstructednessReport u;
    u.length = rep.length;
    u.embedding_dim = rep.essential_variables;
    u.tangent_dim = tangent_space_dimension(F, fr);
    u.is_unobstructed = (u.tangent_dim == u.embedding_dim * u.length);
    return u;
}

} // namespace apolar
