#pragma once

#include <vector>

#include "linalg.hpp"
#include "poly.hpp"

namespace apolar {

// Substitution endomorphism of S/m^D, alpha_i -> images[i] (order >= 1 each).
// Constructor-level validation happens in make_substitution.
template <class R>
struct Substitution {
    int n = 0;
    int D = 0;
    std::vector<MPoly<R>> images;
};

template <class R>
DenseMat<R> substitution_linear_part(const R& F, const Substitution<R>& phi) {
    DenseMat<R> M(phi.n, std::vector<typename R::Elem>(phi.n, F.zero()));
    for (int i = 0; i < phi.n; ++i)
        for (int j = 0; j < phi.n; ++j)
            M[i][j] = poly_coeff(F, phi.images[i], mono_var(phi.n, j));
    return M;
}

template <class R>
Substitution<R> make_substitution(const R& F, int n, int D, std::vector<MPoly<R>> images) {
    if (static_cast<int>(images.size()) != n) throw MismatchError("need one image per variable");
    for (auto& im : images) {
        if (im.n != n) throw MismatchError("image variable count mismatch");
        if (!im.is_zero() && im.order() < 1)
            throw NotAutomorphismError("substitution image has a constant term");
        im = poly_truncate(F, im, D);
    }
    Substitution<R> phi{n, D, std::move(images)};
    dense_inverse(F, substitution_linear_part(F, phi)); // throws when singular
    return phi;
}

template <class R>
Substitution<R> identity_substitution(const R& F, int n, int D) {
    std::vector<MPoly<R>> im;
    for (int i = 0; i < n; ++i) im.push_back(var_poly(F, n, i));
    return make_substitution(F, n, D, std::move(im));
}

// sigma with alpha_i replaced by phi(alpha_i), truncated at phi.D
template <class R>
MPoly<R> apply_substitution(const R& F, const Substitution<R>& phi, const MPoly<R>& sigma) {
    if (sigma.n != phi.n) throw MismatchError("variable count mismatch");
    MPoly<R> r(phi.n);
    // per-call power cache: powers[i][e] = phi(alpha_i)^e
    std::vector<std::vector<MPoly<R>>> powers(phi.n);
    auto power = [&](int i, int e) -> const MPoly<R>& {
        auto& ps = powers[i];
        if (ps.empty()) ps.push_back(mono_poly<R>(phi.n, mono_one(phi.n), F.one()));
        while (static_cast<int>(ps.size()) <= e)
            ps.push_back(poly_mul(F, ps.back(), phi.images[i], phi.D));
        return ps[e];
    };
    for (const auto& [m, c] : sigma.terms) {
        MPoly<R> t = mono_poly<R>(phi.n, mono_one(phi.n), c);
        for (int i = 0; i < phi.n; ++i)
            if (m[i] > 0) t = poly_mul(F, t, power(i, m[i]), phi.D);
        r = poly_add(F, r, t);
    }
    return r;
}

// composition: apply(compose(phi,psi), s) == apply(phi, apply(psi, s))
template <class R>
Substitution<R> compose_substitution(const R& F, const Substitution<R>& phi,
                                     const Substitution<R>& psi) {
    if (phi.n != psi.n || phi.D != psi.D) throw MismatchError("substitution mismatch");
    std::vector<MPoly<R>> im;
    for (int i = 0; i < phi.n; ++i) im.push_back(apply_substitution(F, phi, psi.images[i]));
    return make_substitution(F, phi.n, phi.D, std::move(im));
}

// compositional inverse: psi with apply(psi, apply(phi, s)) = s below degree D.
// Fixed point of psi = M^{-1} (alpha - H(psi)) where phi(alpha_i) = M alpha + h_i.
template <class R>
Substitution<R> invert_substitution(const R& F, const Substitution<R>& phi) {
    int n = phi.n;
    DenseMat<R> Minv = dense_inverse(F, substitution_linear_part(F, phi));
    std::vector<MPoly<R>> h(n);
    for (int i = 0; i < n; ++i) {
        h[i] = phi.images[i];
        for (int j = 0; j < n; ++j) {
            Mono v = mono_var(n, j);
            auto c = poly_coeff(F, h[i], v);
            if (!F.is_zero(c)) poly_add_term(F, h[i], v, F.neg(c));
        }
    }
    // start from the inverse of the linear part
    std::vector<MPoly<R>> psi(n);
    auto linear_inv = [&](int j) {
        MPoly<R> r(n);
        for (int i = 0; i < n; ++i) poly_add_term(F, r, mono_var(n, i), Minv[j][i]);
        return r;
    };
    for (int j = 0; j < n; ++j) psi[j] = linear_inv(j);
    for (int iter = 0; iter < phi.D; ++iter) {
        Substitution<R> cur{n, phi.D, psi};
        std::vector<MPoly<R>> next(n);
        bool changed = false;
        for (int j = 0; j < n; ++j) {
            // next_j = sum_i Minv[j][i] (alpha_i - H_i(psi))
            MPoly<R> acc(n);
            for (int i = 0; i < n; ++i) {
                if (F.is_zero(Minv[j][i])) continue;
                MPoly<R> term = poly_sub(F, var_poly(F, n, i), apply_substitution(F, cur, h[i]));
                acc = poly_add(F, acc, poly_scale(F, term, Minv[j][i]));
            }
            next[j] = poly_truncate(F, acc, phi.D);
            if (!poly_eq(F, next[j], psi[j])) changed = true;
        }
        psi = std::move(next);
        if (!changed) break;
    }
    return make_substitution(F, n, phi.D, std::move(psi));
}

// psi*(f): the unique g of degree <= s with <phi(sigma), g> = <sigma, f> for all
// deg sigma <= s; consequently Ann(g) = phi(Ann(f)) up to truncation.
template <class R>
MPoly<R> dual_substitution(const R& F, const Substitution<R>& phi, const MPoly<R>& f, int s) {
    if (f.n != phi.n) throw MismatchError("variable count mismatch");
    if (f.degree() > s) throw PreconditionError("dual_substitution: deg f exceeds s");
    if (phi.D < s + 1) throw TruncationError("dual_substitution: substitution truncated below s+1");
    auto tab = MonoTable::get(phi.n, s + 1);
    int N = tab->size();
    DenseMat<R> M(N, std::vector<typename R::Elem>(N, F.zero()));
    std::vector<typename R::Elem> rhs(N, F.zero());
    for (int b = 0; b < N; ++b) {
        MPoly<R> img = apply_substitution(F, phi, mono_poly<R>(phi.n, tab->mono(b), F.one()));
        for (const auto& [m, c] : img.terms) {
            int a = tab->index(m);
            if (a >= 0) M[b][a] = c;
        }
        rhs[b] = poly_coeff(F, f, tab->mono(b));
    }
    auto g = dense_solve(F, std::move(M), std::move(rhs));
    MPoly<R> r(phi.n);
    for (int a = 0; a < N; ++a) poly_add_term(F, r, tab->mono(a), g[a]);
    return r;
}

} // namespace apolar
