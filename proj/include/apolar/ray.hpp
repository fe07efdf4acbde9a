#pragma once

#include <string>
#include <vector>

#include "groebner.hpp"
#include "ideal.hpp"
#include "invariants.hpp"

namespace apolar {

enum class FamilyKind { Lower, Upper };

// one-parameter family of ideals over k[t]: generators c0 + t*c1 (t-degree <= 1)
template <class R>
struct RayFamily {
    int n = 0;         // ambient variable count
    int ray_index = 0; // variable carrying the degeneration
    int nu = 0;        // ray order
    FamilyKind kind = FamilyKind::Lower;
    std::vector<std::pair<MPoly<R>, MPoly<R>>> gens;
    bool proven_flat = false; // construction matches a proven-flat shape
    std::string provenance;
};

// minimal nu with alpha_i^nu in the image of I under the projection killing the
// other variables; the projection order of a span is the minimum over spanning rows
template <class R>
int ray_order(const R& F, const TruncatedIdeal<R>& I, int i) {
    int exact = I.c; // m^c inside I projects onto (alpha_i^c)
    for (const auto& row : I.ech.rows()) {
        int ord = I.D + 1;
        for (const auto& [idx, a] : row.ent) {
            const Mono& m = I.tab->mono(idx);
            bool pure = true;
            for (int j = 0; j < I.n && pure; ++j)
                if (j != i && m[j] != 0) pure = false;
            if (pure) ord = std::min(ord, m[i]);
        }
        exact = std::min(exact, ord);
    }
    return exact;
}

// g = f + x^d (del -| f) + x^{2d} (del^2 -| f) + ... in one extra variable
template <class R>
MPoly<R> ray_sum(const R& F, const MPoly<R>& f, const MPoly<R>& del, int d) {
    if (f.is_zero()) throw PreconditionError("ray_sum of the zero polynomial");
    if (d < 2) throw PreconditionError("ray_sum needs d >= 2");
    if (del.is_zero() || del.order() < 1)
        throw PreconditionError("ray_sum operator must lie in the maximal ideal");
    int n = f.n;
    MPoly<R> g = poly_extend(F, f, n + 1);
    MPoly<R> cur = contract(F, del, f);
    for (int j = 1; !cur.is_zero(); ++j, cur = contract(F, del, cur))
        g = poly_add(F, g,
                     poly_mul(F, mono_poly<R>(n + 1, mono_var(n + 1, n, j * d), F.one()),
                              poly_extend(F, cur, n + 1)));
    return g;
}

template <class R>
struct RaySumDecomposition {
    bool equal = false;
    MPoly<R> g;                    // the ray sum in n+1 variables
    std::vector<MPoly<R>> j_gens;  // lifted Ann(f) gens and alpha * Ann(del -| f) gens
    MPoly<R> special;              // alpha^d - del, lifted
    std::string mismatch;          // human-readable counterexample when not equal
};

// verify Ann(g) = Ann_S(f) T + alpha Ann_S(del -| f) T + (alpha^d - del) T, both
// sides via independent computations; never reports an unsound success
template <class R>
RaySumDecomposition<R> ray_sum_annihilator_check(const R& F, const MPoly<R>& f,
                                                 const MPoly<R>& del, int d) {
    auto delf = contract(F, del, f);
    if (delf.is_zero()) throw PreconditionError("ray operator annihilates f");
    int n = f.n;
    RaySumDecomposition<R> out;
    out.g = ray_sum(F, f, del, d);
    int sg = out.g.degree();
    auto If = apolar_ideal(F, f, f.degree() + 2);
    auto Idf = apolar_ideal(F, delf, delf.degree() + 2);
    for (const auto& a : minimal_generators(F, If)) out.j_gens.push_back(poly_extend(F, a, n + 1));
    for (const auto& b : minimal_generators(F, Idf))
        out.j_gens.push_back(poly_mul(F, var_poly(F, n + 1, n), poly_extend(F, b, n + 1)));
    out.special = poly_sub(F, var_poly(F, n + 1, n, d), poly_extend(F, del, n + 1));
    auto lhs = apolar_ideal(F, out.g, sg + 2);
    std::vector<MPoly<R>> gens = out.j_gens;
    gens.push_back(out.special);
    // c = D keeps the claim vacuous: equality with lhs (c = sg+1) certifies it
    auto rhs = ideal_from_generators(F, n + 1, sg + 2, gens, sg + 2);
    if (!ideal_contains(F, lhs, rhs)) {
        out.mismatch = "a proposed generator does not annihilate the ray sum";
        return out;
    }
    if (!ideal_contains(F, rhs, lhs)) {
        lhs.ech.canonicalize();
        for (const auto& row : lhs.ech.rows()) {
            auto p = row_to_poly(F, *lhs.tab, row);
            if (!ideal_member(F, rhs, p)) {
                out.mismatch = "annihilator element missing from the decomposition: " +
                               poly_to_string(F, p, "a");
                return out;
            }
        }
    }
    out.equal = true;
    return out;
}

template <class R>
RayFamily<R> build_ray_family(const R& F, const MPoly<R>& f, const MPoly<R>& del, int d,
                              FamilyKind kind) {
    auto chk = ray_sum_annihilator_check(F, f, del, d);
    if (!chk.equal) throw Error("ray-sum annihilator decomposition failed: " + chk.mismatch);
    RayFamily<R> fam;
    fam.n = f.n + 1;
    fam.ray_index = f.n;
    fam.nu = d;
    fam.kind = kind;
    for (const auto& gj : chk.j_gens) fam.gens.push_back({gj, MPoly<R>(fam.n)});
    MPoly<R> c1(fam.n);
    int e = kind == FamilyKind::Lower ? 1 : d - 1;
    poly_add_term(F, c1, mono_var(fam.n, fam.ray_index, e), F.neg(F.one()));
    fam.gens.push_back({chk.special, c1});
    fam.proven_flat = true;
    fam.provenance = "ray_sum";
    return fam;
}

template <class R>
std::vector<MPoly<R>> fiber_at(const R& F, const RayFamily<R>& fam, const typename R::Elem& lam) {
    std::vector<MPoly<R>> gens;
    for (const auto& [c0, c1] : fam.gens)
        gens.push_back(poly_add(F, c0, poly_scale(F, c1, lam)));
    return buchberger(F, gens);
}

template <class R>
long fiber_length(const R& F, const RayFamily<R>& fam, const typename R::Elem& lam) {
    auto qb = quotient_basis(fiber_at(F, fam, lam), fam.n);
    if (!qb) throw PreconditionError("family fiber is not finite");
    return static_cast<long>(qb->size());
}

template <class R>
struct FlatnessReport {
    bool flat = false;
    long length0 = 0;
    std::vector<std::pair<typename R::Elem, long>> samples;
    bool proven_flat = false; // pedigree of the construction, not of the probe
    typename R::Elem witness{};
};

// Monte Carlo flatness evidence: for finite families, constant fiber length over
// all of k is equivalent to flatness; we sample nonzero lambda
template <class R>
FlatnessReport<R> flatness_probe(const R& F, const RayFamily<R>& fam, int samples,
                                 std::uint64_t seed) {
    Rng rng(seed);
    FlatnessReport<R> rep;
    rep.proven_flat = fam.proven_flat;
    rep.length0 = fiber_length(F, fam, F.zero());
    rep.flat = true;
    for (int i = 0; i < samples; ++i) {
        auto lam = random_nonzero(F, rng);
        long len = fiber_length(F, fam, lam);
        rep.samples.push_back({lam, len});
        if (len != rep.length0 && rep.flat) {
            rep.flat = false;
            rep.witness = lam;
        }
    }
    std::sort(rep.samples.begin(), rep.samples.end(),
              [&](const auto& a, const auto& b) { return elem_less(F, a.first, b.first); });
    return rep;
}

template <class R>
struct FiberStructureReport {
    bool ok = false;
    long total_length = 0;
    long expected_length = 0;
    long len_f = 0;
    long len_delf = 0;
    // (ray coordinate, local length) per support point, all other coordinates zero
    std::vector<std::pair<typename R::Elem, long>> local;
    std::string failure;
};

// lower-family fiber at lambda != 0 decomposes as Spec Apolar(f) at the origin
// plus d-1 translated copies of Spec Apolar(del -| f)
template <class R>
FiberStructureReport<R> fiber_structure_check(const R& F, const MPoly<R>& f, const MPoly<R>& del,
                                              int d, const typename R::Elem& lam,
                                              std::uint64_t seed) {
    auto delf = contract(F, del, f);
    if (delf.is_zero()) throw PreconditionError("ray operator annihilates f");
    if (!contract(F, del, delf).is_zero())
        throw PreconditionError("fiber structure needs del^2 -| f = 0");
    if (F.characteristic() != 0 && (d - 1) % F.characteristic() == 0)
        throw PreconditionError("fiber structure needs the characteristic not to divide d-1");
    if (F.is_zero(lam)) throw PreconditionError("fiber structure needs lambda != 0");
    // the d-1 roots of T^{d-1} = lambda must lie in the base field
    UniPoly<R> pol;
    pol.c.assign(d, F.zero());
    pol.c[0] = F.neg(lam);
    pol.c[d - 1] = F.one();
    Rng rng(seed);
    std::vector<std::pair<typename R::Elem, int>> roots;
    uni_roots(F, pol, roots, rng);
    if (static_cast<int>(roots.size()) != d - 1)
        throw RootAvailabilityError("the (d-1)-th roots of lambda do not all lie in the base field");

    FiberStructureReport<R> rep;
    rep.len_f = hilbert_function(F, f).length;
    rep.len_delf = hilbert_function(F, delf).length;
    rep.expected_length = rep.len_f + static_cast<long>(d - 1) * rep.len_delf;
    auto fam = build_ray_family(F, f, del, d, FamilyKind::Lower);
    auto GB = fiber_at(F, fam, lam);
    auto sup = support_and_local_lengths(F, GB, fam.n, rng);
    if (!sup.complete) {
        rep.failure = "fiber support did not split over the base field";
        return rep;
    }
    rep.total_length = sup.total_length;
    for (const auto& pt : sup.points) {
        for (int i = 0; i < fam.n; ++i) {
            if (i == fam.ray_index) continue;
            if (!F.is_zero(pt.point[i])) {
                rep.failure = "support point off the ray axis";
                return rep;
            }
        }
        rep.local.push_back({pt.point[fam.ray_index], pt.local_length});
    }
    if (rep.total_length != rep.expected_length) {
        rep.failure = "total fiber length mismatch";
        return rep;
    }
    // expected support: {0} + all (d-1)-th roots of lambda, with prescribed lengths
    std::vector<std::pair<typename R::Elem, long>> want;
    want.push_back({F.zero(), rep.len_f});
    for (const auto& [r, mult] : roots) want.push_back({r, rep.len_delf});
    std::sort(want.begin(), want.end(),
              [&](const auto& a, const auto& b) { return elem_less(F, a.first, b.first); });
    if (want.size() != rep.local.size()) {
        rep.failure = "support point count mismatch";
        return rep;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (!F.eq(want[i].first, rep.local[i].first) || want[i].second != rep.local[i].second) {
            rep.failure = "local length or support coordinate mismatch";
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

template <class R>
struct TangentPreservingReport {
    bool holds = false;
    // which of I, J^2, (I^2 : del) are individually needed for the containment
    bool need_I = false;
    bool need_J2 = false;
    bool need_colon = false;
};

// unobstructedness transfer criterion: I cap J^2 cap (I^2 : del) inside I*J,
// with I = Ann(f), J = Ann(del -| f) = (I : del)
template <class R>
TangentPreservingReport<R> tangent_preserving_check(const R& F, const MPoly<R>& f,
                                                    const MPoly<R>& del) {
    auto delf = contract(F, del, f);
    if (delf.is_zero()) throw PreconditionError("ray operator annihilates f");
    if (!contract(F, del, delf).is_zero())
        throw PreconditionError("tangent-preserving check needs del^2 -| f = 0");
    int s = f.degree(), o = del.order();
    if (o < 1) throw PreconditionError("ray operator must lie in the maximal ideal");
    int D = 2 * s + 2;
    // the colon loses ord(del) degrees: compute upstream at D + o
    auto Ibig = apolar_ideal(F, f, D + o);
    auto I2big = ideal_product(F, Ibig, Ibig);
    auto colon = ideal_colon(F, I2big, del); // lands exactly at D
    auto I = ideal_truncate(F, Ibig, D);
    auto J = apolar_ideal(F, delf, D);
    auto J2 = ideal_product(F, J, J);
    auto IJ = ideal_product(F, I, J);
    auto IcJ2 = ideal_intersect(F, I, J2);
    auto lhs = ideal_intersect(F, IcJ2, colon);
    if (!ideal_contains(F, lhs, IJ)) throw Error("I*J must lie in every term of the intersection");
    TangentPreservingReport<R> rep;
    rep.holds = ideal_contains(F, IJ, lhs);
    rep.need_I = !ideal_contains(F, IJ, ideal_intersect(F, J2, colon));
    rep.need_J2 = !ideal_contains(F, IJ, ideal_intersect(F, I, colon));
    rep.need_colon = !ideal_contains(F, IJ, IcJ2);
    return rep;
}

// ray decomposition of I at variable i: I = J + (alpha_i^nu - q) with q free of
// pure alpha_i terms; returns (J, w = alpha_i^nu - q, nu)
template <class R>
std::tuple<TruncatedIdeal<R>, MPoly<R>, int> ray_decomposition(const R& F,
                                                               const TruncatedIdeal<R>& I, int i) {
    int nu = ray_order(F, I, i);
    auto pure_part = [&](const MPoly<R>& p) {
        MPoly<R> r(I.n);
        for (const auto& [m, c] : p.terms) {
            bool pure = true;
            for (int j = 0; j < I.n && pure; ++j)
                if (j != i && m[j] != 0) pure = false;
            if (pure) poly_add_term(F, r, m, c);
        }
        return r;
    };
    // witness with projection order nu
    MPoly<R> w(I.n);
    {
        TruncatedIdeal<R> Ic = I;
        Ic.ech.canonicalize();
        for (const auto& row : Ic.ech.rows()) {
            auto p = row_to_poly(F, *I.tab, row);
            auto pp = pure_part(p);
            if (!pp.is_zero() && pp.order() == nu) {
                w = poly_scale(F, p, F.inv(poly_coeff(F, pp, mono_var(I.n, i, nu))));
                break;
            }
        }
        if (w.is_zero()) {
            // the order is realized by m^c itself
            w = mono_poly<R>(I.n, mono_var(I.n, i, nu), F.one());
        }
    }
    // clean higher pure terms: subtract alpha_i^{k-nu} * w, staying inside I
    for (;;) {
        auto pp = pure_part(w);
        poly_add_term(F, pp, mono_var(I.n, i, nu), F.neg(F.one()));
        if (pp.is_zero()) break;
        int k = pp.order();
        auto ck = poly_coeff(F, pp, mono_var(I.n, i, k));
        auto shift = poly_mul(F, mono_poly<R>(I.n, mono_var(I.n, i, k - nu), F.one()), w, I.D);
        w = poly_sub(F, w, poly_scale(F, shift, ck));
    }
    // J = I cap (ideal of the other variables): monomials with some alpha_j, j != i
    auto keep = [&, tab = I.tab](int idx) {
        const Mono& m = tab->mono(idx);
        for (int j = 0; j < static_cast<int>(m.size()); ++j)
            if (j != i && m[j] != 0) return true;
        return false;
    };
    // the stored bound is relative to the subspace: monomials of degree >= c with
    // a non-pure variable lie in the span, which is what generator extraction needs
    auto J = ideal_intersect_coordinate_subspace(F, I, keep, I.c);
    return {std::move(J), std::move(w), nu};
}

// stretched degeneration: f = x_1^s + g with alpha_1^c -| g = 0, 2c <= s; builds
// the upper ray family at alpha_1 from the ray decomposition and certifies it flat
template <class R>
std::pair<RayFamily<R>, FlatnessReport<R>> stretched_degeneration_check(const R& F,
                                                                        const MPoly<R>& f,
                                                                        int samples,
                                                                        std::uint64_t seed) {
    int s = f.degree(), n = f.n;
    auto c0 = poly_coeff(F, f, mono_var(n, 0, s));
    if (F.is_zero(c0)) throw PreconditionError("stretched check expects an x_1^s term");
    MPoly<R> fn = poly_scale(F, f, F.inv(c0));
    MPoly<R> g = fn;
    poly_add_term(F, g, mono_var(n, 0, s), F.neg(F.one()));
    int c = 0;
    while (c <= s && !contract(F, var_poly(F, n, 0, c), g).is_zero()) ++c;
    if (2 * c > s)
        throw PreconditionError("stretched hypothesis fails: witness c = " + std::to_string(c) +
                                " with 2c > s = " + std::to_string(s));
    int D = s + 3; // D - 1 >= c+1 = completeness bound of Ann(f)
    auto I = apolar_ideal(F, fn, D);
    auto [J, w, nu] = ray_decomposition(F, I, 0);
    // decomposition invariant: J + (w) recovers I
    {
        std::vector<MPoly<R>> gens = minimal_generators(F, J);
        gens.push_back(w);
        auto back = ideal_from_generators(F, n, D, gens, I.c);
        if (!ideal_equal(F, back, I)) throw Error("ray decomposition does not recover the ideal");
    }
    RayFamily<R> fam;
    fam.n = n;
    fam.ray_index = 0;
    fam.nu = nu;
    fam.kind = FamilyKind::Upper;
    for (const auto& gj : minimal_generators(F, J)) fam.gens.push_back({gj, MPoly<R>(n)});
    MPoly<R> c1(n);
    poly_add_term(F, c1, mono_var(n, 0, nu - 1), F.neg(F.one()));
    fam.gens.push_back({w, c1});
    fam.proven_flat = true;
    fam.provenance = "stretched";
    auto rep = flatness_probe(F, fam, samples, seed);
    if (!rep.flat) throw Error("stretched upper family failed the flatness probe");
    return {std::move(fam), std::move(rep)};
}

} // namespace apolar
