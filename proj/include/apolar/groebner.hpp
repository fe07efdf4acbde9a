#pragma once

#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "budget.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "random.hpp"

namespace apolar {

// ---- degrevlex leading terms (largest monomial of the top-degree block) ----

template <class R>
std::pair<Mono, typename R::Elem> lead_term(const MPoly<R>& f) {
    if (f.is_zero()) throw PreconditionError("leading term of zero");
    auto it = f.terms.rbegin();
    int d = total_degree(it->first);
    auto best = it;
    for (; it != f.terms.rend() && total_degree(it->first) == d; ++it) best = it;
    return {best->first, best->second};
}

template <class R>
MPoly<R> make_monic(const R& F, MPoly<R> f) {
    if (f.is_zero()) return f;
    auto inv = F.inv(lead_term(f).second);
    return poly_scale(F, f, inv);
}

// full normal form modulo a list of (monic) reducers
template <class R>
MPoly<R> normal_form(const R& F, MPoly<R> f, const std::vector<MPoly<R>>& G) {
    MPoly<R> out(f.n);
    while (!f.is_zero()) {
        auto [lm, lc] = lead_term(f);
        bool reduced = false;
        for (const auto& g : G) {
            auto [gm, gc] = lead_term(g);
            if (!divides(gm, lm)) continue;
            auto factor = mono_poly<R>(f.n, mono_div(lm, gm), F.mul(lc, F.inv(gc)));
            f = poly_sub(F, f, poly_mul(F, factor, g));
            reduced = true;
            break;
        }
        if (!reduced) {
            poly_add_term(F, out, lm, lc);
            poly_add_term(F, f, lm, F.neg(lc));
        }
    }
    return out;
}

// Buchberger with normal pair selection and the coprimality criterion;
// returns the reduced Groebner basis, deterministically ordered
template <class R>
std::vector<MPoly<R>> buchberger(const R& F, std::vector<MPoly<R>> gens) {
    std::vector<MPoly<R>> G;
    int n = 0;
    for (auto& g : gens) {
        n = g.n;
        if (!g.is_zero()) G.push_back(make_monic(F, std::move(g)));
    }
    if (G.empty()) return G;
    struct PairKey {
        int deg;
        Mono lcm;
        int i, j;
        bool operator<(const PairKey& o) const {
            if (deg != o.deg) return deg < o.deg;
            if (lcm != o.lcm) return drl_less_same_degree(lcm, o.lcm);
            if (i != o.i) return i < o.i;
            return j < o.j;
        }
    };
    std::set<PairKey> pairs;
    auto push_pairs = [&](int j) {
        auto lj = lead_term(G[j]).first;
        for (int i = 0; i < j; ++i) {
            auto li = lead_term(G[i]).first;
            Mono l = mono_lcm(li, lj);
            if (l == mono_mul(li, lj)) continue; // coprime leading terms
            pairs.insert({total_degree(l), l, i, j});
        }
    };
    for (int j = 0; j < static_cast<int>(G.size()); ++j) push_pairs(j);
    long steps = 0;
    while (!pairs.empty()) {
        if (++steps > budget()) throw BudgetError("Buchberger step budget exhausted");
        auto key = *pairs.begin();
        pairs.erase(pairs.begin());
        const auto& fi = G[key.i];
        const auto& fj = G[key.j];
        auto li = lead_term(fi), lj = lead_term(fj);
        auto a = mono_poly<R>(n, mono_div(key.lcm, li.first), F.inv(li.second));
        auto b = mono_poly<R>(n, mono_div(key.lcm, lj.first), F.inv(lj.second));
        auto sp = poly_sub(F, poly_mul(F, a, fi), poly_mul(F, b, fj));
        auto nf = normal_form(F, std::move(sp), G);
        if (!nf.is_zero()) {
            G.push_back(make_monic(F, std::move(nf)));
            push_pairs(static_cast<int>(G.size()) - 1);
        }
    }
    // minimalize: drop elements whose leading term another one divides
    std::vector<MPoly<R>> mini;
    for (std::size_t i = 0; i < G.size(); ++i) {
        auto lm = lead_term(G[i]).first;
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            auto om = lead_term(G[j]).first;
            if (divides(om, lm) && (om != lm || j < i)) redundant = true;
        }
        if (!redundant) mini.push_back(G[i]);
    }
    // inter-reduce tails
    std::vector<MPoly<R>> out;
    for (std::size_t i = 0; i < mini.size(); ++i) {
        std::vector<MPoly<R>> others;
        for (std::size_t j = 0; j < mini.size(); ++j)
            if (j != i) others.push_back(mini[j]);
        auto r = normal_form(F, mini[i], others);
        if (!r.is_zero()) out.push_back(make_monic(F, std::move(r)));
    }
    std::sort(out.begin(), out.end(), [](const MPoly<R>& a, const MPoly<R>& b) {
        auto la = lead_term(a).first, lb = lead_term(b).first;
        int da = total_degree(la), db = total_degree(lb);
        if (da != db) return da < db;
        return drl_less_same_degree(lb, la);
    });
    return out;
}

// standard monomials of a zero-dimensional ideal; nullopt if not zero-dimensional
template <class R>
std::optional<std::vector<Mono>> quotient_basis(const std::vector<MPoly<R>>& G, int n) {
    std::vector<Mono> lts;
    for (const auto& g : G) lts.push_back(lead_term(g).first);
    // zero-dimensional iff every variable has a pure power among the leads
    for (int i = 0; i < n; ++i) {
        bool pure = false;
        for (const auto& m : lts) {
            bool ok = m[i] > 0;
            for (int j = 0; j < n && ok; ++j)
                if (j != i && m[j] != 0) ok = false;
            if (ok) { pure = true; break; }
        }
        if (!pure) return std::nullopt;
    }
    auto standard = [&](const Mono& m) {
        for (const auto& l : lts)
            if (divides(l, m)) return false;
        return true;
    };
    std::set<Mono, TableLess> seen;
    std::deque<Mono> queue;
    Mono one = mono_one(n);
    if (standard(one)) {
        seen.insert(one);
        queue.push_back(one);
    }
    while (!queue.empty()) {
        Mono m = queue.front();
        queue.pop_front();
        if (static_cast<long>(seen.size()) > budget()) throw BudgetError("quotient basis too large");
        for (int i = 0; i < n; ++i) {
            Mono m2 = mono_mul(m, mono_var(n, i));
            if (standard(m2) && seen.insert(m2).second) queue.push_back(m2);
        }
    }
    return std::vector<Mono>(seen.begin(), seen.end());
}

// matrix of multiplication by x_var on S/I in the standard-monomial basis
template <class R>
DenseMat<R> multiplication_matrix(const R& F, const std::vector<MPoly<R>>& G,
                                  const std::vector<Mono>& qb, int var) {
    int n = static_cast<int>(qb.empty() ? 0 : qb[0].size());
    int d = static_cast<int>(qb.size());
    std::map<Mono, int, TableLess> pos;
    for (int i = 0; i < d; ++i) pos[qb[i]] = i;
    DenseMat<R> M(d, std::vector<typename R::Elem>(d, F.zero()));
    for (int j = 0; j < d; ++j) {
        auto nf = normal_form(F, mono_poly<R>(n, mono_mul(qb[j], mono_var(n, var)), F.one()), G);
        for (const auto& [m, c] : nf.terms) M[pos.at(m)][j] = c;
    }
    return M;
}

// ---- univariate polynomials (dense, low degree first) ----

template <class R>
struct UniPoly {
    std::vector<typename R::Elem> c;

    void trim(const R& F) {
        while (!c.empty() && F.is_zero(c.back())) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
};

template <class R>
UniPoly<R> uni_from(const R& F, std::vector<typename R::Elem> v) {
    UniPoly<R> p{std::move(v)};
    p.trim(F);
    return p;
}

template <class R>
UniPoly<R> uni_sub(const R& F, const UniPoly<R>& a, const UniPoly<R>& b) {
    UniPoly<R> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = F.sub(r.c[i], b.c[i]);
    r.trim(F);
    return r;
}

template <class R>
UniPoly<R> uni_mul(const R& F, const UniPoly<R>& a, const UniPoly<R>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly<R> r;
    r.c.assign(a.c.size() + b.c.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    r.trim(F);
    return r;
}

template <class R>
std::pair<UniPoly<R>, UniPoly<R>> uni_divmod(const R& F, UniPoly<R> a, const UniPoly<R>& b) {
    if (b.is_zero()) throw PreconditionError("division by zero polynomial");
    UniPoly<R> q;
    if (a.deg() >= b.deg()) q.c.assign(a.deg() - b.deg() + 1, F.zero());
    auto binv = F.inv(b.c.back());
    while (!a.is_zero() && a.deg() >= b.deg()) {
        int k = a.deg() - b.deg();
        auto f = F.mul(a.c.back(), binv);
        q.c[k] = f;
        for (int i = 0; i <= b.deg(); ++i) a.c[k + i] = F.sub(a.c[k + i], F.mul(f, b.c[i]));
        a.trim(F);
    }
    q.trim(F);
    return {q, a};
}

template <class R>
UniPoly<R> uni_monic(const R& F, UniPoly<R> a) {
    if (a.is_zero()) return a;
    auto inv = F.inv(a.c.back());
    for (auto& x : a.c) x = F.mul(x, inv);
    return a;
}

template <class R>
UniPoly<R> uni_gcd(const R& F, UniPoly<R> a, UniPoly<R> b) {
    while (!b.is_zero()) {
        auto r = uni_divmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(F, std::move(a));
}

template <class R>
UniPoly<R> uni_mulmod(const R& F, const UniPoly<R>& a, const UniPoly<R>& b, const UniPoly<R>& m) {
    return uni_divmod(F, uni_mul(F, a, b), m).second;
}

template <class R>
UniPoly<R> uni_powmod(const R& F, UniPoly<R> base, mpz_class e, const UniPoly<R>& m) {
    UniPoly<R> r = uni_from(F, {F.one()});
    base = uni_divmod(F, base, m).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = uni_mulmod(F, r, base, m);
        base = uni_mulmod(F, base, base, m);
        e >>= 1;
    }
    return r;
}

template <class R>
typename R::Elem uni_eval(const R& F, const UniPoly<R>& p, const typename R::Elem& x) {
    auto r = F.zero();
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) r = F.add(F.mul(r, x), *it);
    return r;
}

// minimal polynomial of a dense matrix: lcm of the Krylov annihilators of the
// standard basis vectors
template <class R>
UniPoly<R> matrix_minpoly(const R& F, const DenseMat<R>& M) {
    int d = static_cast<int>(M.size());
    if (d == 0) return uni_from(F, {F.one()});
    UniPoly<R> m = uni_from(F, {F.one()});
    for (int b = 0; b < d; ++b) {
        Echelon<R> ech(F, 2 * d + 2);
        std::vector<typename R::Elem> v(d, F.zero());
        v[b] = F.one();
        UniPoly<R> ann;
        for (int k = 0; k <= d; ++k) {
            std::vector<typename R::Elem> row(2 * d + 2, F.zero());
            for (int i = 0; i < d; ++i) row[i] = v[i];
            row[d + k] = F.one();
            int ri = ech.insert(row);
            if (ri >= 0 && ech.rows()[ri].pivot() >= d) {
                std::vector<typename R::Elem> cs(k + 1, F.zero());
                for (const auto& [col, a] : ech.rows()[ri].ent) cs[col - d] = a;
                ann = uni_from(F, std::move(cs));
                break;
            }
            v = dense_apply(F, M, v);
        }
        if (ann.is_zero()) throw Error("Krylov annihilator not found");
        // m = lcm(m, ann)
        auto g = uni_gcd(F, m, ann);
        m = uni_divmod(F, uni_mul(F, m, ann), g).first;
    }
    return uni_monic(F, std::move(m));
}

// ---- root finding ----

struct RootResult {
    bool complete = true; // false: some factor could not be split over the field
};

// roots in F_p of a squarefree-reduced polynomial, with multiplicities read off
// the original; equal-degree splitting down to linear factors
inline RootResult uni_roots(const GFp& F, const UniPoly<GFp>& m,
                            std::vector<std::pair<GFp::Elem, int>>& out, Rng& rng) {
    RootResult res;
    if (m.deg() <= 0) return res;
    std::size_t base = out.size();
    // product of the distinct linear factors: gcd(T^p - T, m)
    UniPoly<GFp> T = uni_from(F, {F.zero(), F.one()});
    auto tp = uni_powmod(F, T, mpz_class(static_cast<unsigned long>(F.p)), m);
    auto lin = uni_gcd(F, m, uni_sub(F, tp, T)); // product of the distinct linear factors
    std::vector<UniPoly<GFp>> stack;
    if (lin.deg() >= 1) stack.push_back(lin);
    mpz_class half = (mpz_class(static_cast<unsigned long>(F.p)) - 1) / 2;
    while (!stack.empty()) {
        auto h = stack.back();
        stack.pop_back();
        if (h.deg() == 1) {
            auto root = F.neg(F.mul(h.c[0], F.inv(h.c[1])));
            // multiplicity in the original m
            int mult = 0;
            UniPoly<GFp> q = m;
            UniPoly<GFp> linf = uni_from(F, {F.neg(root), F.one()});
            while (true) {
                auto [qq, r] = uni_divmod(F, q, linf);
                if (!r.is_zero()) break;
                ++mult;
                q = qq;
            }
            out.push_back({root, mult});
            continue;
        }
        // random split
        for (int tries = 0; tries < 64; ++tries) {
            UniPoly<GFp> shift = uni_from(F, {F.from_int(static_cast<long>(rng.next() % F.p)), F.one()});
            auto w = uni_powmod(F, shift, half, h);
            w = uni_sub(F, w, uni_from(F, {F.one()}));
            auto d = uni_gcd(F, w, h);
            if (d.deg() >= 1 && d.deg() < h.deg()) {
                stack.push_back(d);
                stack.push_back(uni_divmod(F, h, d).first);
                break;
            }
            if (tries == 63) throw Error("equal-degree splitting failed to converge");
        }
    }
    // complete iff the linear factors (with multiplicity) exhaust m
    long total = 0;
    for (std::size_t i = base; i < out.size(); ++i) total += out[i].second;
    if (total < m.deg()) res.complete = false;
    return res;
}

// rational roots by bounded divisor search on the integer-cleared polynomial
inline RootResult uni_roots(const QQ& F, const UniPoly<QQ>& m,
                            std::vector<std::pair<QQ::Elem, int>>& out, Rng&) {
    RootResult res;
    if (m.deg() <= 0) return res;
    // clear denominators
    mpz_class L = 1;
    for (const auto& c : m.c) L = L / gcd(L, c.get_den()) * c.get_den();
    std::vector<mpz_class> z;
    for (const auto& c : m.c) z.push_back(mpz_class(c * L));
    UniPoly<QQ> q = m;
    int lead0 = 0;
    while (q.deg() >= 1 && F.is_zero(q.c[0])) {
        q = uni_divmod(F, q, uni_from(F, {F.zero(), F.one()})).first;
        ++lead0;
    }
    if (lead0 > 0) out.push_back({F.zero(), lead0});
    if (q.deg() <= 0) return res;
    mpz_class a0 = 0, al = 0;
    {
        mpz_class LL = 1;
        for (const auto& c : q.c) LL = LL / gcd(LL, c.get_den()) * c.get_den();
        a0 = mpz_class(q.c[0] * LL);
        al = mpz_class(q.c.back() * LL);
    }
    auto divisors = [&](mpz_class v, bool& full) {
        std::vector<mpz_class> ds;
        v = abs(v);
        full = true;
        mpz_class d = 1;
        long tested = 0;
        for (; d * d <= v; ++d) {
            if (++tested > 2000000) { full = false; break; }
            if (v % d == 0) {
                ds.push_back(d);
                ds.push_back(v / d);
            }
        }
        return ds;
    };
    bool fa = true, fb = true;
    auto num = divisors(a0, fa);
    auto den = divisors(al, fb);
    if (!fa || !fb) res.complete = false;
    std::set<mpq_class> tried;
    UniPoly<QQ> rem = q;
    for (const auto& p : num)
        for (const auto& d : den)
            for (int sgn : {1, -1}) {
                mpq_class cand(sgn * p, d);
                cand.canonicalize();
                if (!tried.insert(cand).second) continue;
                int mult = 0;
                while (rem.deg() >= 1 && F.is_zero(uni_eval(F, rem, cand))) {
                    rem = uni_divmod(F, rem, uni_from(F, {F.neg(cand), F.one()})).first;
                    ++mult;
                }
                if (mult > 0) out.push_back({cand, mult});
            }
    if (rem.deg() > 0 && res.complete) {
        // what remains has no rational roots: irrational or complex points
        res.complete = false;
    }
    return res;
}

// ---- support of a zero-dimensional quotient ----

template <class R>
struct SupportPoint {
    std::vector<typename R::Elem> point;
    long local_length = 0;
};

template <class R>
struct SupportResult {
    std::vector<SupportPoint<R>> points;
    long unresolved_length = 0; // lumped length of factors that did not split
    bool complete = true;
    long total_length = 0;
};

inline bool elem_less(const GFp&, const GFp::Elem& a, const GFp::Elem& b) { return a < b; }
inline bool elem_less(const QQ&, const QQ::Elem& a, const QQ::Elem& b) { return a < b; }

// simultaneous generalized-eigenspace splitting of the commuting multiplication
// operators, one coordinate at a time; unsplit factors yield a partial verdict
template <class R>
SupportResult<R> support_and_local_lengths(const R& F, const std::vector<MPoly<R>>& G, int n,
                                           Rng& rng) {
    auto qb = quotient_basis(G, n);
    if (!qb) throw PreconditionError("support of a positive-dimensional ideal");
    int dim = static_cast<int>(qb->size());
    SupportResult<R> res;
    res.total_length = dim;
    if (dim == 0) return res;
    std::vector<DenseMat<R>> M(n);
    for (int i = 0; i < n; ++i) M[i] = multiplication_matrix(F, G, *qb, i);

    struct Comp {
        std::vector<std::vector<typename R::Elem>> W; // basis vectors in ambient coords
        std::vector<typename R::Elem> point;
    };
    std::vector<Comp> comps;
    {
        Comp c0;
        for (int i = 0; i < dim; ++i) {
            std::vector<typename R::Elem> e(dim, F.zero());
            e[i] = F.one();
            c0.W.push_back(std::move(e));
        }
        comps.push_back(std::move(c0));
    }
    for (int var = 0; var < n; ++var) {
        std::vector<Comp> next;
        for (auto& c : comps) {
            int k = static_cast<int>(c.W.size());
            // restricted matrix B with M_var * W = W * B
            Echelon<R> tr(F, dim + k);
            for (int j = 0; j < k; ++j) {
                std::vector<typename R::Elem> row(dim + k, F.zero());
                for (int i = 0; i < dim; ++i) row[i] = c.W[j][i];
                row[dim + j] = F.one();
                tr.insert(row);
            }
            DenseMat<R> B(k, std::vector<typename R::Elem>(k, F.zero()));
            for (int j = 0; j < k; ++j) {
                auto u = dense_apply(F, M[var], c.W[j]);
                std::vector<typename R::Elem> row(dim + k, F.zero());
                for (int i = 0; i < dim; ++i) row[i] = u[i];
                tr.reduce(row);
                for (int i = 0; i < dim; ++i)
                    if (!F.is_zero(row[i])) throw Error("component not invariant");
                for (int l = 0; l < k; ++l) B[l][j] = F.neg(row[dim + l]);
            }
            auto mp = matrix_minpoly(F, B);
            std::vector<std::pair<typename R::Elem, int>> roots;
            auto rr = uni_roots(F, mp, roots, rng);
            std::sort(roots.begin(), roots.end(),
                      [&](const auto& a, const auto& b) { return elem_less(F, a.first, b.first); });
            long covered = 0;
            for (const auto& [lam, mult] : roots) {
                // generalized eigenspace: kernel of (B - lam I)^mult
                DenseMat<R> P = dense_identity(F, k);
                DenseMat<R> Bl = B;
                for (int i = 0; i < k; ++i) Bl[i][i] = F.sub(Bl[i][i], lam);
                for (int e = 0; e < mult; ++e) P = dense_mul(F, Bl, P);
                auto ker = dense_kernel(F, P);
                Comp nc;
                nc.point = c.point;
                nc.point.push_back(lam);
                for (const auto& kv : ker) {
                    std::vector<typename R::Elem> w(dim, F.zero());
                    for (int j = 0; j < k; ++j)
                        for (int i = 0; i < dim; ++i)
                            w[i] = F.add(w[i], F.mul(kv[j], c.W[j][i]));
                    nc.W.push_back(std::move(w));
                }
                covered += static_cast<long>(nc.W.size());
                next.push_back(std::move(nc));
            }
            if (!rr.complete || covered < k) {
                res.complete = false;
                res.unresolved_length += k - covered;
            }
        }
        comps = std::move(next);
    }
    for (auto& c : comps) {
        SupportPoint<R> pt;
        pt.point = c.point;
        pt.local_length = static_cast<long>(c.W.size());
        res.points.push_back(std::move(pt));
    }
    std::sort(res.points.begin(), res.points.end(), [&](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.point.size(); ++i) {
            if (!F.eq(a.point[i], b.point[i])) return elem_less(F, a.point[i], b.point[i]);
        }
        return false;
    });
    return res;
}

} // namespace apolar
