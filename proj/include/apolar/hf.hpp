#pragma once

#include <functional>
#include <vector>

#include "invariants.hpp"

namespace apolar {

struct HilbertProfile {
    std::vector<long> H;
    int s = 0;
    std::vector<std::vector<long>> delta; // rows Delta_0 .. Delta_{s-2}
    std::vector<long> e;                  // e(a) = sum_{t<=a} Delta_t(1), a = 0..s-2

    long e_at(int a) const {
        if (a < 0) return 0;
        if (e.empty()) return H.size() > 1 ? H[1] : 0; // s <= 1: all rows zero beyond Delta_0
        if (a >= static_cast<int>(e.size())) return H.size() > 1 ? H[1] : 0;
        return e[a];
    }
};

inline long long binom(long long a, long long b) {
    if (b < 0 || a < b) return 0;
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

// Macaulay's m^<i> via the unique strictly decreasing i-binomial expansion
inline long macaulay_bound(long m, int i) {
    if (m < 0 || i < 1) throw PreconditionError("macaulay_bound: need m >= 0, i >= 1");
    long long rem = m;
    long long out = 0;
    long long ub = -1; // strictly decreasing tops
    for (int j = i; j >= 1 && rem > 0; --j) {
        long long a = j;
        while (binom(a + 1, j) <= rem && (ub < 0 || a + 1 < ub)) ++a;
        ub = a;
        rem -= binom(a, j);
        out += binom(a + 1, j + 1);
    }
    return static_cast<long>(out);
}

inline bool is_o_sequence(const std::vector<long>& H) {
    if (H.empty() || H[0] != 1) return false;
    for (long h : H)
        if (h < 0) return false;
    for (std::size_t m = 1; m + 1 < H.size(); ++m)
        if (H[m + 1] > macaulay_bound(H[m], static_cast<int>(m))) return false;
    return true;
}

namespace detail {

// subspaces of a finite-dimensional algebra as dense vector lists
template <class R>
struct Subspace {
    std::vector<std::vector<typename R::Elem>> vecs;
};

template <class R>
int subspace_dim(const R& F, int dim, const Subspace<R>& X) {
    Echelon<R> e(F, dim);
    for (auto v : X.vecs) e.insert(v);
    return e.rank();
}

template <class R>
Subspace<R> subspace_sum(const Subspace<R>& X, const Subspace<R>& Y) {
    Subspace<R> r = X;
    r.vecs.insert(r.vecs.end(), Y.vecs.begin(), Y.vecs.end());
    return r;
}

template <class R>
Subspace<R> subspace_intersect(const R& F, int dim, const Subspace<R>& X, const Subspace<R>& Y) {
    Echelon<R> z(F, 2 * dim);
    Subspace<R> r;
    auto feed = [&](const std::vector<typename R::Elem>& u, bool both) {
        std::vector<typename R::Elem> v(2 * dim, F.zero());
        for (int i = 0; i < dim; ++i) {
            v[i] = u[i];
            if (both) v[dim + i] = u[i];
        }
        int ri = z.insert(v);
        if (ri >= 0 && z.rows()[ri].pivot() >= dim) {
            std::vector<typename R::Elem> w(dim, F.zero());
            for (const auto& [c, a] : z.rows()[ri].ent) w[c - dim] = a;
            r.vecs.push_back(std::move(w));
        }
    };
    for (const auto& u : X.vecs) feed(u, true);
    for (const auto& u : Y.vecs) feed(u, false);
    return r;
}

} // namespace detail

// symmetric decomposition of H_{Apolar(f)} via the annihilator
// filtration: Delta_a(t) compares (0 : m^{s+1-a-t}) with (0 : m^{s-a-t}) inside
// m^t / m^{t+1}. Conventions: m^e = A for e <= 0, (0 : m^e) = A for e >= s+1,
// (0 : A) = 0.
template <class R>
HilbertProfile symmetric_decomposition(const R& F, const MPoly<R>& f) {
    if (f.is_zero() || f.degree() < 1)
        throw PreconditionError("symmetric_decomposition needs deg f >= 1");
    auto rep = hilbert_function(F, f);
    int s = rep.socle_degree;
    int n = f.n;
    QuotientAlgebra<R> A(F, apolar_ideal(F, f, s + 2));
    int dim = A.dim;

    // images of m^t in A, t = 0 .. s+2 (m^{s+1} = 0)
    std::vector<detail::Subspace<R>> mpow(s + 3);
    for (int t = s + 2; t >= 0; --t) {
        if (t < s + 2) mpow[t] = mpow[t + 1];
        if (t > s + 1) continue;
        auto tab = A.I.tab;
        for (int i = tab->degree_begin(t); i < tab->degree_end(t); ++i)
            mpow[t].vecs.push_back(A.reduce_index(F, i));
    }

    // ann[j] = (0 :_A m^j), kernel of all multiplications by degree-j monomials
    auto tab = A.I.tab;
    std::vector<detail::Subspace<R>> ann(s + 2);
    for (int j = 1; j <= s + 1; ++j) {
        int nmu = tab->degree_end(j) - tab->degree_begin(j);
        DenseMat<R> M(static_cast<std::size_t>(nmu) * dim,
                      std::vector<typename R::Elem>(dim, F.zero()));
        for (int b = 0; b < dim; ++b) {
            std::vector<typename R::Elem> eb(dim, F.zero());
            eb[b] = F.one();
            int roff = 0;
            for (int mi = tab->degree_begin(j); mi < tab->degree_end(j); ++mi, ++roff) {
                auto img = A.mul_mono(F, eb, tab->mono(mi));
                for (int r = 0; r < dim; ++r) M[static_cast<std::size_t>(roff) * dim + r][b] = img[r];
            }
        }
        ann[j].vecs = dense_kernel(F, M);
    }
    auto annihilator = [&](int j) -> const detail::Subspace<R>& {
        static detail::Subspace<R> empty;
        if (j <= 0) return empty; // (0 : A) = 0
        if (j >= s + 1) return ann[s + 1]; // m^{s+1} = 0, full algebra
        return ann[j];
    };

    HilbertProfile prof;
    prof.H = rep.H;
    prof.s = s;
    auto layer_dim = [&](int j, int t) {
        // dim of ((0:m^j) cap m^t + m^{t+1})
        auto X = detail::subspace_intersect(F, dim, annihilator(j), mpow[std::min(t, s + 2)]);
        return detail::subspace_dim(F, dim, detail::subspace_sum(X, mpow[std::min(t + 1, s + 2)]));
    };
    for (int a = 0; a <= s; ++a) {
        std::vector<long> row(s + 1 - a, 0);
        for (int t = 0; t <= s - a; ++t)
            row[t] = layer_dim(s + 1 - a - t, t) - layer_dim(s - a - t, t);
        if (a <= s - 2) prof.delta.push_back(row);
        else {
            for (long v : row)
                if (v != 0) throw Error("decomposition rows beyond s-2 must vanish");
        }
    }
    long acc = 0;
    for (const auto& row : prof.delta) {
        acc += row.size() > 1 ? row[1] : 0;
        prof.e.push_back(acc);
    }
    // structural invariants, validated on every call
    for (std::size_t a = 0; a < prof.delta.size(); ++a) {
        const auto& row = prof.delta[a];
        for (std::size_t t = 0; t < row.size(); ++t) {
            if (row[t] < 0) throw Error("negative decomposition entry");
            if (row[t] != row[row.size() - 1 - t]) throw Error("decomposition row asymmetry");
        }
        if (a > 0 && row[0] != 0) throw Error("Delta_a(0) must vanish for a > 0");
    }
    for (int t = 0; t <= s; ++t) {
        long sum = 0;
        for (const auto& row : prof.delta)
            if (t < static_cast<int>(row.size())) sum += row[t];
        if (sum != prof.H[t]) throw Error("decomposition rows do not sum to H");
    }
    (void)n;
    return prof;
}

// all candidate decompositions of H: symmetric non-negative rows summing to H,
// Delta_0 an O-sequence, every partial sum an O-sequence (necessary conditions)
inline std::vector<std::vector<std::vector<long>>> decomposition_search(const std::vector<long>& H) {
    std::vector<std::vector<std::vector<long>>> out;
    if (!is_o_sequence(H) || H.back() != 1) return out;
    int s = static_cast<int>(H.size()) - 1;
    if (s < 1) return out;
    int nrows = std::max(0, s - 1); // rows a = 0 .. s-2
    std::vector<std::vector<long>> rows(nrows);
    std::vector<long> remaining = H;

    // enumerate rows a = s-2 down to 0; each row determined by its free half
    std::function<void(int)> rec = [&](int a) {
        if (a < 0) {
            for (long v : remaining)
                if (v != 0) return;
            // every partial sum (top-down: sum_{i<=b} Delta_i) must be an O-sequence
            std::vector<long> partial(s + 1, 0);
            for (int b = 0; b < nrows; ++b) {
                for (std::size_t t = 0; t < rows[b].size(); ++t) partial[t] += rows[b][t];
                std::vector<long> trimmed = partial;
                while (trimmed.size() > 1 && trimmed.back() == 0) trimmed.pop_back();
                if (!is_o_sequence(trimmed)) return;
            }
            out.push_back(rows);
            return;
        }
        int len = s + 1 - a;
        std::vector<long> row(len, 0);
        int half = (len - 1) / 2; // free positions; the rest is mirrored
        // free positions: 1..half for a>0 (position 0 fixed 0); 0..half for a=0
        int lo = a == 0 ? 0 : 1;
        std::function<void(int)> fill = [&](int pos) {
            if (pos > half) {
                // mirror and test feasibility against remaining budget
                for (int t = 0; t < len; ++t) row[t] = row[std::min(t, len - 1 - t)];
                if (a == 0) {
                    bool exact = true;
                    for (int t = 0; t < len; ++t)
                        if (row[t] != remaining[t]) { exact = false; break; }
                    if (!exact || !is_o_sequence(row)) return;
                } else {
                    for (int t = 0; t < len; ++t)
                        if (row[t] > remaining[t]) return;
                }
                for (int t = 0; t < len; ++t) remaining[t] -= row[t];
                rows[a] = row;
                rec(a - 1);
                for (int t = 0; t < len; ++t) remaining[t] += row[t];
                return;
            }
            long cap = std::min(remaining[pos], remaining[len - 1 - pos]);
            if (a == 0 && pos == 0) cap = std::min(cap, 1L);
            long start = (a == 0 && pos == 0) ? 1 : 0;
            for (long v = start; v <= cap; ++v) {
                row[pos] = v;
                fill(pos + 1);
            }
            row[pos] = 0;
        };
        fill(lo);
    };
    rec(nrows - 1);
    return out;
}

// standard form: for all r > e(s-i), m^{i-1} alpha_r is inside Ann(f)
template <class R>
std::pair<bool, std::pair<int, int>> check_standard_form(const R& F, const MPoly<R>& f) {
    auto prof = symmetric_decomposition(F, f);
    int s = prof.s, n = f.n;
    auto tab = MonoTable::get(n, s + 1);
    for (int i = 1; i <= s; ++i) {
        long ebound = prof.e_at(s - i);
        for (int r = static_cast<int>(ebound); r < n; ++r) {
            // test (mu * alpha_{r+1}) -| f = 0 for all monomials mu of degree i-1
            for (int mi = tab->degree_begin(i - 1); mi < tab->degree_end(i - 1); ++mi) {
                Mono m = mono_mul(tab->mono(mi), mono_var(n, r));
                auto g = contract(F, mono_poly<R>(n, m, F.one()), f);
                if (!g.is_zero()) return {false, {r + 1, i}};
            }
        }
    }
    return {true, {0, 0}};
}

// Lemma twist: make alpha_i^{d_j - 1} alpha_j -| f vanish for all j != i
template <class R>
std::pair<MPoly<R>, Substitution<R>> top_degree_twist(const R& F, const MPoly<R>& f, int i) {
    int s = f.degree(), n = f.n;
    auto c0 = constant_term(F, contract(F, var_poly(F, n, i, s), f));
    if (F.is_zero(c0)) throw PreconditionError("top_degree_twist: alpha_i^s -| f = 0");
    MPoly<R> f1 = poly_scale(F, f, F.inv(c0));
    std::vector<MPoly<R>> images(n);
    for (int j = 0; j < n; ++j) images[j] = var_poly(F, n, j);
    int D = 2 * s + 2;
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        auto g = contract(F, poly_mul(F, var_poly(F, n, i), var_poly(F, n, j)), f1);
        if (g.is_zero()) continue;
        int dj = g.degree() + 2;
        auto lam = constant_term(
            F, contract(F, mono_poly<R>(n, mono_mul(mono_var(n, i, dj - 1), mono_var(n, j)), F.one()), f1));
        if (F.is_zero(lam)) continue;
        poly_add_term(F, images[j], mono_var(n, i, s - dj + 1), F.neg(lam));
    }
    auto phi = make_substitution(F, n, D, std::move(images));
    auto fhat = dual_substitution(F, invert_substitution(F, phi), f1, s);
    // postconditions are part of the contract
    if (!F.eq(constant_term(F, contract(F, var_poly(F, n, i, s), fhat)), F.one()))
        throw Error("top_degree_twist: normalization lost");
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        auto g = contract(F, poly_mul(F, var_poly(F, n, i), var_poly(F, n, j)), f1);
        if (g.is_zero()) continue;
        int dj = g.degree() + 2;
        auto chk = constant_term(
            F,
            contract(F, mono_poly<R>(n, mono_mul(mono_var(n, i, dj - 1), mono_var(n, j)), F.one()), fhat));
        if (!F.is_zero(chk)) throw Error("top_degree_twist: twist postcondition failed");
    }
    return {fhat, phi};
}

// replayable certificate for split_off_squares
template <class R>
struct SquareCertificate {
    struct Step {
        enum Kind { StripConstant, AddDerivative, LinearChange } kind;
        MPoly<R> sigma;  // AddDerivative: f -> f + sigma -| f (unit 1+sigma)
        DenseMat<R> A;   // LinearChange: x_j -> sum_k A[j][k] x_k
    };
    std::vector<Step> steps;

    MPoly<R> replay(const R& F, MPoly<R> f) const {
        for (const auto& st : steps) {
            switch (st.kind) {
                case Step::StripConstant:
                    poly_add_term(F, f, mono_one(f.n), F.neg(constant_term(F, f)));
                    break;
                case Step::AddDerivative:
                    f = poly_add(F, f, contract(F, st.sigma, f));
                    break;
                case Step::LinearChange:
                    f = poly_linear_change(F, f, st.A);
                    break;
            }
        }
        return f;
    }
};

// f (standard form) -> g + x_{e+1}^2 + ... + x_{e+q}^2 with q = Delta_{s-2}(1)
// and the square variables absent from g; Apolar unchanged up to isomorphism.
template <class R>
std::tuple<MPoly<R>, int, SquareCertificate<R>> split_off_squares(const R& F, MPoly<R> f) {
    int s = f.degree(), n = f.n;
    if (s < 2) throw PreconditionError("split_off_squares needs deg f >= 2");
    auto sf = check_standard_form(F, f);
    if (!sf.first)
        throw PreconditionError("split_off_squares: input not in standard form; twist first");
    auto prof = symmetric_decomposition(F, f);
    long q = prof.delta.empty() ? 0 : (prof.delta.back().size() > 1 ? prof.delta.back()[1] : 0);
    SquareCertificate<R> cert;
    if (q == 0) return {f, 0, cert};
    long elow = prof.e_at(s - 3); // square variables are x_{elow+1} .. x_{elow+q}
    long ehigh = prof.e_at(s - 2);
    if (ehigh - elow != q) throw Error("square count disagrees with e-vector");

    auto strip_constant = [&]() {
        if (!F.is_zero(constant_term(F, f))) {
            poly_add_term(F, f, mono_one(n), F.neg(constant_term(F, f)));
            cert.steps.push_back({SquareCertificate<R>::Step::StripConstant, MPoly<R>(n), {}});
        }
    };
    strip_constant();
    // remove the linear component when it is a derivative of f_{>=2} (unit action)
    {
        MPoly<R> f1 = poly_component(F, f, 1);
        if (!f1.is_zero()) {
            MPoly<R> fhi = poly_component_range(F, f, 2, s);
            auto tab = MonoTable::get(n, s + 1);
            int N = tab->size();
            Echelon<R> ker(F, n + N);
            MPoly<R> sigma(n);
            bool found = false;
            for (int si = tab->degree_begin(1); si < N && !found; ++si) {
                auto g = contract(F, mono_poly<R>(n, tab->mono(si), F.one()), fhi);
                std::vector<typename R::Elem> v(n + N, F.zero());
                for (int j = 0; j < n; ++j) v[j] = poly_coeff(F, g, mono_var(n, j));
                v[n + si] = F.one();
                ker.insert(v);
                // try to express -f1 in the current span
                std::vector<typename R::Elem> w(n + N, F.zero());
                for (int j = 0; j < n; ++j) w[j] = F.neg(poly_coeff(F, f1, mono_var(n, j)));
                ker.reduce(w);
                bool ok = true;
                for (int j = 0; j < n; ++j)
                    if (!F.is_zero(w[j])) { ok = false; break; }
                if (ok) {
                    for (int k = 0; k < N; ++k)
                        if (!F.is_zero(w[k + n]))
                            poly_add_term(F, sigma, tab->mono(k), F.neg(w[k + n]));
                    found = true;
                }
            }
            if (found) {
                f = poly_add(F, fhi, contract(F, sigma, fhi));
                cert.steps.push_back({SquareCertificate<R>::Step::AddDerivative, sigma, {}});
                strip_constant();
                // the derivative may reintroduce lower terms of degree 1: repeat once
                if (!poly_component(F, f, 1).is_zero())
                    throw PreconditionError("split_off_squares: linear part is not removable");
            } else {
                throw PreconditionError("split_off_squares: linear part is not a derivative");
            }
        }
    }

    for (long k = ehigh; k > elow; --k) {
        int kv = static_cast<int>(k) - 1; // variable index
        auto coeff_sq = [&]() { return poly_coeff(F, f, mono_var(n, kv, 2)); };
        auto coupling = [&](int j) {
            return poly_coeff(F, f, mono_mul(mono_var(n, kv), mono_var(n, j)));
        };
        if (F.is_zero(coeff_sq())) {
            // mix in a coupled variable that does not occur in f_{>=3}
            int rfound = -1;
            for (int j = 0; j < n; ++j) {
                if (j == kv || F.is_zero(coupling(j))) continue;
                bool safe = true;
                for (const auto& [m, c] : f.terms)
                    if (total_degree(m) >= 3 && m[j] != 0) { safe = false; break; }
                if (safe) { rfound = j; break; }
            }
            if (rfound < 0)
                throw PreconditionError(
                    "split_off_squares: square variable couples only to variables of f_{>=3}");
            // x_r -> x_r + x_k creates the x_k^2 term
            auto A = dense_identity(F, n);
            A[rfound][kv] = F.one();
            f = poly_linear_change(F, f, A);
            cert.steps.push_back({SquareCertificate<R>::Step::LinearChange, MPoly<R>(n), A});
        }
        auto c = coeff_sq();
        if (F.is_zero(c)) throw Error("split_off_squares: could not realize the square term");
        // complete the square: x_k -> x_k - l/(2c) where l = sum_j coupling(j) x_j
        auto A = dense_identity(F, n);
        bool any = false;
        auto inv2c = F.inv(F.add(c, c));
        for (int j = 0; j < n; ++j) {
            if (j == kv) continue;
            auto mu = coupling(j);
            if (F.is_zero(mu)) continue;
            A[kv][j] = F.neg(F.mul(mu, inv2c));
            any = true;
        }
        if (any) {
            f = poly_linear_change(F, f, A);
            cert.steps.push_back({SquareCertificate<R>::Step::LinearChange, MPoly<R>(n), A});
        }
        // normalize the coefficient to 1 by scaling x_k
        c = coeff_sq();
        typename R::Elem root;
        if (!sqrt_in_field(F, F.inv(c), root))
            throw RootAvailabilityError("square coefficient is not a square in the base field");
        if (!F.eq(root, F.one())) {
            auto B = dense_identity(F, n);
            B[kv][kv] = root;
            f = poly_linear_change(F, f, B);
            cert.steps.push_back({SquareCertificate<R>::Step::LinearChange, MPoly<R>(n), B});
        }
        // sanity: x_k occurs only as x_k^2 now
        for (const auto& [m, cc] : f.terms) {
            if (m[kv] == 0) continue;
            if (m[kv] != 2 || total_degree(m) != 2)
                throw Error("split_off_squares: residual occurrence of a split variable");
        }
    }
    return {f, static_cast<int>(q), cert};
}

// rank of the contraction map S_a -> P_{s-a} at a homogeneous F
template <class R>
std::pair<int, DenseMat<R>> catalecticant_rank(const R& F, const MPoly<R>& G, int a) {
    if (G.is_zero() || !G.is_homogeneous()) throw PreconditionError("catalecticant needs homogeneous input");
    int s = G.degree(), n = G.n;
    if (a < 0 || a > s) throw PreconditionError("catalecticant: 0 <= a <= s required");
    auto tabA = MonoTable::get(n, a + 1);
    auto tabB = MonoTable::get(n, s - a + 1);
    int rows = tabA->degree_end(a) - tabA->degree_begin(a);
    int cols = tabB->degree_end(s - a) - tabB->degree_begin(s - a);
    DenseMat<R> M(rows, std::vector<typename R::Elem>(cols, F.zero()));
    Echelon<R> ech(F, cols);
    int r = 0;
    for (int i = tabA->degree_begin(a); i < tabA->degree_end(a); ++i, ++r) {
        auto g = contract(F, mono_poly<R>(n, tabA->mono(i), F.one()), G);
        for (const auto& [m, c] : g.terms) M[r][tabB->index(m) - tabB->degree_begin(s - a)] = c;
        auto v = M[r];
        ech.insert(v);
    }
    return {ech.rank(), M};
}

// set-theoretic test for the fourth secant of the Veronese: rank of the middle
// catalecticant; the equivalence is proven over the complex numbers, finite
// field verdicts are heuristic transfers (annotated by the CLI)
template <class R>
bool sigma4_membership(const R& F, const MPoly<R>& G) {
    if (G.degree() < 4) throw PreconditionError("sigma4_membership needs degree >= 4");
    return catalecticant_rank(F, G, G.degree() / 2).first <= 4;
}

// graded saturation test: sigma * m^{m-l} inside I forces sigma inside I, degreewise
template <class R>
bool is_m_saturated(const R& F, TruncatedIdeal<R>& I, int m) {
    I.ech.canonicalize();
    for (const auto& row : I.ech.rows()) {
        int d = -1;
        for (const auto& [i, a] : row.ent) {
            int di = I.tab->degree(i);
            if (d < 0) d = di;
            else if (d != di) throw PreconditionError("is_m_saturated needs a graded ideal");
        }
    }
    if (m >= I.D) throw TruncationError("is_m_saturated: m exceeds truncation");
    int N = I.tab->size();
    for (int l = 0; l <= m; ++l) {
        int lb = I.tab->degree_begin(l), le = I.tab->degree_end(l);
        int L = le - lb;
        int jb = I.tab->degree_begin(m - l), je = I.tab->degree_end(m - l);
        int K = je - jb;
        check_matrix_budget(static_cast<long>(K) * N + L);
        Echelon<R> ker(F, K * N + L);
        std::vector<std::vector<typename R::Elem>> candidates;
        for (int si = lb; si < le; ++si) {
            std::vector<typename R::Elem> v(static_cast<std::size_t>(K) * N + L, F.zero());
            for (int mj = jb; mj < je; ++mj) {
                Mono prod = mono_mul(I.tab->mono(si), I.tab->mono(mj));
                std::vector<typename R::Elem> img(N, F.zero());
                int idx = I.tab->index(prod);
                if (idx >= 0) {
                    img[idx] = F.one();
                    I.ech.reduce(img);
                }
                for (int t = 0; t < N; ++t) v[static_cast<std::size_t>(mj - jb) * N + t] = img[t];
            }
            v[static_cast<std::size_t>(K) * N + (si - lb)] = F.one();
            int r = ker.insert(v);
            if (r >= 0 && ker.rows()[r].pivot() >= K * N) {
                std::vector<typename R::Elem> w(N, F.zero());
                for (const auto& [col, a] : ker.rows()[r].ent) w[col - static_cast<long>(K) * N + lb] = a;
                candidates.push_back(std::move(w));
            }
        }
        for (auto& w : candidates)
            if (!I.ech.contains(w)) return false;
    }
    return true;
}

} // namespace apolar
