#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "monomial.hpp"
#include "rings.hpp"

namespace apolar {

// Sparse multivariate polynomial over a field policy R. Used both for elements
// of P = k[x_1..x_n] and for truncated operators in S = k[[a_1..a_n]]; the role
// is decided by the function applied, truncation is an argument where relevant.
template <class R>
struct MPoly {
    using Elem = typename R::Elem;

    int n = 0;
    std::map<Mono, Elem, TableLess> terms;

    MPoly() = default;
    explicit MPoly(int nvars) : n(nvars) {}

    bool is_zero() const { return terms.empty(); }

    // -1 for the zero polynomial
    int degree() const { return terms.empty() ? -1 : total_degree(terms.rbegin()->first); }
    // order = minimal total degree of a term; degree of ambient+1 sentinel unused, zero poly -> -1
    int order() const { return terms.empty() ? -1 : total_degree(terms.begin()->first); }

    bool is_homogeneous() const {
        return terms.empty() || total_degree(terms.begin()->first) == total_degree(terms.rbegin()->first);
    }
};

template <class R>
void check_compatible(const MPoly<R>& a, const MPoly<R>& b) {
    if (a.n != b.n) throw MismatchError("variable count mismatch");
}

template <class R>
void poly_add_term(const R& F, MPoly<R>& p, const Mono& m, const typename R::Elem& c) {
    if (F.is_zero(c)) return;
    auto it = p.terms.find(m);
    if (it == p.terms.end()) {
        p.terms.emplace(m, c);
    } else {
        it->second = F.add(it->second, c);
        if (F.is_zero(it->second)) p.terms.erase(it);
    }
}

template <class R>
typename R::Elem poly_coeff(const R& F, const MPoly<R>& p, const Mono& m) {
    auto it = p.terms.find(m);
    return it == p.terms.end() ? F.zero() : it->second;
}

template <class R>
typename R::Elem constant_term(const R& F, const MPoly<R>& p) {
    return poly_coeff(F, p, mono_one(p.n));
}

template <class R>
MPoly<R> poly_add(const R& F, const MPoly<R>& a, const MPoly<R>& b) {
    check_compatible(a, b);
    MPoly<R> r = a;
    for (const auto& [m, c] : b.terms) poly_add_term(F, r, m, c);
    return r;
}

template <class R>
MPoly<R> poly_neg(const R& F, const MPoly<R>& a) {
    MPoly<R> r(a.n);
    for (const auto& [m, c] : a.terms) r.terms.emplace(m, F.neg(c));
    return r;
}

template <class R>
MPoly<R> poly_sub(const R& F, const MPoly<R>& a, const MPoly<R>& b) {
    return poly_add(F, a, poly_neg(F, b));
}

template <class R>
MPoly<R> poly_scale(const R& F, const MPoly<R>& a, const typename R::Elem& c) {
    MPoly<R> r(a.n);
    if (F.is_zero(c)) return r;
    for (const auto& [m, cc] : a.terms) r.terms.emplace(m, F.mul(cc, c));
    return r;
}

// product; terms of degree >= trunc are dropped (trunc < 0 means no truncation)
template <class R>
MPoly<R> poly_mul(const R& F, const MPoly<R>& a, const MPoly<R>& b, int trunc = -1) {
    check_compatible(a, b);
    MPoly<R> r(a.n);
    for (const auto& [ma, ca] : a.terms) {
        int da = total_degree(ma);
        for (const auto& [mb, cb] : b.terms) {
            if (trunc >= 0 && da + total_degree(mb) >= trunc) continue;
            poly_add_term(F, r, mono_mul(ma, mb), F.mul(ca, cb));
        }
    }
    return r;
}

template <class R>
MPoly<R> poly_truncate(const R&, const MPoly<R>& a, int trunc) {
    MPoly<R> r(a.n);
    for (const auto& [m, c] : a.terms)
        if (total_degree(m) < trunc) r.terms.emplace(m, c);
    return r;
}

// degree-d homogeneous component
template <class R>
MPoly<R> poly_component(const R&, const MPoly<R>& a, int d) {
    MPoly<R> r(a.n);
    for (const auto& [m, c] : a.terms)
        if (total_degree(m) == d) r.terms.emplace(m, c);
    return r;
}

template <class R>
MPoly<R> poly_component_range(const R&, const MPoly<R>& a, int dmin, int dmax) {
    MPoly<R> r(a.n);
    for (const auto& [m, c] : a.terms) {
        int d = total_degree(m);
        if (d >= dmin && d <= dmax) r.terms.emplace(m, c);
    }
    return r;
}

template <class R>
bool poly_eq(const R& F, const MPoly<R>& a, const MPoly<R>& b) {
    if (a.n != b.n || a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin();
    auto ib = b.terms.begin();
    for (; ia != a.terms.end(); ++ia, ++ib)
        if (ia->first != ib->first || !F.eq(ia->second, ib->second)) return false;
    return true;
}

// contraction: a^b -| x^a = x^{a-b} when b <= a componentwise, else 0
template <class R>
MPoly<R> contract(const R& F, const MPoly<R>& sigma, const MPoly<R>& f) {
    check_compatible(sigma, f);
    MPoly<R> r(f.n);
    for (const auto& [ms, cs] : sigma.terms) {
        for (const auto& [mf, cf] : f.terms) {
            if (!divides(ms, mf)) continue;
            poly_add_term(F, r, mono_div(mf, ms), F.mul(cs, cf));
        }
    }
    return r;
}

template <class R>
MPoly<R> mono_poly(int n, const Mono& m, const typename R::Elem& c) {
    MPoly<R> r(n);
    r.terms.emplace(m, c);
    return r;
}

template <class R>
MPoly<R> var_poly(const R& F, int n, int i, int e = 1) {
    return mono_poly<R>(n, mono_var(n, i, e), F.one());
}

// extend to n2 >= n variables (new variables appended)
template <class R>
MPoly<R> poly_extend(const R&, const MPoly<R>& a, int n2) {
    MPoly<R> r(n2);
    for (const auto& [m, c] : a.terms) {
        Mono mm = m;
        mm.resize(n2, 0);
        r.terms.emplace(mm, c);
    }
    return r;
}

// drop trailing variables; requires they do not occur
template <class R>
MPoly<R> poly_restrict(const R&, const MPoly<R>& a, int n2) {
    MPoly<R> r(n2);
    for (const auto& [m, c] : a.terms) {
        for (int i = n2; i < a.n; ++i)
            if (m[i] != 0) throw PreconditionError("polynomial involves a variable being dropped");
        Mono mm(m.begin(), m.begin() + n2);
        r.terms.emplace(mm, c);
    }
    return r;
}

// substitute x_j -> sum_k A[j][k] x_k (plain linear change of coordinates on P)
template <class R>
MPoly<R> poly_linear_change(const R& F, const MPoly<R>& a,
                            const std::vector<std::vector<typename R::Elem>>& A) {
    int n = a.n;
    MPoly<R> r(n);
    std::vector<MPoly<R>> images(n);
    for (int j = 0; j < n; ++j) {
        images[j] = MPoly<R>(n);
        for (int k = 0; k < n; ++k)
            poly_add_term(F, images[j], mono_var(n, k), A[j][k]);
    }
    for (const auto& [m, c] : a.terms) {
        MPoly<R> t = mono_poly<R>(n, mono_one(n), c);
        for (int j = 0; j < n; ++j)
            for (int e = 0; e < m[j]; ++e) t = poly_mul(F, t, images[j]);
        r = poly_add(F, r, t);
    }
    return r;
}

template <class R>
std::string poly_to_string(const R& F, const MPoly<R>& p, const std::string& var = "x") {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms) {
        if (!first) os << " + ";
        first = false;
        os << F.to_string(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            os << "*" << var << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

} // namespace apolar
