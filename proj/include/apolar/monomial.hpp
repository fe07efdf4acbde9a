#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "errors.hpp"

namespace apolar {

// Monomials are bare exponent vectors; all ordering logic lives here.
using Mono = std::vector<int>;

inline int total_degree(const Mono& a) {
    int d = 0;
    for (int e : a) d += e;
    return d;
}

inline bool divides(const Mono& b, const Mono& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] > a[i]) return false;
    return true;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

// a / b, caller guarantees divisibility
inline Mono mono_div(const Mono& a, const Mono& b) {
    Mono r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline Mono mono_one(int n) { return Mono(n, 0); }

inline Mono mono_var(int n, int i, int e = 1) {
    Mono r(n, 0);
    r[i] = e;
    return r;
}

// degrevlex within equal degree: a < b iff the last nonzero entry of a-b is > 0
inline bool drl_less_same_degree(const Mono& a, const Mono& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

// total order used for coordinate indexing and term maps:
// degree ascending, degrevlex descending within a degree (largest first).
// The pivot of an echelon row is then its lowest-degree, degrevlex-largest term,
// matching a local ordering.
struct TableLess {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        // descending degrevlex = "b < a in drl"
        return drl_less_same_degree(b, a);
    }
};

// classical degrevlex for the Groebner engine: degree then degrevlex, largest = leading
inline bool degrevlex_less(const Mono& a, const Mono& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return drl_less_same_degree(a, b);
}

// Indexed list of all monomials in n variables of degree < D, in TableLess order.
class MonoTable {
public:
    MonoTable(int n, int D) : n_(n), D_(D) {
        Mono cur(n, 0);
        gen(cur, 0, 0);
        std::sort(list_.begin(), list_.end(), TableLess{});
        for (std::size_t i = 0; i < list_.size(); ++i) index_[list_[i]] = static_cast<int>(i);
        degree_start_.assign(D + 1, static_cast<int>(list_.size()));
        for (std::size_t i = list_.size(); i-- > 0;)
            degree_start_[total_degree(list_[i])] = static_cast<int>(i);
        for (int d = D - 1; d >= 0; --d)
            if (degree_start_[d] > degree_start_[d + 1]) degree_start_[d] = degree_start_[d + 1];
        mult_.assign(n, std::vector<int>(list_.size(), -1));
        for (std::size_t i = 0; i < list_.size(); ++i) {
            for (int v = 0; v < n; ++v) {
                if (total_degree(list_[i]) + 1 >= D) continue;
                Mono m = list_[i];
                ++m[v];
                mult_[v][i] = index_.at(m);
            }
        }
    }

    int nvars() const { return n_; }
    int trunc() const { return D_; }
    int size() const { return static_cast<int>(list_.size()); }
    const Mono& mono(int i) const { return list_[i]; }
    int degree(int i) const { return total_degree(list_[i]); }
    // first index of the given degree (indices are grouped by degree)
    int degree_begin(int d) const { return degree_start_[std::min(d, D_)]; }
    int degree_end(int d) const { return d >= D_ ? size() : degree_start_[std::min(d + 1, D_)]; }
    int index(const Mono& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) return -1;
        return it->second;
    }
    // index of m * alpha_v, or -1 when the product leaves the truncation window
    int mult_index(int v, int i) const { return mult_[v][i]; }

    // process-wide cache; tables are immutable once built
    static std::shared_ptr<const MonoTable> get(int n, int D) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::shared_ptr<const MonoTable>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(n, D);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto t = std::make_shared<const MonoTable>(n, D);
        cache[key] = t;
        return t;
    }

private:
    void gen(Mono& cur, int pos, int deg) {
        if (pos == n_) {
            list_.push_back(cur);
            return;
        }
        for (int e = 0; deg + e < D_; ++e) {
            cur[pos] = e;
            gen(cur, pos + 1, deg + e);
        }
        cur[pos] = 0;
    }

    int n_, D_;
    std::vector<Mono> list_;
    std::map<Mono, int> index_;
    std::vector<int> degree_start_;
    std::vector<std::vector<int>> mult_;
};

} // namespace apolar
