#pragma once

#include <algorithm>
#include <vector>

#include "errors.hpp"
#include "rings.hpp"

namespace apolar {

template <class R>
struct SparseRow {
    // sorted by column index; first entry is the pivot with coefficient 1
    std::vector<std::pair<int, typename R::Elem>> ent;
    int pivot() const { return ent.empty() ? -1 : ent.front().first; }
};

// Row space in echelon form over a fixed coordinate window [0, ncols).
// Rows are forward-reduced on insertion; canonicalize() produces the unique
// reduced form (pivot columns cleared everywhere, rows sorted by pivot).
template <class R>
class Echelon {
public:
    using Elem = typename R::Elem;

    Echelon() = default;
    Echelon(const R& F, int ncols) : F_(F), ncols_(ncols), col2row_(ncols, -1) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseRow<R>>& rows() const { return rows_; }
    int pivot_row(int col) const { return col2row_[col]; }

    std::vector<Elem> zero_vec() const { return std::vector<Elem>(ncols_, F_.zero()); }

    // forward-reduce a dense vector in place
    void reduce(std::vector<Elem>& v) const {
        for (int j = 0; j < ncols_; ++j) {
            if (F_.is_zero(v[j])) continue;
            int r = col2row_[j];
            if (r < 0) continue;
            Elem c = F_.neg(v[j]);
            for (const auto& [k, a] : rows_[r].ent) F_.addmul(v[k], c, a);
        }
    }

    bool contains(std::vector<Elem> v) const {
        reduce(v);
        for (const auto& c : v)
            if (!F_.is_zero(c)) return false;
        return true;
    }

    // reduce then adjoin as a new row; returns the new row index or -1 if dependent
    int insert(std::vector<Elem>& v) {
        canonical_ = false;
        for (int j = 0; j < ncols_; ++j) {
            if (F_.is_zero(v[j])) continue;
            int r = col2row_[j];
            if (r < 0) {
                Elem inv = F_.inv(v[j]);
                SparseRow<R> row;
                for (int k = j; k < ncols_; ++k)
                    if (!F_.is_zero(v[k])) row.ent.emplace_back(k, F_.mul(v[k], inv));
                rows_.push_back(std::move(row));
                col2row_[j] = static_cast<int>(rows_.size()) - 1;
                return col2row_[j];
            }
            Elem c = F_.neg(v[j]);
            for (const auto& [k, a] : rows_[r].ent) F_.addmul(v[k], c, a);
        }
        return -1;
    }

    int insert_sparse(const SparseRow<R>& s) {
        auto v = zero_vec();
        for (const auto& [k, a] : s.ent) v[k] = a;
        return insert(v);
    }

    // unique reduced echelon form; rows sorted by pivot column
    void canonicalize() {
        if (canonical_) return;
        std::sort(rows_.begin(), rows_.end(),
                  [](const SparseRow<R>& a, const SparseRow<R>& b) { return a.pivot() < b.pivot(); });
        for (int i = 0; i < static_cast<int>(rows_.size()); ++i) col2row_[rows_[i].pivot()] = i;
        // back-substitute from the last pivot upward
        for (int i = static_cast<int>(rows_.size()); i-- > 0;) {
            auto v = zero_vec();
            for (const auto& [k, a] : rows_[i].ent) v[k] = a;
            int piv = rows_[i].pivot();
            for (int j = piv + 1; j < ncols_; ++j) {
                if (F_.is_zero(v[j])) continue;
                int r = col2row_[j];
                if (r < 0 || r == i) continue;
                Elem c = F_.neg(v[j]);
                for (const auto& [k, a] : rows_[r].ent) F_.addmul(v[k], c, a);
            }
            rows_[i].ent.clear();
            for (int k = piv; k < ncols_; ++k)
                if (!F_.is_zero(v[k])) rows_[i].ent.emplace_back(k, v[k]);
        }
        canonical_ = true;
    }

    bool equals(Echelon& other) {
        if (ncols_ != other.ncols_ || rank() != other.rank()) return false;
        canonicalize();
        other.canonicalize();
        for (int i = 0; i < rank(); ++i) {
            if (rows_[i].ent.size() != other.rows_[i].ent.size()) return false;
            for (std::size_t k = 0; k < rows_[i].ent.size(); ++k) {
                if (rows_[i].ent[k].first != other.rows_[i].ent[k].first) return false;
                if (!F_.eq(rows_[i].ent[k].second, other.rows_[i].ent[k].second)) return false;
            }
        }
        return true;
    }

    const R& field() const { return F_; }

private:
    R F_{};
    int ncols_ = 0;
    bool canonical_ = true;
    std::vector<SparseRow<R>> rows_;
    std::vector<int> col2row_;
};

// ---- small dense helpers ----

template <class R>
using DenseMat = std::vector<std::vector<typename R::Elem>>;

template <class R>
DenseMat<R> dense_identity(const R& F, int n) {
    DenseMat<R> I(n, std::vector<typename R::Elem>(n, F.zero()));
    for (int i = 0; i < n; ++i) I[i][i] = F.one();
    return I;
}

template <class R>
DenseMat<R> dense_mul(const R& F, const DenseMat<R>& A, const DenseMat<R>& B) {
    int n = static_cast<int>(A.size());
    int m = static_cast<int>(B[0].size());
    int k = static_cast<int>(B.size());
    DenseMat<R> C(n, std::vector<typename R::Elem>(m, F.zero()));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (F.is_zero(A[i][l])) continue;
            for (int j = 0; j < m; ++j) F.addmul(C[i][j], A[i][l], B[l][j]);
        }
    return C;
}

template <class R>
std::vector<typename R::Elem> dense_apply(const R& F, const DenseMat<R>& A,
                                          const std::vector<typename R::Elem>& v) {
    int n = static_cast<int>(A.size());
    int m = static_cast<int>(v.size());
    std::vector<typename R::Elem> r(n, F.zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) F.addmul(r[i], A[i][j], v[j]);
    return r;
}

// inverse of a square matrix; throws NotAutomorphismError when singular
template <class R>
DenseMat<R> dense_inverse(const R& F, DenseMat<R> A) {
    int n = static_cast<int>(A.size());
    DenseMat<R> I = dense_identity(F, n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!F.is_zero(A[r][col])) { piv = r; break; }
        if (piv < 0) throw NotAutomorphismError("singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(I[piv], I[col]);
        auto inv = F.inv(A[col][col]);
        for (int j = 0; j < n; ++j) {
            A[col][j] = F.mul(A[col][j], inv);
            I[col][j] = F.mul(I[col][j], inv);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || F.is_zero(A[r][col])) continue;
            auto c = F.neg(A[r][col]);
            for (int j = 0; j < n; ++j) {
                F.addmul(A[r][j], c, A[col][j]);
                F.addmul(I[r][j], c, I[col][j]);
            }
        }
    }
    return I;
}

// solve A x = b (A square invertible)
template <class R>
std::vector<typename R::Elem> dense_solve(const R& F, DenseMat<R> A,
                                          std::vector<typename R::Elem> b) {
    int n = static_cast<int>(A.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!F.is_zero(A[r][col])) { piv = r; break; }
        if (piv < 0) throw NotAutomorphismError("singular system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        auto inv = F.inv(A[col][col]);
        for (int j = 0; j < n; ++j) A[col][j] = F.mul(A[col][j], inv);
        b[col] = F.mul(b[col], inv);
        for (int r = 0; r < n; ++r) {
            if (r == col || F.is_zero(A[r][col])) continue;
            auto c = F.neg(A[r][col]);
            for (int j = 0; j < n; ++j) F.addmul(A[r][j], c, A[col][j]);
            F.addmul(b[r], c, b[col]);
        }
    }
    return b;
}

// kernel basis of A (m x n), vectors of length n
template <class R>
DenseMat<R> dense_kernel(const R& F, const DenseMat<R>& A) {
    int m = static_cast<int>(A.size());
    int n = m ? static_cast<int>(A[0].size()) : 0;
    // insert columns-as-images with preimage tracking: width m + n
    Echelon<R> ech(F, m + n);
    DenseMat<R> ker;
    for (int j = 0; j < n; ++j) {
        std::vector<typename R::Elem> v(m + n, F.zero());
        for (int i = 0; i < m; ++i) v[i] = A[i][j];
        v[m + j] = F.one();
        int r = ech.insert(v);
        if (r >= 0 && ech.rows()[r].pivot() >= m) {
            std::vector<typename R::Elem> k(n, F.zero());
            for (const auto& [c, a] : ech.rows()[r].ent) k[c - m] = a;
            ker.push_back(std::move(k));
        }
    }
    return ker;
}

} // namespace apolar
