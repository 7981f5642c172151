#pragma once

#include "ihall/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace ihall {

/// Dense matrix over the prime field F_q with exact mod-q arithmetic.
/// Entries live in {0, ..., q-1}; q is expected to be prime and small.
class FqMat {
public:
    FqMat() : q_(2), rows_(0), cols_(0) {}
    FqMat(int q, int rows, int cols) : q_(q), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FqMat identity(int q, int n) {
        FqMat m(q, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    int q() const { return q_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int at(int r, int c) const { return a_[r * cols_ + c]; }
    void set(int r, int c, int v) { a_[r * cols_ + c] = static_cast<uint8_t>(((v % q_) + q_) % q_); }
    const std::vector<uint8_t>& data() const { return a_; }

    bool is_zero() const {
        for (auto v : a_)
            if (v) return false;
        return true;
    }

    friend bool operator==(const FqMat& x, const FqMat& y) {
        return x.q_ == y.q_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    friend FqMat operator*(const FqMat& x, const FqMat& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        FqMat r(x.q_, x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                int v = x.at(i, k);
                if (!v) continue;
                for (int j = 0; j < y.cols_; ++j)
                    r.set(i, j, r.at(i, j) + v * y.at(k, j));
            }
        return r;
    }

    friend FqMat operator+(const FqMat& x, const FqMat& y) {
        FqMat r(x.q_, x.rows_, x.cols_);
        for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = static_cast<uint8_t>((x.a_[i] + y.a_[i]) % x.q_);
        return r;
    }
    friend FqMat operator-(const FqMat& x, const FqMat& y) {
        FqMat r(x.q_, x.rows_, x.cols_);
        for (size_t i = 0; i < x.a_.size(); ++i)
            r.a_[i] = static_cast<uint8_t>((x.a_[i] - y.a_[i] + x.q_) % x.q_);
        return r;
    }

    FqMat transpose() const {
        FqMat r(q_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
        return r;
    }

    int inv_scalar(int v) const {
        v = ((v % q_) + q_) % q_;
        for (int w = 1; w < q_; ++w)
            if (v * w % q_ == 1) return w;
        throw std::domain_error("scalar not invertible");
    }

    /// In-place row reduction to reduced row echelon form; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int sel = -1;
            for (int i = row; i < rows_; ++i)
                if (at(i, col)) { sel = i; break; }
            if (sel < 0) continue;
            if (sel != row)
                for (int j = 0; j < cols_; ++j) {
                    int t = at(row, j);
                    set(row, j, at(sel, j));
                    set(sel, j, t);
                }
            int inv = inv_scalar(at(row, col));
            for (int j = 0; j < cols_; ++j) set(row, j, at(row, j) * inv);
            for (int i = 0; i < rows_; ++i) {
                if (i == row) continue;
                int f = at(i, col);
                if (!f) continue;
                for (int j = 0; j < cols_; ++j) set(i, j, at(i, j) - f * at(row, j));
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        FqMat c = *this;
        return static_cast<int>(c.rref().size());
    }

    /// Basis of the right kernel {x : A x = 0}, one column vector per basis element.
    std::vector<std::vector<int>> kernel_basis() const {
        FqMat c = *this;
        auto pivots = c.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int p : pivots) is_pivot[p] = true;
        std::vector<std::vector<int>> basis;
        for (int free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<int> x(cols_, 0);
            x[free] = 1;
            for (size_t r = 0; r < pivots.size(); ++r)
                x[pivots[r]] = (q_ - c.at(static_cast<int>(r), free)) % q_;
            basis.push_back(std::move(x));
        }
        return basis;
    }

    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    FqMat inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        FqMat aug(q_, rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.set(i, j, at(i, j));
            aug.set(i, cols_ + i, 1);
        }
        auto piv = aug.rref();
        if (static_cast<int>(piv.size()) != rows_ || (rows_ > 0 && piv.back() >= cols_))
            throw std::domain_error("matrix not invertible");
        FqMat inv(q_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.set(i, j, aug.at(i, cols_ + j));
        return inv;
    }

    FqMat mul_vec(const std::vector<int>& x) const {
        FqMat col(q_, cols_, 1);
        for (int i = 0; i < cols_; ++i) col.set(i, 0, x[i]);
        return *this * col;
    }

private:
    int q_;
    int rows_, cols_;
    std::vector<uint8_t> a_;
};

/// Subspace of F_q^d held as a reduced-row-echelon basis (one row per basis
/// vector). The RREF form is canonical, so equality is structural.
struct Subspace {
    FqMat basis; // r x d, RREF

    int dim() const { return basis.rows(); }
    int ambient() const { return basis.cols(); }

    /// Reduce v against the basis; returns the residual.
    std::vector<int> reduce(std::vector<int> v) const {
        const int q = basis.q();
        for (int r = 0; r < basis.rows(); ++r) {
            int p = -1;
            for (int j = 0; j < basis.cols(); ++j)
                if (basis.at(r, j)) { p = j; break; }
            if (p < 0) continue;
            int f = v[p] % q; // pivot entry is 1 in RREF
            if (!f) continue;
            for (int j = 0; j < basis.cols(); ++j) v[j] = ((v[j] - f * basis.at(r, j)) % q + q) % q;
        }
        return v;
    }

    bool contains(const std::vector<int>& v) const {
        for (int x : reduce(v))
            if (x % basis.q()) return false;
        return true;
    }

    /// Coordinates of v in the basis; v must lie in the subspace.
    std::vector<int> coordinates(std::vector<int> v) const {
        const int q = basis.q();
        std::vector<int> coord(basis.rows(), 0);
        for (int r = 0; r < basis.rows(); ++r) {
            int p = -1;
            for (int j = 0; j < basis.cols(); ++j)
                if (basis.at(r, j)) { p = j; break; }
            if (p < 0) continue;
            int f = ((v[p] % q) + q) % q;
            coord[r] = f;
            if (!f) continue;
            for (int j = 0; j < basis.cols(); ++j) v[j] = ((v[j] - f * basis.at(r, j)) % q + q) % q;
        }
        for (int x : v)
            if (x % q) throw std::domain_error("vector not in subspace");
        return coord;
    }
};

inline Subspace full_space(int q, int d) { return Subspace{FqMat::identity(q, d)}; }
inline Subspace zero_space(int q, int d) { return Subspace{FqMat(q, 0, d)}; }

/// Subspace spanned by the given (column) vectors.
inline Subspace span_of(int q, int d, const std::vector<std::vector<int>>& vectors) {
    FqMat m(q, static_cast<int>(vectors.size()), d);
    for (size_t i = 0; i < vectors.size(); ++i)
        for (int j = 0; j < d; ++j) m.set(static_cast<int>(i), j, vectors[i][j]);
    auto piv = m.rref();
    FqMat b(q, static_cast<int>(piv.size()), d);
    for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < d; ++j) b.set(static_cast<int>(r), j, m.at(static_cast<int>(r), j));
    return Subspace{b};
}

/// All subspaces of F_q^d, enumerated as RREF bases. Cached per (q, d):
/// the counts are Gaussian binomials, tiny in the dimensions used here.
inline const std::vector<Subspace>& all_subspaces(int q, int d) {
    static std::map<std::pair<int, int>, std::vector<Subspace>> cache;
    auto key = std::make_pair(q, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Subspace> out;
    // choose pivot columns, then fill free entries in all ways
    for (int r = 0; r <= d; ++r) {
        std::vector<int> piv(r);
        // iterate over r-subsets of {0..d-1}
        std::vector<int> idx(r);
        for (int i = 0; i < r; ++i) idx[i] = i;
        bool more = r <= d;
        if (r == 0) {
            out.push_back(zero_space(q, d));
            continue;
        }
        while (more) {
            // free positions: (row i, col j) with j > idx[i], j not a pivot
            std::vector<std::pair<int, int>> free_pos;
            std::vector<bool> is_piv(d, false);
            for (int p : idx) is_piv[p] = true;
            for (int i = 0; i < r; ++i)
                for (int j = idx[i] + 1; j < d; ++j)
                    if (!is_piv[j]) free_pos.emplace_back(i, j);
            long total = 1;
            for (size_t t = 0; t < free_pos.size(); ++t) total *= q;
            for (long code = 0; code < total; ++code) {
                FqMat b(q, r, d);
                for (int i = 0; i < r; ++i) b.set(i, idx[i], 1);
                long c = code;
                for (auto [i, j] : free_pos) {
                    b.set(i, j, static_cast<int>(c % q));
                    c /= q;
                }
                out.push_back(Subspace{b});
            }
            // next subset
            int i = r - 1;
            while (i >= 0 && idx[i] == d - r + i) --i;
            if (i < 0) more = false;
            else {
                ++idx[i];
                for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

/// Number of k-dimensional subspaces of F_q^n, by direct count.
inline Integer grassmannian_count(long k, long n, long q) {
    if (k < 0 || k > n) return 0;
    // product formula evaluated in exact integers: prod (q^{n-i} - 1)/(q^{k-i} - 1)
    Integer num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= int_pow(Integer(q), static_cast<unsigned long>(n - i)) - 1;
        den *= int_pow(Integer(q), static_cast<unsigned long>(k - i)) - 1;
    }
    return num / den;
}

/// Same count by exhaustive enumeration; used as an independent oracle.
inline Integer grassmannian_count_enumerated(long k, long n, long q) {
    if (k < 0 || k > n) return 0;
    Integer count = 0;
    for (const auto& s : all_subspaces(static_cast<int>(q), static_cast<int>(n)))
        if (s.dim() == k) ++count;
    return count;
}

} // namespace ihall
