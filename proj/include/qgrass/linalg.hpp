#pragma once

#include "qgrass/rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace qgrass {

/// Dense matrix over an exact field F (column-vector convention: the entry
/// (r, c) is the coefficient of basis vector r in the image of basis
/// vector c).
template <class F>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols, F(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    F& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const F& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const F& x) { return x.is_zero(); });
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.r_, y.c_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                const F& v = x.at(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < y.c_; ++j) {
                    const F& w = y.at(k, j);
                    if (!w.is_zero()) r.at(i, j) += v * w;
                }
            }
        return r;
    }
    Mat scaled(const F& s) const {
        Mat r = *this;
        for (auto& v : r.a_) v *= s;
        return r;
    }
    Mat operator-() const { return scaled(F(-1)); }

    Mat transpose() const {
        Mat r(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    F trace() const {
        F t(0);
        for (int i = 0; i < r_; ++i) t += at(i, i);
        return t;
    }

    Mat pow(int e) const {
        Mat r = identity(r_), b = *this;
        unsigned n = e;
        while (n) {
            if (n & 1) r = r * b;
            if (n >>= 1) b = b * b;
        }
        return r;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int sel = -1;
            for (int i = row; i < r_; ++i)
                if (!at(i, col).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0) continue;
            if (sel != row)
                for (int j = 0; j < c_; ++j) std::swap(at(sel, j), at(row, j));
            F inv = F(1) / at(row, col);
            for (int j = col; j < c_; ++j) at(row, j) *= inv;
            for (int i = 0; i < r_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                F f = at(i, col);
                for (int j = col; j < c_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        Mat t = *this;
        return (int)t.rref().size();
    }

    /// Rows of the result span {v : M v = 0}.
    Mat kernel() const {
        Mat t = *this;
        std::vector<int> piv = t.rref();
        std::vector<bool> is_piv(c_, false);
        for (int c : piv) is_piv[c] = true;
        Mat k(c_ - (int)piv.size(), c_);
        int kr = 0;
        for (int free = 0; free < c_; ++free) {
            if (is_piv[free]) continue;
            k.at(kr, free) = F(1);
            for (int i = 0; i < (int)piv.size(); ++i) k.at(kr, piv[i]) = -t.at(i, free);
            ++kr;
        }
        return k;
    }

    Mat inverse() const {
        if (r_ != c_) throw domain_error("Mat::inverse: not square");
        Mat aug(r_, 2 * c_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, c_ + i) = F(1);
        }
        std::vector<int> piv = aug.rref();
        if ((int)piv.size() != r_ || piv.back() >= c_) throw domain_error("Mat::inverse: singular");
        Mat r(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r.at(i, j) = aug.at(i, c_ + j);
        return r;
    }

    /// Characteristic polynomial coefficients [c_0 .. c_n], c_n = 1, by the
    /// Faddeev-LeVerrier recurrence (valid in characteristic zero).
    std::vector<F> charpoly() const {
        if (r_ != c_) throw domain_error("Mat::charpoly: not square");
        int n = r_;
        std::vector<F> c(n + 1, F(0));
        c[n] = F(1);
        Mat m(n, n);
        for (int k = 1; k <= n; ++k) {
            // M_k = A (M_{k-1} + c_{n-k+1} I)
            for (int i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
            m = *this * m;
            c[n - k] = -(m.trace() / F(k));
        }
        return c;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<F> a_;
};

/// Repeated expression of vectors in the row span of a fixed matrix B:
/// the augmented elimination runs once, each solve is a back-substitution.
template <class F>
class RowSolver {
public:
    explicit RowSolver(const Mat<F>& B) : k_(B.rows()), n_(B.cols()), aug_(B.rows(), B.cols() + B.rows()) {
        for (int i = 0; i < k_; ++i) {
            for (int j = 0; j < n_; ++j) aug_.at(i, j) = B.at(i, j);
            aug_.at(i, n_ + i) = F(1);
        }
        piv_ = aug_.rref();
    }

    /// Coefficients c with c B = w, when w lies in the span.
    std::optional<std::vector<F>> solve(const std::vector<F>& w) const {
        std::vector<F> rem = w, coef(k_, F(0));
        for (int i = 0; i < (int)piv_.size(); ++i) {
            if (piv_[i] >= n_) break;
            F f = rem[piv_[i]];
            if (f.is_zero()) continue;
            for (int j = 0; j < n_; ++j) rem[j] -= f * aug_.at(i, j);
            for (int j = 0; j < k_; ++j) coef[j] += f * aug_.at(i, n_ + j);
        }
        for (auto& v : rem)
            if (!v.is_zero()) return std::nullopt;
        return coef;
    }

private:
    int k_, n_;
    Mat<F> aug_;
    std::vector<int> piv_;
};

/// Express w as a combination of the rows of B (if possible): c B = w.
template <class F>
std::optional<std::vector<F>> solve_row_combo(const Mat<F>& B, const std::vector<F>& w) {
    return RowSolver<F>(B).solve(w);
}

/// Matrix of X restricted to the row span of B (which must be X-invariant).
template <class F>
Mat<F> restrict_to_rows(const Mat<F>& X, const Mat<F>& B) {
    int k = B.rows(), n = B.cols();
    RowSolver<F> solver(B);
    Mat<F> R(k, k);
    for (int i = 0; i < k; ++i) {
        std::vector<F> img(n, F(0));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!X.at(r, c).is_zero()) img[r] += X.at(r, c) * B.at(i, c);
        auto coef = solver.solve(img);
        if (!coef) throw domain_error("restrict_to_rows: span not invariant");
        for (int j = 0; j < k; ++j) R.at(j, i) = (*coef)[j];
    }
    return R;
}

/// Sparse square-ish matrix over F: per-row sorted (col, value) lists.
template <class F>
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(int rows, int cols) : r_(rows), c_(cols), rows_(rows) {}

    static SparseMat identity(int n) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.rows_[i].push_back({i, F(1)});
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    const std::vector<std::pair<int, F>>& row(int i) const { return rows_[i]; }

    void add_entry(int i, int j, const F& v) {
        if (v.is_zero()) return;
        auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const std::pair<int, F>& e, int x) { return e.first < x; });
        if (it != row.end() && it->first == j) {
            it->second += v;
            if (it->second.is_zero()) row.erase(it);
        } else {
            row.insert(it, {j, v});
        }
    }

    F at(int i, int j) const {
        const auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const std::pair<int, F>& e, int x) { return e.first < x; });
        return (it != row.end() && it->first == j) ? it->second : F(0);
    }

    long nnz() const {
        long n = 0;
        for (auto& row : rows_) n += (long)row.size();
        return n;
    }

    bool is_zero() const {
        return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
    }
    friend bool operator==(const SparseMat& x, const SparseMat& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.rows_ == y.rows_;
    }
    friend bool operator!=(const SparseMat& x, const SparseMat& y) { return !(x == y); }

    friend SparseMat operator+(const SparseMat& x, const SparseMat& y) { return merged(x, y, false); }
    friend SparseMat operator-(const SparseMat& x, const SparseMat& y) { return merged(x, y, true); }

    SparseMat scaled(const F& s) const {
        SparseMat r(r_, c_);
        if (s.is_zero()) return r;
        for (int i = 0; i < r_; ++i) {
            r.rows_[i] = rows_[i];
            for (auto& [j, v] : r.rows_[i]) v *= s;
        }
        return r;
    }
    SparseMat operator-() const { return scaled(F(-1)); }

    friend SparseMat operator*(const SparseMat& x, const SparseMat& y) {
        SparseMat r(x.r_, y.c_);
        std::vector<F> acc(y.c_, F(0));
        std::vector<int> touched;
        for (int i = 0; i < x.r_; ++i) {
            touched.clear();
            for (auto& [k, v] : x.rows_[i])
                for (auto& [j, w] : y.rows_[k]) {
                    if (acc[j].is_zero()) touched.push_back(j);
                    acc[j] += v * w;
                }
            std::sort(touched.begin(), touched.end());
            auto& row = r.rows_[i];
            for (int j : touched) {
                if (!acc[j].is_zero()) row.push_back({j, acc[j]});
                acc[j] = F(0);
            }
        }
        return r;
    }

    SparseMat pow(int e) const {
        SparseMat r = identity(r_), b = *this;
        unsigned n = e;
        while (n) {
            if (n & 1) r = r * b;
            if (n >>= 1) b = b * b;
        }
        return r;
    }

    Mat<F> to_dense() const {
        Mat<F> m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (auto& [j, v] : rows_[i]) m.at(i, j) = v;
        return m;
    }

    /// Submatrix on given row/column index sets (indices into this matrix).
    SparseMat restricted(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        std::vector<int> colmap(c_, -1);
        for (int t = 0; t < (int)col_idx.size(); ++t) colmap[col_idx[t]] = t;
        SparseMat r((int)row_idx.size(), (int)col_idx.size());
        for (int t = 0; t < (int)row_idx.size(); ++t)
            for (auto& [j, v] : rows_[row_idx[t]])
                if (colmap[j] >= 0) r.rows_[t].push_back({colmap[j], v});
        return r;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<std::vector<std::pair<int, F>>> rows_;

    static SparseMat merged(const SparseMat& x, const SparseMat& y, bool subtract) {
        SparseMat r(x.r_, x.c_);
        for (int i = 0; i < x.r_; ++i) {
            auto& a = x.rows_[i];
            auto& b = y.rows_[i];
            auto& out = r.rows_[i];
            out.reserve(a.size() + b.size());
            size_t s = 0, t = 0;
            while (s < a.size() && t < b.size()) {
                if (a[s].first < b[t].first) {
                    out.push_back(a[s++]);
                } else if (a[s].first > b[t].first) {
                    out.push_back(b[t]);
                    if (subtract) out.back().second = -out.back().second;
                    ++t;
                } else {
                    F v = subtract ? a[s].second - b[t].second : a[s].second + b[t].second;
                    if (!v.is_zero()) out.push_back({a[s].first, v});
                    ++s;
                    ++t;
                }
            }
            for (; s < a.size(); ++s) out.push_back(a[s]);
            for (; t < b.size(); ++t) {
                out.push_back(b[t]);
                if (subtract) out.back().second = -out.back().second;
            }
        }
        return r;
    }
};

/// Incremental exact row-echelon accumulator over F for sparse rows of a
/// fixed length; rows are normalized to pivot 1.  Backbone of the matrix
/// algebra span closure and of containment checks.
template <class F>
class RowSpace {
public:
    using Row = std::vector<std::pair<int, F>>; // sorted by index

    explicit RowSpace(long width) : width_(width) {}

    int dim() const { return (int)rows_.size(); }
    long width() const { return width_; }
    const std::vector<Row>& rows() const { return rows_; }

    /// Reduce r against the stored echelon rows in place.
    void reduce(Row& r) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (r.empty()) return;
            long p = pivots_[i];
            auto it = std::lower_bound(r.begin(), r.end(), p,
                                       [](const std::pair<int, F>& e, long x) { return e.first < x; });
            if (it == r.end() || it->first != p) continue;
            F f = it->second;
            r = axpy(r, rows_[i], -f);
        }
    }

    /// Insert a row; returns the index of its stored echelon form when it
    /// enlarges the span, -1 otherwise.
    int insert(Row r) {
        reduce(r);
        if (r.empty()) return -1;
        F inv = F(1) / r.front().second;
        if (!(inv == F(1)))
            for (auto& [j, v] : r) v *= inv;
        long p = r.front().first;
        // eliminate the new pivot from earlier rows to keep reduction cheap
        for (size_t i = 0; i < rows_.size(); ++i) {
            auto& row = rows_[i];
            auto it = std::lower_bound(row.begin(), row.end(), p,
                                       [](const std::pair<int, F>& e, long x) { return e.first < x; });
            if (it != row.end() && it->first == p) rows_[i] = axpy(row, r, -it->second);
        }
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        return (int)rows_.size() - 1;
    }

    bool contains(Row r) const {
        reduce(r);
        return r.empty();
    }

private:
    long width_;
    std::vector<Row> rows_;
    std::vector<long> pivots_;

    static Row axpy(const Row& a, const Row& b, const F& f) {
        Row out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) {
                out.push_back(a[i++]);
            } else if (a[i].first > b[j].first) {
                F v = f * b[j].second;
                if (!v.is_zero()) out.push_back({b[j].first, v});
                ++j;
            } else {
                F v = a[i].second + f * b[j].second;
                if (!v.is_zero()) out.push_back({a[i].first, v});
                ++i;
                ++j;
            }
        }
        for (; i < a.size(); ++i) out.push_back(a[i]);
        for (; j < b.size(); ++j) {
            F v = f * b[j].second;
            if (!v.is_zero()) out.push_back({b[j].first, v});
        }
        return out;
    }
};

/// Flatten an operator to a coordinate row (row-major).
template <class F>
typename RowSpace<F>::Row flatten(const SparseMat<F>& m) {
    typename RowSpace<F>::Row r;
    r.reserve(m.nnz());
    for (int i = 0; i < m.rows(); ++i)
        for (auto& [j, v] : m.row(i)) r.push_back({i * m.cols() + j, v});
    return r;
}

} // namespace qgrass
