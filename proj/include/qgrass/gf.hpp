#pragma once

#include "qgrass/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace qgrass {

/// Dense matrix over the prime field GF(p), entries stored as residues.
class GFMat {
public:
    GFMat() = default;
    GFMat(int p, int rows, int cols) : p_(p), r_(rows), c_(cols), a_(size_t(rows) * cols, 0) {}

    int p() const { return p_; }
    int rows() const { return r_; }
    int cols() const { return c_; }

    uint8_t at(int i, int j) const { return a_[size_t(i) * c_ + j]; }
    void set(int i, int j, int v) { a_[size_t(i) * c_ + j] = uint8_t(((v % p_) + p_) % p_); }

    std::vector<uint8_t> row(int i) const {
        return std::vector<uint8_t>(a_.begin() + size_t(i) * c_, a_.begin() + size_t(i + 1) * c_);
    }
    void set_row(int i, const std::vector<uint8_t>& v) {
        std::copy(v.begin(), v.end(), a_.begin() + size_t(i) * c_);
    }

    friend bool operator==(const GFMat& x, const GFMat& y) {
        return x.p_ == y.p_ && x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }
    friend bool operator!=(const GFMat& x, const GFMat& y) { return !(x == y); }
    friend bool operator<(const GFMat& x, const GFMat& y) {
        if (x.r_ != y.r_) return x.r_ < y.r_;
        if (x.c_ != y.c_) return x.c_ < y.c_;
        return x.a_ < y.a_;
    }

    friend GFMat operator*(const GFMat& x, const GFMat& y) {
        GFMat r(x.p_, x.r_, y.c_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                int v = x.at(i, k);
                if (!v) continue;
                for (int j = 0; j < y.c_; ++j)
                    r.a_[size_t(i) * y.c_ + j] =
                        uint8_t((r.a_[size_t(i) * y.c_ + j] + v * y.at(k, j)) % x.p_);
            }
        return r;
    }
    friend GFMat operator-(const GFMat& x, const GFMat& y) {
        GFMat r(x.p_, x.r_, x.c_);
        for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = uint8_t((x.a_[i] + x.p_ - y.a_[i]) % x.p_);
        return r;
    }

    GFMat vstack(const GFMat& o) const {
        GFMat r(p_, r_ + o.r_, c_);
        std::copy(a_.begin(), a_.end(), r.a_.begin());
        std::copy(o.a_.begin(), o.a_.end(), r.a_.begin() + a_.size());
        return r;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int sel = -1;
            for (int i = row; i < r_; ++i)
                if (at(i, col)) {
                    sel = i;
                    break;
                }
            if (sel < 0) continue;
            if (sel != row)
                for (int j = 0; j < c_; ++j) std::swap(a_[size_t(sel) * c_ + j], a_[size_t(row) * c_ + j]);
            int inv = inv_mod(at(row, col));
            if (inv != 1)
                for (int j = 0; j < c_; ++j) set(row, j, at(row, j) * inv);
            for (int i = 0; i < r_; ++i) {
                if (i == row) continue;
                int f = at(i, col);
                if (!f) continue;
                for (int j = 0; j < c_; ++j) set(i, j, at(i, j) + (p_ - f) * at(row, j));
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        GFMat t = *this;
        return (int)t.rref().size();
    }

    /// Basis of the right null space, as rows of the returned matrix.
    GFMat kernel() const {
        GFMat t = *this;
        std::vector<int> piv = t.rref();
        std::vector<bool> is_piv(c_, false);
        for (int c : piv) is_piv[c] = true;
        GFMat k(p_, c_ - (int)piv.size(), c_);
        int kr = 0;
        for (int free = 0; free < c_; ++free) {
            if (is_piv[free]) continue;
            k.set(kr, free, 1);
            for (int i = 0; i < (int)piv.size(); ++i) k.set(kr, piv[i], p_ - t.at(i, free));
            ++kr;
        }
        return k;
    }

    /// One solution x of x * A = rhs (row-vector convention), if any.
    std::optional<std::vector<uint8_t>> solve_left(const std::vector<uint8_t>& rhs) const {
        // transpose-free: solve A^T x^T = rhs^T by eliminating [A | I]
        GFMat aug(p_, r_, c_ + r_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug.set(i, j, at(i, j));
            aug.set(i, c_ + i, 1);
        }
        std::vector<int> piv = aug.rref();
        std::vector<uint8_t> x(r_, 0);
        std::vector<uint8_t> rem = rhs;
        for (int i = 0; i < (int)piv.size(); ++i) {
            if (piv[i] >= c_) break;
            int f = rem[piv[i]];
            if (!f) continue;
            for (int j = 0; j < c_; ++j) rem[j] = uint8_t((rem[j] + (p_ - f) * aug.at(i, j)) % p_);
            for (int j = 0; j < r_; ++j) x[j] = uint8_t((x[j] + f * aug.at(i, c_ + j)) % p_);
        }
        for (auto v : rem)
            if (v) return std::nullopt;
        return x;
    }

private:
    int p_ = 2, r_ = 0, c_ = 0;
    std::vector<uint8_t> a_;

    int inv_mod(int v) const {
        // p is tiny; brute force
        for (int i = 1; i < p_; ++i)
            if ((v * i) % p_ == 1) return i;
        throw domain_error("GFMat: not invertible mod p");
    }
};

/// Point of the subspace lattice of F_p^D in its unique canonical form: a
/// full-row-rank matrix in reduced row echelon form.  Equality of canonical
/// forms is bytewise.
class Subspace {
public:
    Subspace() = default;
    Subspace(int p, int ambient) : basis_(p, 0, ambient) {}

    /// Canonicalize a spanning set (rows of m).
    static Subspace span(GFMat m) {
        std::vector<int> piv = m.rref();
        Subspace s;
        s.basis_ = GFMat(m.p(), (int)piv.size(), m.cols());
        for (int i = 0; i < (int)piv.size(); ++i) s.basis_.set_row(i, m.row(i));
        return s;
    }

    static Subspace zero(int p, int ambient) { return Subspace(p, ambient); }
    static Subspace full(int p, int ambient) {
        GFMat m(p, ambient, ambient);
        for (int i = 0; i < ambient; ++i) m.set(i, i, 1);
        Subspace s;
        s.basis_ = std::move(m);
        return s;
    }

    int p() const { return basis_.p(); }
    int ambient() const { return basis_.cols(); }
    int dim() const { return basis_.rows(); }
    const GFMat& basis() const { return basis_; }

    friend bool operator==(const Subspace& x, const Subspace& y) { return x.basis_ == y.basis_; }
    friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }
    /// Order by (dimension, lexicographic RREF bytes): the canonical basis
    /// order of every operator matrix.
    friend bool operator<(const Subspace& x, const Subspace& y) {
        if (x.dim() != y.dim()) return x.dim() < y.dim();
        return x.basis_ < y.basis_;
    }

    bool contains(const std::vector<uint8_t>& v) const {
        std::vector<uint8_t> r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](uint8_t x) { return x == 0; });
    }
    bool leq(const Subspace& o) const {
        for (int i = 0; i < dim(); ++i)
            if (!o.contains(basis_.row(i))) return false;
        return true;
    }
    bool covers(const Subspace& o) const { return o.dim() + 1 == dim() && o.leq(*this); }

    Subspace sum(const Subspace& o) const { return span(basis_.vstack(o.basis_)); }

    Subspace intersect(const Subspace& o) const {
        // rows of the kernel of [A; B] give coefficients (a | b) with aA = -bB
        if (dim() == 0 || o.dim() == 0) return zero(p(), ambient());
        GFMat st = basis_.vstack(o.basis_);
        // kernel of st^T: combinations of all rows that vanish
        GFMat tr(p(), ambient(), st.rows());
        for (int i = 0; i < st.rows(); ++i)
            for (int j = 0; j < ambient(); ++j) tr.set(j, i, st.at(i, j));
        GFMat ker = tr.kernel(); // rows: coefficient vectors
        GFMat gens(p(), ker.rows(), ambient());
        for (int r = 0; r < ker.rows(); ++r) {
            for (int j = 0; j < ambient(); ++j) {
                int acc = 0;
                for (int i = 0; i < dim(); ++i) acc += ker.at(r, i) * basis_.at(i, j);
                gens.set(r, j, acc);
            }
        }
        return span(std::move(gens));
    }

    /// Residue of v modulo this subspace (clears the pivot coordinates).
    std::vector<uint8_t> reduce(const std::vector<uint8_t>& v) const {
        std::vector<uint8_t> r = v;
        int pp = p();
        for (int i = 0; i < dim(); ++i) {
            int col = pivot_col(i);
            int f = r[col];
            if (!f) continue;
            for (int j = 0; j < ambient(); ++j) r[j] = uint8_t((r[j] + (pp - f) * basis_.at(i, j)) % pp);
        }
        return r;
    }

    int pivot_col(int row) const {
        for (int j = 0; j < ambient(); ++j)
            if (basis_.at(row, j)) return j;
        throw internal_error("Subspace: zero basis row");
    }

    std::vector<int> pivot_cols() const {
        std::vector<int> v(dim());
        for (int i = 0; i < dim(); ++i) v[i] = pivot_col(i);
        return v;
    }

    /// Semicolon-separated digit rows, e.g. "1000;0100"; "0" for the zero
    /// space (the ambient dimension then comes from context).
    std::string str() const {
        if (dim() == 0) return "0";
        std::string s;
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ";";
            for (int j = 0; j < ambient(); ++j) s += char('0' + basis_.at(i, j));
        }
        return s;
    }

    static Subspace parse(const std::string& text, int p, int ambient) {
        if (text == "0") return zero(p, ambient);
        std::vector<std::vector<uint8_t>> rows;
        std::vector<uint8_t> cur;
        for (char ch : text) {
            if (ch == ';') {
                rows.push_back(cur);
                cur.clear();
            } else if (ch >= '0' && ch <= '9') {
                int d = ch - '0';
                if (d >= p) throw parse_error("subspace digit out of range for GF(" + std::to_string(p) + ")");
                cur.push_back(uint8_t(d));
            } else if (!isspace((unsigned char)ch)) {
                throw parse_error("bad character in subspace literal");
            }
        }
        rows.push_back(cur);
        GFMat m(p, (int)rows.size(), ambient);
        for (int i = 0; i < (int)rows.size(); ++i) {
            if ((int)rows[i].size() != ambient) throw parse_error("subspace row length != ambient dimension");
            m.set_row(i, rows[i]);
        }
        return span(std::move(m));
    }

private:
    GFMat basis_;
};

/// All i-dimensional subspaces of F_p^D, each in canonical form, sorted.
/// Enumerates reduced row echelon forms directly: one matrix per subspace.
inline std::vector<Subspace> enumerate_subspaces(int p, int D, int i, long max_count = 2'000'000) {
    if (i < 0 || i > D) return {};
    std::vector<Subspace> out;
    std::vector<int> piv(i);
    // iterate pivot column combinations
    for (int t = 0; t < i; ++t) piv[t] = t;
    auto next_comb = [&]() -> bool {
        int t = i - 1;
        while (t >= 0 && piv[t] == D - i + t) --t;
        if (t < 0) return false;
        ++piv[t];
        for (int s = t + 1; s < i; ++s) piv[s] = piv[s - 1] + 1;
        return true;
    };
    if (i == 0) {
        out.push_back(Subspace::zero(p, D));
        return out;
    }
    do {
        // free positions: (row r, col c) with c > piv[r], c not a pivot column
        std::vector<std::pair<int, int>> free_pos;
        std::vector<bool> is_piv(D, false);
        for (int c : piv) is_piv[c] = true;
        for (int r = 0; r < i; ++r)
            for (int c = piv[r] + 1; c < D; ++c)
                if (!is_piv[c]) free_pos.emplace_back(r, c);
        long count = 1;
        for (size_t t = 0; t < free_pos.size(); ++t) {
            count *= p;
            if (count > max_count) throw resource_error("enumerate_subspaces: too many subspaces");
        }
        if ((long)out.size() + count > max_count)
            throw resource_error("enumerate_subspaces: too many subspaces");
        for (long code = 0; code < count; ++code) {
            GFMat m(p, i, D);
            for (int r = 0; r < i; ++r) m.set(r, piv[r], 1);
            long rest = code;
            for (auto& [r, c] : free_pos) {
                m.set(r, c, int(rest % p));
                rest /= p;
            }
            Subspace s;
            s = Subspace::span(std::move(m)); // already RREF; span re-checks cheaply
            out.push_back(std::move(s));
        }
    } while (next_comb());
    std::sort(out.begin(), out.end());
    return out;
}

/// The whole lattice, sorted by (dimension, RREF bytes).
inline std::vector<Subspace> enumerate_lattice(int p, int D, long max_count = 2'000'000) {
    std::vector<Subspace> out;
    for (int i = 0; i <= D; ++i) {
        auto layer = enumerate_subspaces(p, D, i, max_count);
        if ((long)(out.size() + layer.size()) > max_count) throw resource_error("enumerate_lattice: too large");
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

/// Subspaces covered by x (codimension 1 in x).
inline std::vector<Subspace> covers_below(const Subspace& x) {
    std::vector<Subspace> out;
    int d = x.dim();
    if (d == 0) return out;
    for (const Subspace& h : enumerate_subspaces(x.p(), d, d - 1)) {
        // map the abstract hyperplane through the basis of x
        GFMat m(x.p(), d - 1, x.ambient());
        for (int r = 0; r < d - 1; ++r)
            for (int j = 0; j < x.ambient(); ++j) {
                int acc = 0;
                for (int i = 0; i < d; ++i) acc += h.basis().at(r, i) * x.basis().at(i, j);
                m.set(r, j, acc);
            }
        out.push_back(Subspace::span(std::move(m)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Subspaces covering x inside the full ambient space.
inline std::vector<Subspace> covers_above(const Subspace& x) {
    std::vector<Subspace> out;
    int D = x.ambient(), p = x.p();
    long total = 1;
    for (int t = 0; t < D; ++t) total *= p;
    for (long code = 1; code < total; ++code) {
        std::vector<uint8_t> v(D);
        long rest = code;
        for (int t = 0; t < D; ++t) {
            v[t] = uint8_t(rest % p);
            rest /= p;
        }
        std::vector<uint8_t> r = x.reduce(v);
        if (std::all_of(r.begin(), r.end(), [](uint8_t z) { return z == 0; })) continue;
        GFMat m = x.basis().vstack(GFMat(p, 1, D));
        m.set_row(x.dim(), v);
        Subspace s = Subspace::span(std::move(m));
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace qgrass
