#pragma once

#include "qgrass/gf.hpp"

namespace qgrass {

/// Fixed splitting Omega = x0 (+) x1 with concrete coordinate charts: the
/// quotient Omega/x0 is charted by coefficients along the rows of x1, and
/// x0 by coefficients along its own RREF rows.  By default x1 is spanned by
/// the standard basis vectors at the non-pivot columns of x0 (deterministic,
/// hence reproducible runs); any other complement may be passed explicitly.
class SplitContext {
public:
    explicit SplitContext(Subspace x0) : SplitContext(std::move(x0), {}) {}

    SplitContext(Subspace x0, std::optional<Subspace> complement) : x0_(std::move(x0)) {
        piv_ = x0_.pivot_cols();
        if (complement) {
            x1_ = std::move(*complement);
            if (x1_.dim() + x0_.dim() != x0_.ambient() || x0_.intersect(x1_).dim() != 0)
                throw domain_error("SplitContext: not a complement of x0");
        } else {
            std::vector<bool> is_piv(x0_.ambient(), false);
            for (int c : piv_) is_piv[c] = true;
            GFMat m(p(), x0_.ambient() - x0_.dim(), x0_.ambient());
            int row = 0;
            for (int c = 0; c < x0_.ambient(); ++c)
                if (!is_piv[c]) m.set(row++, c, 1);
            x1_ = Subspace::span(std::move(m));
        }
        // coefficient solver against the rows of [x0; x1]
        int D = ambient();
        GFMat aug(p(), D, 2 * D);
        for (int i = 0; i < k(); ++i) {
            for (int j = 0; j < D; ++j) aug.set(i, j, x0_.basis().at(i, j));
            aug.set(i, D + i, 1);
        }
        for (int i = 0; i < D - k(); ++i) {
            for (int j = 0; j < D; ++j) aug.set(k() + i, j, x1_.basis().at(i, j));
            aug.set(k() + i, D + k() + i, 1);
        }
        coef_ = aug;
        coef_piv_ = coef_.rref();
    }

    const Subspace& x0() const { return x0_; }
    const Subspace& x1() const { return x1_; }
    int p() const { return x0_.p(); }
    int ambient() const { return x0_.ambient(); }
    int k() const { return x0_.dim(); }

    /// Coefficients of u against the basis rows of x0 followed by x1.
    std::vector<uint8_t> coefficients(const std::vector<uint8_t>& u) const {
        int D = ambient(), pp = p();
        std::vector<uint8_t> rem = u, c(D, 0);
        for (int i = 0; i < (int)coef_piv_.size(); ++i) {
            if (coef_piv_[i] >= D) break;
            int f = rem[coef_piv_[i]];
            if (!f) continue;
            for (int j = 0; j < D; ++j) rem[j] = uint8_t((rem[j] + (pp - f) * coef_.at(i, j)) % pp);
            for (int j = 0; j < D; ++j) c[j] = uint8_t((c[j] + f * coef_.at(i, D + j)) % pp);
        }
        return c;
    }

    /// u = u0 + u1 with u0 in x0 and u1 in x1.
    std::vector<uint8_t> part0(const std::vector<uint8_t>& u) const {
        std::vector<uint8_t> c = coefficients(u), u0(ambient(), 0);
        for (int r = 0; r < k(); ++r) {
            if (!c[r]) continue;
            for (int j = 0; j < ambient(); ++j)
                u0[j] = uint8_t((u0[j] + c[r] * x0_.basis().at(r, j)) % p());
        }
        return u0;
    }
    std::vector<uint8_t> part1(const std::vector<uint8_t>& u) const {
        std::vector<uint8_t> u0 = part0(u), u1(ambient());
        for (int j = 0; j < ambient(); ++j) u1[j] = uint8_t((u[j] + p() - u0[j]) % p());
        return u1;
    }

    /// Chart coordinates of the class u + x0 in F^(D-k).
    std::vector<uint8_t> quot_coords(const std::vector<uint8_t>& u) const {
        std::vector<uint8_t> c = coefficients(u);
        return std::vector<uint8_t>(c.begin() + k(), c.end());
    }

    /// Embedding of chart coordinates back into x1 < Omega.
    std::vector<uint8_t> quot_lift(const std::vector<uint8_t>& c) const {
        std::vector<uint8_t> u(ambient(), 0);
        for (int r = 0; r < ambient() - k(); ++r) {
            if (!c[r]) continue;
            for (int j = 0; j < ambient(); ++j)
                u[j] = uint8_t((u[j] + c[r] * x1_.basis().at(r, j)) % p());
        }
        return u;
    }

    /// Chart coordinates of v in x0 against the basis rows of x0.
    std::vector<uint8_t> x0_coords(const std::vector<uint8_t>& v) const {
        std::vector<uint8_t> c(k());
        for (int r = 0; r < k(); ++r) c[r] = v[piv_[r]];
        return c;
    }
    std::vector<uint8_t> x0_lift(const std::vector<uint8_t>& c) const {
        std::vector<uint8_t> v(ambient(), 0);
        for (int r = 0; r < k(); ++r) {
            if (!c[r]) continue;
            for (int j = 0; j < ambient(); ++j)
                v[j] = uint8_t((v[j] + c[r] * x0_.basis().at(r, j)) % p());
        }
        return v;
    }

    /// Image of x under the quotient map Omega -> Omega/x0 (in the chart).
    Subspace quotient(const Subspace& x) const {
        GFMat m(p(), x.dim(), ambient() - k());
        for (int i = 0; i < x.dim(); ++i) m.set_row(i, quot_coords(x.basis().row(i)));
        return Subspace::span(std::move(m));
    }

    /// x cap x0, charted inside F^k.
    Subspace meet_x0(const Subspace& x) const {
        Subspace w = x.intersect(x0_);
        GFMat m(p(), w.dim(), k());
        for (int i = 0; i < w.dim(); ++i) m.set_row(i, x0_coords(w.basis().row(i)));
        return Subspace::span(std::move(m));
    }

private:
    Subspace x0_, x1_;
    std::vector<int> piv_;
    GFMat coef_;
    std::vector<int> coef_piv_;
};

/// Triple coordinates (y, z, tau): y < Omega/x0, z < x0 (both in chart
/// coordinates) and tau a matrix sending the basis rows of y into the
/// quotient chart of x0/z (coordinates of F^k complementary to the pivots
/// of z).
struct TripleCoord {
    Subspace y;  // in F^(D-k)
    Subspace z;  // in F^k
    GFMat tau;   // dim y rows, k - dim z cols

    friend bool operator==(const TripleCoord& a, const TripleCoord& b) {
        return a.y == b.y && a.z == b.z && a.tau == b.tau;
    }
    friend bool operator<(const TripleCoord& a, const TripleCoord& b) {
        if (!(a.y == b.y)) return a.y < b.y;
        if (!(a.z == b.z)) return a.z < b.z;
        return a.tau < b.tau;
    }
};

namespace detail {

/// Coordinates of the class v + z in the chart of x0/z: reduce the F^k
/// vector by z's RREF rows and keep the non-pivot coordinates of z.
inline std::vector<uint8_t> modz_coords(const Subspace& z, const std::vector<uint8_t>& v_chart) {
    std::vector<uint8_t> r = z.reduce(v_chart);
    std::vector<bool> is_piv(z.ambient(), false);
    for (int c : z.pivot_cols()) is_piv[c] = true;
    std::vector<uint8_t> out;
    for (int c = 0; c < z.ambient(); ++c)
        if (!is_piv[c]) out.push_back(r[c]);
    return out;
}

/// Canonical lift of x0/z chart coordinates back to F^k (zeros at pivots).
inline std::vector<uint8_t> modz_lift(const Subspace& z, const std::vector<uint8_t>& coords) {
    std::vector<bool> is_piv(z.ambient(), false);
    for (int c : z.pivot_cols()) is_piv[c] = true;
    std::vector<uint8_t> out(z.ambient(), 0);
    int t = 0;
    for (int c = 0; c < z.ambient(); ++c)
        if (!is_piv[c]) out[c] = coords[t++];
    return out;
}

} // namespace detail

/// x  |->  (x + x0/x0, x cap x0, tau) where tau(u + x0) = u0 + (x cap x0).
inline TripleCoord to_triple(const Subspace& x, const SplitContext& ctx) {
    if (x.ambient() != ctx.ambient() || x.p() != ctx.p())
        throw domain_error("to_triple: ambient mismatch");
    TripleCoord t;
    t.y = ctx.quotient(x);
    t.z = ctx.meet_x0(x);
    t.tau = GFMat(ctx.p(), t.y.dim(), ctx.k() - t.z.dim());
    for (int r = 0; r < t.y.dim(); ++r) {
        // find u in x with u1-chart equal to this basis row of y
        std::vector<uint8_t> w = t.y.basis().row(r);
        GFMat sys(ctx.p(), x.dim(), (int)w.size());
        for (int i = 0; i < x.dim(); ++i) sys.set_row(i, ctx.quot_coords(x.basis().row(i)));
        auto sol = sys.solve_left(w);
        if (!sol) throw internal_error("to_triple: quotient image row not hit");
        std::vector<uint8_t> u(ctx.ambient(), 0);
        for (int i = 0; i < x.dim(); ++i) {
            if (!(*sol)[i]) continue;
            for (int j = 0; j < ctx.ambient(); ++j)
                u[j] = uint8_t((u[j] + (*sol)[i] * x.basis().at(i, j)) % ctx.p());
        }
        std::vector<uint8_t> u0c = ctx.x0_coords(ctx.part0(u));
        std::vector<uint8_t> q = detail::modz_coords(t.z, u0c);
        for (int c = 0; c < (int)q.size(); ++c) t.tau.set(r, c, q[c]);
    }
    return t;
}

/// Inverse of to_triple: the subspace of all u with u1 + x0 in y and
/// u0 in tau(u1 + x0).
inline Subspace from_triple(const TripleCoord& t, const SplitContext& ctx) {
    if (t.tau.rows() != t.y.dim() || t.tau.cols() != ctx.k() - t.z.dim())
        throw domain_error("from_triple: tau shape mismatch");
    GFMat gens(ctx.p(), t.y.dim() + t.z.dim(), ctx.ambient());
    for (int r = 0; r < t.y.dim(); ++r) {
        std::vector<uint8_t> u = ctx.quot_lift(t.y.basis().row(r));
        std::vector<uint8_t> tz = detail::modz_lift(t.z, t.tau.row(r));
        std::vector<uint8_t> v = ctx.x0_lift(tz);
        for (int j = 0; j < ctx.ambient(); ++j) u[j] = uint8_t((u[j] + v[j]) % ctx.p());
        gens.set_row(r, u);
    }
    for (int r = 0; r < t.z.dim(); ++r) gens.set_row(t.y.dim() + r, ctx.x0_lift(t.z.basis().row(r)));
    return Subspace::span(std::move(gens));
}

/// Componentwise order on triples: y <= y', z <= z', and the tau-cosets nest.
inline bool triple_leq(const TripleCoord& a, const TripleCoord& b, const SplitContext& ctx) {
    if (!a.y.leq(b.y) || !a.z.leq(b.z)) return false;
    // for each basis row u of a.y: lift(a.tau(u)) - lift(b.tau(u)) in b.z
    for (int r = 0; r < a.y.dim(); ++r) {
        std::vector<uint8_t> u = a.y.basis().row(r);
        std::vector<uint8_t> va = detail::modz_lift(a.z, a.tau.row(r));
        // evaluate b.tau at u: express u in b.y's basis
        GFMat sys = b.y.basis();
        auto sol = sys.solve_left(u);
        if (!sol) return false;
        std::vector<uint8_t> vb(ctx.k(), 0);
        for (int i = 0; i < b.y.dim(); ++i) {
            if (!(*sol)[i]) continue;
            std::vector<uint8_t> w = detail::modz_lift(b.z, b.tau.row(i));
            for (int j = 0; j < ctx.k(); ++j) vb[j] = uint8_t((vb[j] + (*sol)[i] * w[j]) % ctx.p());
        }
        std::vector<uint8_t> diff(ctx.k());
        for (int j = 0; j < ctx.k(); ++j) diff[j] = uint8_t((va[j] + ctx.p() - vb[j]) % ctx.p());
        if (!b.z.contains(diff)) return false;
    }
    return true;
}

/// rank(tau(x) - tau(x')) for x, x' with the same y and z components;
/// equals dim(x / x cap x').
inline int tau_rank_diff(const Subspace& x, const Subspace& xp, const SplitContext& ctx) {
    TripleCoord a = to_triple(x, ctx), b = to_triple(xp, ctx);
    if (!(a.y == b.y) || !(a.z == b.z))
        throw domain_error("tau_rank_diff: triples not in the same block");
    return (a.tau - b.tau).rank();
}

} // namespace qgrass
