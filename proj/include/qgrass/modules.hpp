#pragma once

#include "qgrass/homs.hpp"
#include "qgrass/linalg.hpp"
#include "qgrass/scalar_context.hpp"

#include <optional>
#include <sstream>

namespace qgrass {

struct not_completely_reducible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Label (m, n, delta, lambda) of an irreducible module of the covering
/// algebra: the twisted tensor module of the two simple factors.
template <class F>
struct WLabel {
    int m = 0, n = 0;
    int delta = 1;
    F lambda = F(1);

    friend bool operator==(const WLabel& x, const WLabel& y) {
        return x.m == y.m && x.n == y.n && x.delta == y.delta && x.lambda == y.lambda;
    }
    friend bool operator<(const WLabel& x, const WLabel& y) {
        if (x.m != y.m) return x.m < y.m;
        if (x.n != y.n) return x.n < y.n;
        if (x.delta != y.delta) return x.delta < y.delta;
        return x.lambda < y.lambda;
    }
    int dim() const { return (m + 1) * (n + 1); }
    std::string str() const {
        std::ostringstream os;
        os << "W(" << m << "," << n << "," << (delta > 0 ? "+1" : "-1") << "," << lambda.str() << ")";
        return os.str();
    }
};

/// Label (a, b, c, d) of a (d+1)-dimensional q-Hahn module; b and b^-1 give
/// the same class.
template <class F>
struct HLabel {
    F a = F(0), b = F(1), c = F(0);
    int d = 0;

    int dim() const { return d + 1; }
    std::string str() const {
        return "H(" + a.str() + "," + b.str() + "," + c.str() + "," + std::to_string(d) + ")";
    }
    friend bool operator==(const HLabel& x, const HLabel& y) {
        if (x.d != y.d || !(x.a == y.a) || !(x.c == y.c)) return false;
        return x.b == y.b || F(1) / x.b == y.b;
    }
};

// ---------------------------------------------------------------------------
// modules of the covering algebra as explicit matrices

/// Finite-dimensional module of the covering algebra: one exact matrix per
/// generator (inverses included).  The defining relations are verified at
/// construction.
template <class Ctx>
class WRep {
public:
    using F = typename Ctx::F;

    WRep(Ctx ctx, Mat<F> e1, Mat<F> e2, Mat<F> f1, Mat<F> f2, Mat<F> k1, Mat<F> k2, Mat<F> i)
        : ctx_(ctx), e1_(std::move(e1)), e2_(std::move(e2)), f1_(std::move(f1)), f2_(std::move(f2)),
          k1_(std::move(k1)), k2_(std::move(k2)), i_(std::move(i)) {
        k1i_ = k1_.inverse();
        k2i_ = k2_.inverse();
        ii_ = i_.inverse();
        verify_relations();
    }

    const Ctx& ctx() const { return ctx_; }
    int dim() const { return e1_.rows(); }

    const Mat<F>& E1() const { return e1_; }
    const Mat<F>& E2() const { return e2_; }
    const Mat<F>& F1() const { return f1_; }
    const Mat<F>& F2() const { return f2_; }
    const Mat<F>& K1() const { return k1_; }
    const Mat<F>& K2() const { return k2_; }
    const Mat<F>& I() const { return i_; }

    const Mat<F>& generator(int g, bool inverse = false) const {
        switch (g) {
        case gen::E1: return e1_;
        case gen::E2: return e2_;
        case gen::F1: return f1_;
        case gen::F2: return f2_;
        case gen::K1: return inverse ? k1i_ : k1_;
        case gen::K2: return inverse ? k2i_ : k2_;
        case gen::I: return inverse ? ii_ : i_;
        default: throw internal_error("WRep: bad generator");
        }
    }

    /// Evaluate a PBW element of the covering algebra on this module.
    Mat<F> evaluate(const PBW& x) const {
        if (x.alg() != Alg::W) throw domain_error("WRep::evaluate: not a covering-algebra element");
        Mat<F> out(dim(), dim());
        for (auto& [mono, coeff] : x.terms()) {
            Mat<F> term = Mat<F>::identity(dim());
            for (int g = 0; g < 7; ++g) {
                long e = mono[g];
                if (e == 0) continue;
                const Mat<F>& base = generator(g, e < 0);
                for (long t = 0; t < (e < 0 ? -e : e); ++t) term = term * base;
            }
            out = out + term.scaled(ctx_.from(coeff));
        }
        return out;
    }

    Mat<F> comult_lift_K() const { return k1_ * k2_; }

private:
    Ctx ctx_;
    Mat<F> e1_, e2_, f1_, f2_, k1_, k2_, i_, k1i_, k2i_, ii_;

    void verify_relations() const {
        int n = dim();
        Mat<F> id = Mat<F>::identity(n);
        auto br = [](const Mat<F>& a, const Mat<F>& b) { return a * b - b * a; };
        auto check = [](bool ok, const char* what) {
            if (!ok) throw domain_error(std::string("WRep: defining relation violated: ") + what);
        };
        for (const Mat<F>* g : {&e1_, &e2_, &f1_, &f2_, &k1_, &k2_})
            check(br(i_, *g).is_zero(), "I central");
        check((i_ * ii_) == id && (k1_ * k1i_) == id && (k2_ * k2i_) == id, "inverses");
        check(br(k1_, e2_).is_zero() && br(k1_, f2_).is_zero() && br(k1_, k2_).is_zero() &&
                  br(k2_, e1_).is_zero() && br(k2_, f1_).is_zero(),
              "index-1/index-2 commutation");
        F q = ctx_.q_power(1), qi = ctx_.q_power(-1);
        auto qbr = [&](const Mat<F>& a, const Mat<F>& b) { return (a * b).scaled(q) - (b * a).scaled(qi); };
        check(qbr(e1_, k1_).is_zero() && qbr(k1_, f1_).is_zero() && qbr(e2_, k2_).is_zero() &&
                  qbr(k2_, f2_).is_zero(),
              "q-commutation with K");
        check(br(e1_, e2_).is_zero() && br(e1_, f2_).is_zero() && br(f1_, e2_).is_zero() &&
                  br(f1_, f2_).is_zero(),
              "cross commutation");
        F inv_qq = F(1) / (q - qi);
        check(br(e1_, f1_) == (k1_ - i_ * k1i_).scaled(inv_qq), "[E1,F1]");
        check(br(e2_, f2_) == (i_ * k2_ - k2i_).scaled(inv_qq), "[E2,F2]");
    }
};

/// The simple (n+1)-dimensional module of U_q(sl2) in its standard basis,
/// packaged as matrices.
template <class Ctx>
struct URep {
    using F = typename Ctx::F;
    Ctx ctx;
    Mat<F> E, F_, K;

    URep(Ctx c, int n) : ctx(c), E(n + 1, n + 1), F_(n + 1, n + 1), K(n + 1, n + 1) {
        for (int i = 0; i <= n; ++i) {
            if (i >= 1) E.at(i - 1, i) = ctx.q_int(i) * ctx.q_int(n - i + 1);
            if (i < n) F_.at(i + 1, i) = F(1);
            K.at(i, i) = ctx.q_power(n - 2 * i);
        }
        F q = ctx.q_power(1), qi = ctx.q_power(-1);
        bool ok = ((E * K).scaled(q) - (K * E).scaled(qi)).is_zero() &&
                  ((K * F_).scaled(q) - (F_ * K).scaled(qi)).is_zero() &&
                  (E * F_ - F_ * E) == (K - K.inverse()).scaled(F(1) / (q - qi));
        if (!ok) throw internal_error("URep: defining relations violated");
    }

    Mat<F> casimir() const {
        F w2 = (ctx.q_power(1) - ctx.q_power(-1)) * (ctx.q_power(1) - ctx.q_power(-1));
        return (E * F_).scaled(w2) + K.scaled(ctx.q_power(-1)) + K.inverse().scaled(ctx.q_power(1));
    }
};

template <class Ctx>
URep<Ctx> build_Ln(const Ctx& ctx, int n) {
    if (n < 0) throw domain_error("build_Ln: n >= 0 required");
    return URep<Ctx>(ctx, n);
}

/// The tensor module L_m (x) L_n of the covering algebra; basis index
/// i*(n+1)+j for v_i (x) v_j.
template <class Ctx>
WRep<Ctx> build_tensor(const Ctx& ctx, int m, int n) {
    using F = typename Ctx::F;
    int N = (m + 1) * (n + 1);
    auto idx = [&](int i, int j) { return i * (n + 1) + j; };
    Mat<F> e1(N, N), e2(N, N), f1(N, N), f2(N, N), k1(N, N), k2(N, N), iop(N, N);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) {
            int c = idx(i, j);
            if (i >= 1) e1.at(idx(i - 1, j), c) = ctx.q_int(i) * ctx.q_int(m - i + 1);
            if (j >= 1) e2.at(idx(i, j - 1), c) = ctx.q_int(j) * ctx.q_int(n - j + 1);
            if (i < m) f1.at(idx(i + 1, j), c) = F(1);
            if (j < n) f2.at(idx(i, j + 1), c) = F(1);
            k1.at(c, c) = ctx.q_power(m - 2 * i);
            k2.at(c, c) = ctx.q_power(n - 2 * j);
            iop.at(c, c) = F(1);
        }
    return WRep<Ctx>(ctx, std::move(e1), std::move(e2), std::move(f1), std::move(f2), std::move(k1),
                     std::move(k2), std::move(iop));
}

/// Twist a module by the automorphism sigma_{delta,lambda}: each generator
/// matrix is rescaled by the automorphism's factor.
template <class Ctx>
WRep<Ctx> twist(const WRep<Ctx>& rep, int delta, const typename Ctx::F& lambda) {
    using F = typename Ctx::F;
    if (lambda.is_zero()) throw domain_error("twist: lambda must be nonzero");
    if (delta != 1 && delta != -1) throw domain_error("twist: delta must be +-1");
    F d = F(delta);
    return WRep<Ctx>(rep.ctx(), rep.E1().scaled(lambda), rep.E2().scaled(d * lambda), rep.F1(), rep.F2(),
                     rep.K1().scaled(lambda), rep.K2().scaled(d / lambda), rep.I().scaled(lambda * lambda));
}

/// The two-dimensional module with unipotent K1, K2, I and zero E/F parts:
/// satisfies all defining relations but is not completely reducible.
template <class Ctx>
WRep<Ctx> build_unipotent_2dim(const Ctx& ctx) {
    using F = typename Ctx::F;
    Mat<F> z(2, 2), k1(2, 2), k2(2, 2), iop(2, 2);
    k1.at(0, 0) = k1.at(1, 1) = F(1);
    k1.at(0, 1) = F(1);
    k2.at(0, 0) = k2.at(1, 1) = F(1);
    k2.at(0, 1) = F(-1);
    iop.at(0, 0) = iop.at(1, 1) = F(1);
    iop.at(0, 1) = F(2);
    return WRep<Ctx>(ctx, z, z, z, z, std::move(k1), std::move(k2), std::move(iop));
}

// ---------------------------------------------------------------------------
// exact eigen machinery

/// Distinct eigenvalues of X with eigen-row-bases, harvested from a
/// candidate list extended with the matrix diagonal.  Returns pairs
/// (eigenvalue, basis rows of the eigenspace).
template <class F>
std::vector<std::pair<F, Mat<F>>> eigenspaces(const Mat<F>& X, std::vector<F> candidates) {
    int n = X.rows();
    for (int i = 0; i < n; ++i) candidates.push_back(X.at(i, i));
    std::vector<std::pair<F, Mat<F>>> out;
    auto seen = [&](const F& v) {
        for (auto& [w, b] : out)
            if (w == v) return true;
        return false;
    };
    for (auto& lam : candidates) {
        if (seen(lam)) continue;
        Mat<F> shifted = X;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= lam;
        Mat<F> ker = shifted.kernel();
        if (ker.rows() > 0) out.push_back({lam, std::move(ker)});
    }
    return out;
}

/// Exact diagonalizability: every candidate eigenvalue has matching rank of
/// (X - lam) and (X - lam)^2, and the eigenspace dimensions fill the space.
template <class F>
bool is_diagonalizable(const Mat<F>& X, const std::vector<F>& candidates) {
    int n = X.rows(), total = 0;
    for (auto& [lam, basis] : eigenspaces(X, candidates)) {
        Mat<F> s = X;
        for (int i = 0; i < n; ++i) s.at(i, i) -= lam;
        if (s.rank() != (s * s).rank()) return false;
        total += basis.rows();
    }
    return total == n;
}

// ---------------------------------------------------------------------------
// weights, identification, decomposition

template <class F>
struct Weight {
    F k1, k2, i;
    friend bool operator==(const Weight& a, const Weight& b) {
        return a.k1 == b.k1 && a.k2 == b.k2 && a.i == b.i;
    }
};

/// Basis of ker E1 cap ker E2 split by joint (K1, K2, I) eigenvalue.
/// Throws not_completely_reducible when the restricted actions fail to be
/// diagonalizable on the highest-weight space.
template <class Ctx>
std::vector<std::pair<Weight<typename Ctx::F>, Mat<typename Ctx::F>>>
find_highest_weight_vectors(const WRep<Ctx>& rep) {
    using F = typename Ctx::F;
    int n = rep.dim();
    // stacked kernel of E1 and E2
    Mat<F> st(2 * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            st.at(i, j) = rep.E1().at(i, j);
            st.at(n + i, j) = rep.E2().at(i, j);
        }
    Mat<F> hw = st.kernel(); // rows span the highest-weight space
    std::vector<F> grid = signed_q_power_grid(rep.ctx(), 2 * n + 4);

    std::vector<std::pair<Weight<F>, Mat<F>>> out;
    struct Part {
        std::vector<F> eigs;
        Mat<F> basis;
    };
    std::vector<Part> parts{{{}, hw}};
    const Mat<F>* ops[3] = {&rep.K1(), &rep.K2(), &rep.I()};
    for (int stage = 0; stage < 3; ++stage) {
        std::vector<Part> next;
        for (auto& part : parts) {
            if (part.basis.rows() == 0) continue;
            Mat<F> restricted = restrict_to_rows(*ops[stage], part.basis);
            auto spaces = eigenspaces(restricted, grid);
            int covered = 0;
            for (auto& [lam, coords] : spaces) covered += coords.rows();
            if (covered != part.basis.rows())
                throw not_completely_reducible("highest-weight space not split by K1/K2/I");
            for (auto& [lam, coords] : spaces) {
                // lift coordinate rows through the part basis
                Mat<F> lifted(coords.rows(), n);
                for (int i = 0; i < coords.rows(); ++i)
                    for (int j = 0; j < part.basis.rows(); ++j) {
                        if (coords.at(i, j).is_zero()) continue;
                        for (int c = 0; c < n; ++c)
                            lifted.at(i, c) += coords.at(i, j) * part.basis.at(j, c);
                    }
                Part p{part.eigs, std::move(lifted)};
                p.eigs.push_back(lam);
                next.push_back(std::move(p));
            }
        }
        parts = std::move(next);
    }
    for (auto& part : parts)
        out.push_back({Weight<F>{part.eigs[0], part.eigs[1], part.eigs[2]}, std::move(part.basis)});
    return out;
}

/// Solve (lambda q^m, delta lambda^-1 q^n, lambda^2) = weight for the label.
template <class Ctx>
WLabel<typename Ctx::F> identify_W_irreducible(const Ctx& ctx, const Weight<typename Ctx::F>& w) {
    using F = typename Ctx::F;
    if (w.k1.is_zero() || w.k2.is_zero() || w.i.is_zero())
        throw domain_error("identify_W_irreducible: weight components must be nonzero");
    auto em = (w.k1 * w.k1 / w.i).as_q_power();
    if (!em || *em % 2 != 0 || *em < 0)
        throw domain_error("identify_W_irreducible: K1^2/I is not an even nonnegative q-power");
    int m = *em / 2;
    F lambda = w.k1 * ctx.q_power(-m);
    if (!(lambda * lambda == w.i)) throw domain_error("identify_W_irreducible: I != lambda^2");
    auto en = (w.k2 * w.k2 * w.i).as_q_power();
    if (!en || *en % 2 != 0 || *en < 0)
        throw domain_error("identify_W_irreducible: K2^2*I is not an even nonnegative q-power");
    int n = *en / 2;
    F d = w.k2 * lambda * ctx.q_power(-n);
    int delta;
    if (d == F(1))
        delta = 1;
    else if (d == F(-1))
        delta = -1;
    else
        throw domain_error("identify_W_irreducible: delta not +-1");
    return WLabel<F>{m, n, delta, lambda};
}

/// Full decomposition of a completely reducible module into labeled
/// irreducibles with multiplicities.
template <class Ctx>
std::vector<std::pair<WLabel<typename Ctx::F>, int>> decompose_W(const WRep<Ctx>& rep) {
    using F = typename Ctx::F;
    std::vector<F> grid = signed_q_power_grid(rep.ctx(), 2 * rep.dim() + 4);
    if (!is_diagonalizable(rep.K1(), grid))
        throw not_completely_reducible("K1 is not diagonalizable");
    std::vector<std::pair<WLabel<F>, int>> out;
    int total = 0;
    for (auto& [w, basis] : find_highest_weight_vectors(rep)) {
        WLabel<F> label = identify_W_irreducible(rep.ctx(), w);
        total += label.dim() * basis.rows();
        bool found = false;
        for (auto& [l, mult] : out)
            if (l == label) {
                mult += basis.rows();
                found = true;
            }
        if (!found) out.push_back({label, basis.rows()});
    }
    if (total != rep.dim())
        throw not_completely_reducible("highest-weight census does not fill the module");
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ---------------------------------------------------------------------------
// q-Hahn modules

/// q-Hahn module given by matrices for A, B, C.  Construction verifies that
/// the three derived elements act as scalars commuting with everything, and
/// records those scalars.
template <class Ctx>
class HRep {
public:
    using F = typename Ctx::F;

    HRep(Ctx ctx, Mat<F> a, Mat<F> b, Mat<F> c) : ctx_(ctx), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        F q = ctx_.q_power(1), qi = ctx_.q_power(-1);
        F inv_qq = F(1) / (q - qi);
        F qpq = q + qi;
        auto qbr = [&](const Mat<F>& x, const Mat<F>& y) { return (x * y).scaled(q) - (y * x).scaled(qi); };
        Mat<F> alpha = qbr(b_, c_).scaled(inv_qq) + a_.scaled(qpq);
        Mat<F> beta = qbr(c_, a_).scaled(inv_qq);
        Mat<F> gamma = qbr(a_, b_).scaled(inv_qq) + c_.scaled(qpq);
        alpha_ = as_scalar(alpha, "alpha");
        beta_ = as_scalar(beta, "beta");
        gamma_ = as_scalar(gamma, "gamma");
    }

    const Ctx& ctx() const { return ctx_; }
    int dim() const { return a_.rows(); }
    const Mat<F>& A() const { return a_; }
    const Mat<F>& B() const { return b_; }
    const Mat<F>& C() const { return c_; }
    const F& alpha() const { return alpha_; }
    const F& beta() const { return beta_; }
    const F& gamma() const { return gamma_; }

    /// Absolute irreducibility by Burnside's criterion: the unital algebra
    /// generated by A, B, C spans all of End(V).  (Cyclic closure from the
    /// coordinate vectors alone is not enough: a proper invariant subspace
    /// can avoid every coordinate axis.)
    bool irreducible() const {
        int n = dim();
        RowSpace<F> span(long(n) * n);
        std::vector<Mat<F>> basis;
        auto push = [&](const Mat<F>& m) {
            typename RowSpace<F>::Row row;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!m.at(i, j).is_zero()) row.push_back({i * n + j, m.at(i, j)});
            if (span.insert(std::move(row)) >= 0) {
                basis.push_back(m);
                return true;
            }
            return false;
        };
        push(Mat<F>::identity(n));
        push(a_);
        push(b_);
        push(c_);
        for (size_t head = 0; head < basis.size() && span.dim() < n * n; ++head) {
            for (const Mat<F>* g : {&a_, &b_, &c_}) {
                if (span.dim() == n * n) break;
                push(*g * basis[head]);
            }
        }
        return span.dim() == n * n;
    }

private:
    Ctx ctx_;
    Mat<F> a_, b_, c_;
    F alpha_, beta_, gamma_;

    F as_scalar(const Mat<F>& m, const char* what) const {
        F v = m.at(0, 0);
        Mat<F> diff = m - Mat<F>::identity(dim()).scaled(v);
        if (!diff.is_zero())
            throw domain_error(std::string("HRep: derived central element not scalar: ") + what);
        return v;
    }
};

/// Parameters of the (d+1)-dimensional quotient module: diagonal/step data.
template <class Ctx>
struct VdParams {
    using F = typename Ctx::F;
    F a, b, c, nu;
    int d;

    VdParams(const Ctx& ctx, F a_, F b_, F c_, int d_) : a(a_), b(b_), c(c_), nu(ctx.q_power(d_)), d(d_) {
        if (b.is_zero()) throw domain_error("Vd: b must be nonzero");
    }

    F theta(const Ctx& ctx, int i) const { return a * nu * ctx.q_power(-2 * i); }
    F theta_star(const Ctx& ctx, int i) const {
        return b * nu * ctx.q_power(-2 * i) + (F(1) / (b * nu)) * ctx.q_power(2 * i);
    }
    F theta_eps(const Ctx& ctx, int i) const { return c / nu * ctx.q_power(2 * i); }
    F phi(const Ctx& ctx, int i) const {
        return (ctx.q_power(i) - ctx.q_power(-i)) * (nu * ctx.q_power(1 - i) - ctx.q_power(i - 1) / nu) *
               (c - a * b * nu * ctx.q_power(1 - 2 * i));
    }
    F phi_eps(const Ctx& ctx, int i) const {
        return (ctx.q_power(i) - ctx.q_power(-i)) * (nu * ctx.q_power(1 - i) - ctx.q_power(i - 1) / nu) *
               (a - c / b / nu * ctx.q_power(2 * i - 1));
    }
    F omega(const Ctx& ctx) const { return c * (b + F(1) / b) + a * (nu * ctx.q_power(1) + ctx.q_power(-1) / nu); }
    F omega_star() const { return a * c; }
    F omega_eps(const Ctx& ctx) const { return a * (b + F(1) / b) + c * (nu * ctx.q_power(1) + ctx.q_power(-1) / nu); }
};

template <class Ctx>
HRep<Ctx> build_Vd(const Ctx& ctx, const typename Ctx::F& a, const typename Ctx::F& b,
                   const typename Ctx::F& c, int d) {
    using F = typename Ctx::F;
    VdParams<Ctx> p(ctx, a, b, c, d);
    int n = d + 1;
    Mat<F> A(n, n), B(n, n), C(n, n);
    for (int i = 0; i <= d; ++i) {
        A.at(i, i) = p.theta(ctx, i);
        B.at(i, i) = p.theta_star(ctx, i);
        C.at(i, i) = p.theta_eps(ctx, i);
        if (i >= 1) {
            A.at(i - 1, i) = p.phi(ctx, i);
            C.at(i - 1, i) = p.phi_eps(ctx, i);
        }
        if (i < d) B.at(i + 1, i) = F(1);
    }
    return HRep<Ctx>(ctx, std::move(A), std::move(B), std::move(C));
}

/// Irreducibility criterion for the quotient module, by the two exclusion
/// lists on (a, b, c, d).
template <class Ctx>
bool vd_irreducible(const Ctx& ctx, const typename Ctx::F& a, const typename Ctx::F& b,
                    const typename Ctx::F& c, int d) {
    for (int i = 1; i <= d; ++i) {
        if (a == b * c * ctx.q_power(d - 2 * i + 1)) return false;
        if (c == a * b * ctx.q_power(d - 2 * i + 1)) return false;
    }
    return true;
}

/// Recover (a, b, c, d) of an irreducible module from its dimension and the
/// traces of A, B, C; b is normalized to the solution with the largest
/// q-exponent.  Throws when the trace system has no q-power solution for b
/// or the module is visibly not of quotient type.
template <class Ctx>
HLabel<typename Ctx::F> identify_H_irreducible(const HRep<Ctx>& rep) {
    using F = typename Ctx::F;
    const Ctx& ctx = rep.ctx();
    if (!rep.irreducible()) throw domain_error("identify_H_irreducible: module is reducible");
    int d = rep.dim() - 1;
    F s = ctx.q_int(d + 1);
    F a = rep.A().trace() / s;
    F c = rep.C().trace() / s;
    F t = rep.B().trace() / s;
    std::optional<F> b;
    for (int j = 4 * rep.dim() + 8; j >= 0 && !b; --j) {
        F cand = ctx.q_power(j) + ctx.q_power(-j);
        if (t == cand) b = ctx.q_power(j);
        else if (t == -cand) b = -ctx.q_power(j);
    }
    if (!b) throw domain_error("identify_H_irreducible: trace of B is not of q-power form");
    // cross-check the central characters
    VdParams<Ctx> p(ctx, a, *b, c, d);
    if (!(rep.alpha() == p.omega(ctx) && rep.beta() == p.omega_star() && rep.gamma() == p.omega_eps(ctx)))
        throw domain_error("identify_H_irreducible: central characters disagree with the trace solution");
    return HLabel<F>{a, *b, c, d};
}

// ---------------------------------------------------------------------------
// eigenspace decomposition of twisted tensor modules under the q-Hahn action

/// Closed-form label of the theta-eigenspace component of the twisted
/// tensor module with highest parameters (m, n, delta, lambda), at level l.
template <class Ctx>
HLabel<typename Ctx::F> clebsch_gordan_labels(const Ctx& ctx, int m, int n, int delta,
                                              const typename Ctx::F& lambda, int l) {
    using F = typename Ctx::F;
    if (l < 0 || l > m + n) throw domain_error("clebsch_gordan_labels: level out of range");
    F d(delta);
    int mn = std::min(m, l), nn = std::min(n, l);
    HLabel<F> out;
    out.a = d * lambda * ctx.q_power(l - n - mn + nn);
    out.b = d * ctx.q_power(m + n + l - mn - nn + 1);
    out.c = lambda * ctx.q_power(l - m - nn + mn);
    out.d = mn + nn - l;
    return out;
}

template <class Ctx>
struct EigenspaceComponent {
    typename Ctx::F eigenvalue;         // of the lifted K on the twisted module
    HRep<Ctx> restricted;               // A, B, C restricted to the eigenspace
    HLabel<typename Ctx::F> identified; // from traces
    HLabel<typename Ctx::F> predicted;  // closed form
};

/// Split the twisted tensor module along the lifted K operator and restrict
/// the three q-Hahn images to each eigenspace.
template <class Ctx>
std::vector<EigenspaceComponent<Ctx>> h_eigenspace_decompose(const Ctx& ctx, int m, int n, int delta,
                                                             const typename Ctx::F& lambda) {
    using F = typename Ctx::F;
    WRep<Ctx> rep = twist(build_tensor(ctx, m, n), delta, lambda);
    Mat<F> dk = rep.comult_lift_K();
    Mat<F> A = rep.evaluate(hahn_images_w().A);
    Mat<F> B = rep.evaluate(hahn_images_w().B);
    Mat<F> C = rep.evaluate(hahn_images_w().C);
    std::vector<EigenspaceComponent<Ctx>> out;
    for (int l = 0; l <= m + n; ++l) {
        F theta = F(delta) * ctx.q_power(m + n - 2 * l);
        Mat<F> shifted = dk;
        for (int i = 0; i < rep.dim(); ++i) shifted.at(i, i) -= theta;
        Mat<F> basis = shifted.kernel();
        if (basis.rows() == 0) throw internal_error("h_eigenspace_decompose: empty eigenspace");
        HRep<Ctx> restricted(ctx, restrict_to_rows(A, basis), restrict_to_rows(B, basis),
                             restrict_to_rows(C, basis));
        HLabel<F> found = identify_H_irreducible(restricted);
        HLabel<F> predicted = clebsch_gordan_labels(ctx, m, n, delta, lambda, l);
        out.push_back({theta, std::move(restricted), found, predicted});
    }
    return out;
}

/// The orbit predicate: whether level l of (m, n, delta, lambda) and level
/// l' of (m', n', delta', lambda') give isomorphic q-Hahn modules.
template <class Ctx>
bool h_component_isomorphic(const Ctx& ctx, int m, int n, int delta, const typename Ctx::F& lambda, int l,
                            int mp, int np, int deltap, const typename Ctx::F& lambdap, int lp) {
    if (delta != deltap) return false;
    using Tup = std::tuple<int, int, int, typename Ctx::F>;
    Tup probe{mp, np, lp, lambdap};
    std::vector<Tup> orbit = {
        {m, n, l, lambda},
        {m + n - l, l, n, lambda * ctx.q_power(l - n)},
        {l, m + n - l, m, lambda * ctx.q_power(l - m)},
        {n, m, m + n - l, lambda * ctx.q_power(2 * l - m - n)},
    };
    for (auto& t : orbit)
        if (std::get<0>(t) == std::get<0>(probe) && std::get<1>(t) == std::get<1>(probe) &&
            std::get<2>(t) == std::get<2>(probe) && std::get<3>(t) == std::get<3>(probe))
            return true;
    return false;
}

} // namespace qgrass
