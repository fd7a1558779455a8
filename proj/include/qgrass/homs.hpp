#pragma once

#include "qgrass/rewrite.hpp"

#include <array>
#include <functional>

namespace qgrass {

/// Algebra homomorphism between two of the fixed algebras, given by the
/// images of generators (and of the inverses of the invertible ones).
class Hom {
public:
    Hom(Alg src, Alg dst) : src_(src), dst_(dst), img_(system(src).ngens()), img_inv_(system(src).ngens()) {}

    Alg src() const { return src_; }
    Alg dst() const { return dst_; }

    void set_image(int g, PBW pos) { img_[g] = std::move(pos); }
    void set_image(int g, PBW pos, PBW neg) {
        img_[g] = std::move(pos);
        img_inv_[g] = std::move(neg);
    }
    const PBW& image(int g) const { return img_[g]; }

    PBW apply_word(const Word& w) const {
        const RewriteSystem& d = system(dst_);
        PBW r = d.one();
        for (auto& gp : w) {
            const PBW& base = gp.e >= 0 ? img_[gp.g] : img_inv_[gp.g];
            if (base.is_zero() && !(gp.e >= 0 ? img_[gp.g].is_zero() : false))
                throw internal_error("Hom: missing generator image");
            long n = gp.e >= 0 ? gp.e : -gp.e;
            for (long i = 0; i < n; ++i) r = d.mul(r, base);
        }
        return r;
    }

    /// Extend multiplicatively and linearly to a whole element.
    PBW apply(const PBW& x) const {
        PBW r(dst_);
        for (auto& [m, c] : x.terms()) r += apply_word(RewriteSystem::mono_to_word(m)).scaled(c);
        return r;
    }

private:
    Alg src_, dst_;
    std::vector<PBW> img_, img_inv_;
};

// ---------------------------------------------------------------------------
// tensor embeddings U -> U (x) U

inline Mono uu_mono(const Mono& left, const Mono& right) {
    return Mono{left[0], left[1], left[2], right[0], right[1], right[2]};
}

/// a (x) b in the paired PBW basis of U (x) U.
inline PBW tensor(const PBW& a, const PBW& b) {
    if (a.alg() != Alg::U || b.alg() != Alg::U) throw internal_error("tensor: expects U factors");
    PBW r(Alg::UU);
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) r.add(uu_mono(ma, mb), ca * cb);
    return r;
}

// ---------------------------------------------------------------------------
// named elements

/// Casimir element (q - q^-1)^2 E F + q^-1 K + q K^-1 of U_q(sl2).
inline const PBW& casimir_u() {
    static const PBW v = [] {
        const RewriteSystem& u = system(Alg::U);
        RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
        return u.element({
            {w2, {{gen::UE, 1}, {gen::UF, 1}}},
            {RatFun::q_power(-1), {{gen::UK, 1}}},
            {RatFun::q_power(1), {{gen::UK, -1}}},
        });
    }();
    return v;
}

/// First central element of the covering algebra:
/// (q - q^-1)^2 E1 F1 + q^-1 K1 + q I K1^-1.
inline const PBW& casimir_w1() {
    static const PBW v = [] {
        const RewriteSystem& w = system(Alg::W);
        RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
        return w.element({
            {w2, {{gen::E1, 1}, {gen::F1, 1}}},
            {RatFun::q_power(-1), {{gen::K1, 1}}},
            {RatFun::q_power(1), {{gen::I, 1}, {gen::K1, -1}}},
        });
    }();
    return v;
}

/// Second central element: (q - q^-1)^2 E2 F2 + q^-1 I K2 + q K2^-1.
inline const PBW& casimir_w2() {
    static const PBW v = [] {
        const RewriteSystem& w = system(Alg::W);
        RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
        return w.element({
            {w2, {{gen::E2, 1}, {gen::F2, 1}}},
            {RatFun::q_power(-1), {{gen::I, 1}, {gen::K2, 1}}},
            {RatFun::q_power(1), {{gen::K2, -1}}},
        });
    }();
    return v;
}

// ---------------------------------------------------------------------------
// the five algebra homomorphisms

/// Comultiplication U -> U (x) U.
inline const Hom& hom_comult() {
    static const Hom h = [] {
        const RewriteSystem& u = system(Alg::U);
        Hom h(Alg::U, Alg::UU);
        PBW one = u.one();
        h.set_image(gen::UE, tensor(u.generator(gen::UE), one) + tensor(u.generator(gen::UK, -1), u.generator(gen::UE)));
        h.set_image(gen::UF, tensor(u.generator(gen::UF), u.generator(gen::UK)) + tensor(one, u.generator(gen::UF)));
        h.set_image(gen::UK, tensor(u.generator(gen::UK), u.generator(gen::UK)),
                    tensor(u.generator(gen::UK, -1), u.generator(gen::UK, -1)));
        return h;
    }();
    return h;
}

/// Covering projection W -> U (x) U (kills I).
inline const Hom& hom_cover() {
    static const Hom h = [] {
        const RewriteSystem& u = system(Alg::U);
        Hom h(Alg::W, Alg::UU);
        PBW one = u.one();
        h.set_image(gen::E1, tensor(u.generator(gen::UE), one));
        h.set_image(gen::E2, tensor(one, u.generator(gen::UE)));
        h.set_image(gen::F1, tensor(u.generator(gen::UF), one));
        h.set_image(gen::F2, tensor(one, u.generator(gen::UF)));
        h.set_image(gen::K1, tensor(u.generator(gen::UK), one), tensor(u.generator(gen::UK, -1), one));
        h.set_image(gen::K2, tensor(one, u.generator(gen::UK)), tensor(one, u.generator(gen::UK, -1)));
        h.set_image(gen::I, tensor(one, one), tensor(one, one));
        return h;
    }();
    return h;
}

/// Lift of the comultiplication across the covering projection, U -> W.
inline const Hom& hom_comult_lift() {
    static const Hom h = [] {
        const RewriteSystem& w = system(Alg::W);
        Hom h(Alg::U, Alg::W);
        h.set_image(gen::UE, w.element({{RatFun(1), {{gen::E1, 1}}},
                                        {RatFun(1), {{gen::K1, -1}, {gen::E2, 1}}}}));
        h.set_image(gen::UF, w.element({{RatFun(1), {{gen::F1, 1}, {gen::K2, 1}}},
                                        {RatFun(1), {{gen::F2, 1}}}}));
        h.set_image(gen::UK, w.element({{RatFun(1), {{gen::K1, 1}, {gen::K2, 1}}}}),
                    w.element({{RatFun(1), {{gen::K1, -1}, {gen::K2, -1}}}}));
        return h;
    }();
    return h;
}

// Generators (and derived central elements) of the universal q-Hahn algebra.
enum class HGen { A, B, C, Alpha, Beta, Gamma };

inline const char* hgen_name(HGen g) {
    switch (g) {
    case HGen::A: return "A";
    case HGen::B: return "B";
    case HGen::C: return "C";
    case HGen::Alpha: return "alpha";
    case HGen::Beta: return "beta";
    default: return "gamma";
    }
}

struct HImages {
    PBW A, B, C, alpha, beta, gamma;
    const PBW& operator[](HGen g) const {
        switch (g) {
        case HGen::A: return A;
        case HGen::B: return B;
        case HGen::C: return C;
        case HGen::Alpha: return alpha;
        case HGen::Beta: return beta;
        default: return gamma;
        }
    }
};

/// Images of A, B, C, alpha, beta, gamma in U (x) U.
inline const HImages& hahn_images_uu() {
    static const HImages v = [] {
        const RewriteSystem& u = system(Alg::U);
        const RewriteSystem& uu = system(Alg::UU);
        PBW one = u.one();
        PBW lam = casimir_u();
        RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
        HImages im;
        im.A = tensor(one, u.generator(gen::UK, -1));
        im.B = hom_comult().apply(lam);
        // C = K^-1 (x) 1 - q (q-q^-1)^2 E (x) F K^-1
        im.C = tensor(u.generator(gen::UK, -1), one) -
               tensor(u.generator(gen::UE),
                      u.element({{RatFun(1), {{gen::UF, 1}, {gen::UK, -1}}}}))
                   .scaled(RatFun::q_power(1) * w2);
        PBW dki = hom_comult().apply_word({{gen::UK, -1}});
        im.alpha = tensor(one, lam) + uu.mul(tensor(lam, one), dki);
        im.beta = dki;
        im.gamma = tensor(lam, one) + uu.mul(tensor(one, lam), dki);
        return im;
    }();
    return v;
}

/// Images of A, B, C, alpha, beta, gamma in the covering algebra (the lift
/// across the covering projection).
inline const HImages& hahn_images_w() {
    static const HImages v = [] {
        const RewriteSystem& w = system(Alg::W);
        RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
        HImages im;
        im.A = w.generator(gen::K2, -1);
        im.B = hom_comult_lift().apply(casimir_u());
        im.C = w.element({{RatFun(1), {{gen::I, 1}, {gen::K1, -1}}},
                          {-RatFun::q_power(1) * w2, {{gen::E1, 1}, {gen::F2, 1}, {gen::K2, -1}}}});
        PBW dki = w.element({{RatFun(1), {{gen::K1, -1}, {gen::K2, -1}}}});
        im.alpha = casimir_w2() + w.mul(casimir_w1(), dki);
        im.beta = w.mul(w.generator(gen::I), dki);
        im.gamma = casimir_w1() + w.mul(casimir_w2(), dki);
        return im;
    }();
    return v;
}

// ---------------------------------------------------------------------------
// symbolic checks

/// x central <=> x commutes with every generator of the algebra.
inline bool check_central(const PBW& x) {
    const RewriteSystem& sys = system(x.alg());
    for (int g = 0; g < sys.ngens(); ++g)
        if (!sys.bracket(x, sys.generator(g)).is_zero()) return false;
    return true;
}

/// Verify that six candidate images satisfy the defining relations of the
/// universal q-Hahn algebra: the alpha/beta/gamma combinations come out
/// right and are central among the images.
inline bool check_hq_relations(const HImages& im, Alg alg, std::string* witness = nullptr) {
    const RewriteSystem& sys = system(alg);
    RatFun inv_qq = RatFun(1) / (RatFun::q_power(1) - RatFun::q_power(-1));
    RatFun qpq = RatFun::q_power(1) + RatFun::q_power(-1);
    auto fail = [&](const std::string& msg) {
        if (witness) *witness = msg;
        return false;
    };
    if (sys.q_bracket(im.B, im.C).scaled(inv_qq) + im.A.scaled(qpq) != im.alpha)
        return fail("alpha != [B,C]_q/(q-q^-1) + (q+q^-1)A");
    if (sys.q_bracket(im.C, im.A).scaled(inv_qq) != im.beta)
        return fail("beta != [C,A]_q/(q-q^-1)");
    if (sys.q_bracket(im.A, im.B).scaled(inv_qq) + im.C.scaled(qpq) != im.gamma)
        return fail("gamma != [A,B]_q/(q-q^-1) + (q+q^-1)C");
    for (const PBW* z : {&im.alpha, &im.beta, &im.gamma})
        for (const PBW* g : {&im.A, &im.B, &im.C})
            if (!sys.bracket(*z, *g).is_zero()) return fail("alpha/beta/gamma not central among images");
    return true;
}

enum class CommutationKind { E1F1n, E2F2n, E1mF1n, E2mF2n };

/// The closed-form commutation identities for E F^n and E^m F^n in the
/// covering algebra, checked by exact normal-form comparison.
inline bool verify_commutation_identity(CommutationKind kind, int m, int n) {
    const RewriteSystem& w = system(Alg::W);
    RatFun qq = RatFun::q_power(1) - RatFun::q_power(-1);
    auto kfactor = [&](bool second, int l) {
        // (q^l K1 - q^-l I K1^-1)/(q-q^-1)  or  (q^l I K2 - q^-l K2^-1)/(q-q^-1)
        if (!second)
            return w.element({{RatFun::q_power(l) / qq, {{gen::K1, 1}}},
                              {-RatFun::q_power(-l) / qq, {{gen::I, 1}, {gen::K1, -1}}}});
        return w.element({{RatFun::q_power(l) / qq, {{gen::I, 1}, {gen::K2, 1}}},
                          {-RatFun::q_power(-l) / qq, {{gen::K2, -1}}}});
    };
    bool second = (kind == CommutationKind::E2F2n || kind == CommutationKind::E2mF2n);
    int ge = second ? gen::E2 : gen::E1;
    int gf = second ? gen::F2 : gen::F1;
    if (kind == CommutationKind::E1F1n || kind == CommutationKind::E2F2n) {
        if (n < 1) throw domain_error("verify_commutation_identity: n >= 1 required");
        // (q-q^-1) E F^n = (q-q^-1) F^n E + [n]_q (q^(n-1) K - q^(1-n) I K^-1) F^(n-1)
        PBW lhs = w.normal_form({{ge, 1}, {gf, n}}).scaled(qq);
        PBW rhs = w.normal_form({{gf, n}, {ge, 1}}).scaled(qq);
        PBW mid = w.mul(kfactor(second, n - 1).scaled(q_int(n) * qq), w.generator(gf, n - 1));
        return lhs == rhs + mid;
    }
    if (m < 0 || m > n) throw domain_error("verify_commutation_identity: 0 <= m <= n required");
    // E^m F^n = sum_i [m,i]_q (prod_{j<i} [n-j]_q) C_i^(n-m) F^(n-i) E^(m-i)
    PBW lhs = w.normal_form({{ge, m}, {gf, n}});
    PBW rhs(Alg::W);
    for (int i = 0; i <= m; ++i) {
        RatFun c = q_binom(m, i);
        PBW prod = w.one();
        for (int j = 0; j < i; ++j) {
            c *= q_int(n - j);
            prod = w.mul(prod, kfactor(second, n - m - j));
        }
        rhs += w.mul(prod, w.normal_form({{gf, n - i}, {ge, m - i}})).scaled(c);
    }
    return lhs == rhs;
}

} // namespace qgrass
