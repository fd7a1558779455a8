#pragma once

#include "qgrass/rewrite.hpp"

namespace qgrass {

/// Faithfulness oracle for the covering algebra: its explicit action on the
/// Laurent polynomial ring C[x1, x2, y1, y2, z1^±1, z2^±1, w^±1].  Monomials
/// share the PBW exponent lattice (x1 x2 y1 y2 z1 z2 w), and each PBW basis
/// monomial sends 1 to the matching ring monomial, which is what makes the
/// module a normal-form oracle.
class WOracle {
public:
    /// One generator applied to a polynomial (left action).
    static PBW act(int g, long e, const PBW& poly) {
        if (e < 0 && !system(Alg::W).invertible(g)) throw domain_error("WOracle: negative E/F power");
        PBW cur = poly;
        long n = e >= 0 ? e : -e;
        int step = e >= 0 ? 1 : -1;
        for (long i = 0; i < n; ++i) cur = act_once(g, step, cur);
        return cur;
    }

    /// Apply a word to the constant 1, rightmost letter first.
    static PBW apply_word(const Word& w) {
        PBW cur(Alg::W);
        cur.add(Mono(7, 0), RatFun(1));
        for (auto it = w.rbegin(); it != w.rend(); ++it) cur = act(it->g, it->e, cur);
        return cur;
    }

    /// Image of a PBW element under monomial-by-monomial application to 1;
    /// by construction this is the identity on exponent tuples.
    static PBW apply_elementwise(const PBW& x) {
        PBW r(Alg::W);
        for (auto& [m, c] : x.terms()) r.add(m, c);
        return r;
    }

private:
    // exponent slots: 0:x1 1:x2 2:y1 3:y2 4:z1 5:z2 6:w
    static PBW act_once(int g, int sgn, const PBW& poly) {
        PBW out(Alg::W);
        RatFun qq = RatFun::q_power(1) - RatFun::q_power(-1);
        for (auto& [m, c] : poly.terms()) {
            Mono t = m;
            switch (g) {
            case gen::E1:
                t[0] += 1;
                out.add(t, c);
                break;
            case gen::E2:
                t[1] += 1;
                out.add(t, c);
                break;
            case gen::F1: {
                t[2] += 1;
                out.add(t, c);
                if (m[0] >= 1) {
                    RatFun f = q_int((int)m[0]) / qq * c;
                    Mono s = m;
                    s[0] -= 1;
                    Mono s1 = s, s2 = s;
                    s1[4] += 1; // z1
                    s2[4] -= 1; // w z1^-1
                    s2[6] += 1;
                    out.add(s1, -f * RatFun::q_power(int(m[0] - 2 * m[2] - 1)));
                    out.add(s2, f * RatFun::q_power(int(2 * m[2] - m[0] + 1)));
                }
                break;
            }
            case gen::F2: {
                t[3] += 1;
                out.add(t, c);
                if (m[1] >= 1) {
                    RatFun f = q_int((int)m[1]) / qq * c;
                    Mono s = m;
                    s[1] -= 1;
                    Mono s1 = s, s2 = s;
                    s1[5] += 1; // w z2
                    s1[6] += 1;
                    s2[5] -= 1; // z2^-1
                    out.add(s1, -f * RatFun::q_power(int(m[1] - 2 * m[3] - 1)));
                    out.add(s2, f * RatFun::q_power(int(2 * m[3] - m[1] + 1)));
                }
                break;
            }
            case gen::K1:
                t[4] += sgn;
                out.add(t, c * RatFun::q_power(int(2 * sgn * (m[0] - m[2]))));
                break;
            case gen::K2:
                t[5] += sgn;
                out.add(t, c * RatFun::q_power(int(2 * sgn * (m[1] - m[3]))));
                break;
            case gen::I:
                t[6] += sgn;
                out.add(t, c);
                break;
            default:
                throw internal_error("WOracle: unknown generator");
            }
        }
        return out;
    }
};

} // namespace qgrass
