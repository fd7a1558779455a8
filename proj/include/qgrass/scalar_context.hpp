#pragma once

#include "qgrass/quadratic.hpp"

#include <vector>

namespace qgrass {

/// Scalar context for generic module and operator code.  All scalars in one
/// computation come from one context: either the symbolic field Q(q) or the
/// specialization Q(sqrt(N)).
struct SymbolicCtx {
    using F = RatFun;
    F q_power(int e) const { return RatFun::q_power(e); }
    F q_int(int n) const { return qgrass::q_int(n); }
    F from(const RatFun& x) const { return x; }
    F from_rat(const Rat& r) const { return RatFun(r); }
};

struct QuadCtx {
    long N;
    using F = Quad;
    F q_power(int e) const { return specialize(RatFun::q_power(e), N); }
    F q_int(int n) const { return specialize(qgrass::q_int(n), N); }
    F from(const RatFun& x) const { return specialize(x, N); }
    F from_rat(const Rat& r) const { return Quad(r); }
};

/// Candidate eigenvalue grid {+-q^e : |e| <= range}, used by the exact
/// diagonalizability tests (spectra of all K-type operators lie on it).
template <class Ctx>
std::vector<typename Ctx::F> signed_q_power_grid(const Ctx& ctx, int range) {
    std::vector<typename Ctx::F> out;
    for (int e = -range; e <= range; ++e) {
        auto v = ctx.q_power(e);
        out.push_back(v);
        out.push_back(-v);
    }
    return out;
}

} // namespace qgrass
