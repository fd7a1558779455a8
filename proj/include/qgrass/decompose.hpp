#pragma once

#include "qgrass/lattice_ops.hpp"
#include "qgrass/terwilliger.hpp"

namespace qgrass {

/// Decompose the covering-algebra module carried by the whole lattice into
/// labeled irreducibles.  K1 and K2 are diagonal with eigenvalues fixed on
/// each (dim y, dim z) stratum, so the highest-weight space is computed one
/// stratum at a time; I is then split on each piece.
inline std::vector<std::pair<WLabel<Quad>, long>> decompose_lattice(const LatticeOps& ops) {
    using F = Quad;
    const QuadCtx& ctx = ops.ctx();
    int D = ops.D(), k = ops.k0();
    // the central generator's action, assembled without inverting the block
    // operator (only the forward direction is needed here)
    SparseMat<F> i_action =
        (ops.op(LatOp::D1) * ops.d2_inv() * ops.k3()).scaled(ctx.q_power(-D));

    // strata by (dim y, dim z)
    std::map<std::pair<int, int>, std::vector<int>> strata;
    for (int c = 0; c < ops.n(); ++c) {
        const Subspace& x = ops.basis()[c];
        int dz = x.intersect(ops.split().x0()).dim();
        strata[{x.dim() - dz, dz}].push_back(c);
    }

    std::map<std::pair<std::pair<int, int>, int>, long> counts; // ((dy,dz),h) -> multiplicity
    // E1 and E2 are invertible diagonal rescalings of the two lowering maps,
    // so their kernels agree with the kernels of the 0/1 cover operators and
    // the elimination stays over small rationals
    const SparseMat<F>& low1 = ops.op(LatOp::L1);
    const SparseMat<F>& low2 = ops.op(LatOp::L2);
    for (auto& [key, cols] : strata) {
        int ns = (int)cols.size();
        // kernel on this stratum: rows restricted to the columns' images
        std::vector<int> rowset;
        {
            std::map<int, int> seen;
            for (int c : cols)
                for (const SparseMat<F>* e : {&low1, &low2})
                    for (int r = 0; r < ops.n(); ++r)
                        if (!e->at(r, c).is_zero()) seen.emplace(r, 0);
            for (auto& [r, v] : seen) rowset.push_back(r);
        }
        Mat<F> st(2 * (int)rowset.size(), ns);
        for (int rr = 0; rr < (int)rowset.size(); ++rr)
            for (int cc = 0; cc < ns; ++cc) {
                st.at(rr, cc) = low1.at(rowset[rr], cols[cc]);
                st.at((int)rowset.size() + rr, cc) = low2.at(rowset[rr], cols[cc]);
            }
        Mat<F> hw = st.kernel(); // rows in stratum coordinates
        if (hw.rows() == 0) continue;
        // split by the I action restricted to the stratum
        Mat<F> iop(ns, ns);
        for (int a = 0; a < ns; ++a)
            for (int b = 0; b < ns; ++b) iop.at(a, b) = i_action.at(cols[a], cols[b]);
        Mat<F> restricted = restrict_to_rows(iop, hw);
        std::vector<F> candidates;
        for (int h = 0; h <= std::min(D - k, k); ++h) candidates.push_back(ctx.q_power(-2 * h));
        int covered = 0;
        for (auto& [mu, basis] : eigenspaces(restricted, candidates)) {
            auto e = mu.as_q_power();
            if (!e || *e > 0 || *e % 2 != 0)
                throw not_completely_reducible("lattice module: I eigenvalue off the expected grid");
            counts[{key, -*e / 2}] += basis.rows();
            covered += basis.rows();
        }
        if (covered != hw.rows())
            throw not_completely_reducible("lattice module: I not diagonalizable on a stratum");
    }

    std::vector<std::pair<WLabel<Quad>, long>> out;
    long total = 0;
    for (auto& [key, mult] : counts) {
        auto [dydz, h] = key;
        Weight<F> w{ctx.q_power(D - k - 2 * dydz.first), ctx.q_power(k - 2 * dydz.second),
                    ctx.q_power(-2 * h)};
        WLabel<Quad> label = identify_W_irreducible(ctx, w);
        out.push_back({label, mult});
        total += mult * label.dim();
    }
    if (total != ops.n()) throw not_completely_reducible("lattice module: component census incomplete");
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// Compare a lattice decomposition against the closed-form multiplicity
/// table over the full triple set.
inline Report verify_lattice_decomposition(const LatticeOps& ops) {
    Report rep;
    int p = ops.basis().p(), D = ops.D(), k = ops.k0();
    auto dec = decompose_lattice(ops);
    std::map<std::string, long> found;
    for (auto& [label, mult] : dec) found[label.str()] = mult;

    long total = 0;
    bool all_labels = true;
    std::string witness;
    for (const IndexTriple& t : enum_P_full(D, k)) {
        WLabel<Quad> want{D - k - t.h - 2 * t.i, k - t.h - 2 * t.j, 1,
                          ops.ctx().q_power(-t.h)};
        long mult = multiplicity_mhij_at(p, D, k, t);
        total += mult * want.dim();
        auto it = found.find(want.str());
        long got = it == found.end() ? 0 : it->second;
        if (got != mult) {
            all_labels = false;
            if (witness.empty())
                witness = want.str() + ": got " + std::to_string(got) + ", want " + std::to_string(mult);
        }
        if (it != found.end()) found.erase(it);
    }
    rep.add("decompose.multiplicities", all_labels && found.empty(),
            !witness.empty() ? witness : (found.empty() ? "" : "unexpected component " + found.begin()->first));
    rep.add("decompose.dimension.sum", total == ops.n(),
            std::to_string(total) + " vs " + std::to_string(ops.n()));
    return rep;
}

/// Formula-level consistency of the per-layer component labels and
/// multiplicities: the closed-form (a, b, c, d) parameters agree with the
/// generic eigenspace parameters of the matching twisted tensor component,
/// and the dimension census of each layer comes out to the subspace count.
inline Report verify_layer_labels(int p, int D) {
    QuadCtx ctx{p};
    Report rep;
    bool ok = true;
    std::string witness;
    for (int kk = 0; kk <= D; ++kk) {
        for (const IndexTriple& t : enum_P(D, kk)) {
            // the component (h, i, j) is the twisted tensor module with
            // parameters (m, n, 1, q^-h), met at the level whose lifted-K
            // eigenvalue is q^(D-2kk)
            int m = D - kk - t.h - 2 * t.i, n = kk - t.h - 2 * t.j;
            int l = kk - t.h - t.i - t.j;
            HLabel<Quad> via_cg = clebsch_gordan_labels(ctx, m, n, 1, ctx.q_power(-t.h), l);
            HLabel<Quad> direct{
                ctx.q_power(kk - t.h - std::min(D - kk - t.i, kk - t.j) - std::max(t.i, t.j)),
                ctx.q_power(D - t.h - t.i - t.j - std::min(D - kk - t.i, kk - t.j) - std::min(t.i, t.j) + 1),
                ctx.q_power(kk - t.h - D + std::min(D - kk - t.i, kk - t.j) + std::max(t.i, t.j)),
                component_d(D, kk, t)};
            if (!(via_cg == direct)) {
                ok = false;
                if (witness.empty()) witness = "layer " + std::to_string(kk) + " triple " + t.str();
            }
        }
    }
    rep.add("layer.labels.clebsch_gordan", ok, witness);

    // layer dimension census: sum of mult * (d+1) over P(kk) equals |L_kk|
    bool census = true;
    std::string cw;
    for (int kk = 0; kk <= D; ++kk) {
        long total = 0;
        for (const IndexTriple& t : enum_P(D, kk))
            total += multiplicity_mhij_at(p, D, kk, t) * (component_d(D, kk, t) + 1);
        Quad want = specialize(RatFun::q_power(kk * (D - kk)) * q_binom(D, kk), p);
        if (!(Quad(Rat(total)) == want)) {
            census = false;
            if (cw.empty()) cw = "layer " + std::to_string(kk);
        }
    }
    rep.add("layer.dimension.census", census, cw);
    return rep;
}

} // namespace qgrass
