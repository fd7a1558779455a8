#pragma once

#include "qgrass/lattice_ops.hpp"

#include <map>
#include <tuple>

namespace qgrass {

struct IndexTriple {
    int h = 0, i = 0, j = 0;
    friend bool operator==(const IndexTriple& a, const IndexTriple& b) {
        return a.h == b.h && a.i == b.i && a.j == b.j;
    }
    friend bool operator<(const IndexTriple& a, const IndexTriple& b) {
        return std::tie(a.h, a.i, a.j) < std::tie(b.h, b.i, b.j);
    }
    std::string str() const {
        return "(" + std::to_string(h) + "," + std::to_string(i) + "," + std::to_string(j) + ")";
    }
};

/// Dimension parameter of the layer component at (h, i, j):
/// d = min(D-k-i, k-j) - max(i, j) - h.
inline int component_d(int D, int k, const IndexTriple& t) {
    return std::min(D - k - t.i, k - t.j) - std::max(t.i, t.j) - t.h;
}

/// The triple set driving the whole-lattice decomposition (no layer cut).
inline std::vector<IndexTriple> enum_P_full(int D, int k) {
    std::vector<IndexTriple> out;
    for (int h = 0; h <= std::min(D - k, k); ++h)
        for (int i = 0; 2 * i <= D - k - h; ++i)
            for (int j = 0; 2 * j <= k - h; ++j) out.push_back({h, i, j});
    return out;
}

/// The layer triple set: as above with the extra cut that the component
/// survives restriction to the middle eigenvalue.
inline std::vector<IndexTriple> enum_P(int D, int k) {
    std::vector<IndexTriple> out;
    for (int h = 0; h <= std::min(D - k, k); ++h)
        for (int i = 0; 2 * i <= D - k - h; ++i) {
            int jmax = std::min({D - k - h - i, k - h - i, (k - h) / 2});
            for (int j = 0; j <= jmax; ++j) out.push_back({h, i, j});
        }
    return out;
}

/// Closed-form multiplicity of the (h, i, j) component, as an element of
/// Q(q); it specializes to a nonnegative integer at q = sqrt(p).
inline RatFun multiplicity_mhij(int D, int k, int h, int i, int j) {
    if (i == D - k - h + 1 || j == k - h + 1)
        throw domain_error("multiplicity_mhij: excluded index (vanishing denominator)");
    RatFun m = RatFun::q_power((h + i) * (D - k - i + 1) + j * (k - j + 1) - 2 * h);
    for (int l = 0; l < h; ++l) m *= RatFun::q_power(2 * (k - j - l)) - RatFun(1);
    m *= q_int(D - k - h - 2 * i + 1) * q_int(k - h - 2 * j + 1) /
         (q_int(D - k - h - i + 1) * q_int(k - h - j + 1));
    m *= q_binom(h + i, h) * q_binom(D - k, h + i) * q_binom(k, j);
    return m;
}

inline long multiplicity_mhij_at(int p, int D, int k, const IndexTriple& t) {
    Quad v = specialize(multiplicity_mhij(D, k, t.h, t.i, t.j), p);
    if (v.b() != 0 || denominator(v.a()) != 1 || v.a() < 0)
        throw internal_error("multiplicity_mhij_at: not a nonnegative integer");
    return (long)numerator(v.a());
}

/// Dimension of the joint weight space with weight
/// (q^(D-k-2i), q^(k-2j), q^(-2h)) on the whole lattice: the independent
/// census behind the multiplicity formula.
inline long weight_space_dim(int p, int D, int k, int h, int i, int j) {
    RatFun f = RatFun::q_power(h * (i - 1) + i * (D - k - i) + j * (k - j));
    for (int l = 0; l < h; ++l) f *= RatFun::q_power(2 * (k - j - l)) - RatFun(1);
    f *= q_binom(i, h) * q_binom(D - k, i) * q_binom(k, j);
    Quad v = specialize(f, p);
    if (v.b() != 0 || denominator(v.a()) != 1 || v.a() < 0)
        throw internal_error("weight_space_dim: not a nonnegative integer");
    return (long)numerator(v.a());
}

// ---------------------------------------------------------------------------
// the one-dimensional stratum and its folding map

struct P0Split {
    std::vector<IndexTriple> all, one, two, three;   // P0, I, II, III strata
    std::map<int, std::vector<IndexTriple>> two_by_j; // II stratified by j
    std::map<IndexTriple, IndexTriple> phi;           // III -> I injection
};

inline bool in_P0(int D, int k, const IndexTriple& t) { return component_d(D, k, t) == 0; }

inline P0Split enum_P0(int D, int k) {
    if (2 * k > D) throw domain_error("enum_P0: requires k <= D/2");
    P0Split s;
    for (const IndexTriple& t : enum_P(D, k)) {
        if (!in_P0(D, k, t)) continue;
        s.all.push_back(t);
        int diff = t.i - t.j;
        if (diff < 0) {
            s.one.push_back(t);
        } else if (diff <= D - 2 * k) {
            s.two.push_back(t);
            s.two_by_j[t.j].push_back(t);
        } else {
            s.three.push_back(t);
            IndexTriple img{t.h - 2 * k + D, t.j, (3 * k - t.h - D) / 2};
            s.phi[t] = img;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// predicted block structures and closed-form dimensions

/// Multiset of full matrix block sizes (size -> number of blocks).
using BlockList = std::map<int, int>;

inline long blocklist_dim(const BlockList& b) {
    long d = 0;
    for (auto& [size, count] : b) d += (long)size * size * count;
    return d;
}

struct PredictedStructures {
    BlockList tilde_t;
    BlockList t;
};

inline PredictedStructures predicted_structures(int D, int k) {
    if (k < 0 || 2 * k > D) throw domain_error("predicted_structures: requires 0 <= k <= D/2");
    PredictedStructures out;
    if (2 * k != D) {
        for (const IndexTriple& t : enum_P(D, k)) out.tilde_t[component_d(D, k, t) + 1] += 1;
        if (k >= 1) {
            P0Split s = enum_P0(D, k);
            out.t[1] += k / 2 + 1;
            std::map<IndexTriple, bool> excluded;
            for (auto& t : s.two) excluded[t] = true;
            for (auto& t : s.three) excluded[t] = true;
            for (const IndexTriple& t : enum_P(D, k))
                if (!excluded.count(t)) out.t[component_d(D, k, t) + 1] += 1;
        }
    } else {
        // at the middle layer the (i, j) and (j, i) components coincide
        for (int h = 0; h <= D / 2; ++h)
            for (int i = 0; 4 * i <= D - 2 * h; ++i) out.tilde_t[D / 2 - h - 2 * i + 1] += i + 1;
        out.t = out.tilde_t;
    }
    return out;
}

namespace detail {

inline Rat choose(long n, long l) {
    Rat r = 1;
    for (long i = 1; i <= l; ++i) r *= Rat(n - i + 1, i);
    return r;
}

inline long to_integer(const Rat& r, const char* what) {
    if (denominator(r) != 1) throw internal_error(std::string(what) + ": non-integer value");
    return (long)numerator(r);
}

} // namespace detail

/// Closed-form dimension of the full image algebra on layer k (k <= D/2;
/// use the k <-> D-k symmetry first otherwise).
inline long dim_formula_tildeT(int D, int k) {
    if (2 * k > D) k = D - k;
    if (k < 0 || k > D) throw domain_error("dim_formula_tildeT: bad layer");
    using detail::choose;
    Rat v;
    if (3 * k < D) {
        v = choose(k + 4, 5) + Rat(1, 2) * choose(k + 5, 5) + Rat(1, 4) * choose(k + 5, 4) -
            Rat(1, 8) * choose(k + 5, 3) + Rat(1, 16) * choose(k + 5, 2) - Rat((k + 5) / 2, 16);
    } else if (2 * k < D) {
        long a = 3 * k - D;
        v = choose(k + 4, 5) + Rat(1, 2) * choose(k + 5, 5) + Rat(1, 4) * choose(k + 5, 4) -
            Rat(1, 8) * choose(k + 5, 3) + Rat(1, 16) * choose(k + 5, 2) - Rat(1, 2) * choose(a + 4, 5) -
            Rat(1, 4) * choose(a + 4, 4) + Rat(1, 8) * choose(a + 4, 3) - Rat(1, 16) * choose(a + 4, 2) +
            Rat(1, 16) * Rat((k - 1 + 1) / 2 - (D - k + 1) / 2);
    } else {
        v = Rat(1, 2) * choose(D / 2 + 5, 5) + Rat(1, 4) * choose(D / 2 + 5, 4) -
            Rat(1, 8) * choose(D / 2 + 5, 3) + Rat(1, 16) * choose(D / 2 + 5, 2) - Rat((D + 10) / 4, 16);
    }
    return detail::to_integer(v, "dim_formula_tildeT");
}

/// Closed-form value of dim(tilde T) - dim(T) on layer k.
inline long dim_gap_formula(int D, int k) {
    if (2 * k > D) k = D - k;
    if (k < 1 || k > D - 1) throw domain_error("dim_gap_formula: requires 1 <= k <= D-1");
    if (2 * k == D) return 0;
    if (3 * k < D) return (long)((k + 1) / 2) * (k / 2 + 1);
    long ceil_dk2 = (D - k + 1) / 2;
    long floork2 = k / 2, ceilk2 = (k + 1) / 2;
    long v = (D - 2 * k + 1) * (k - ceil_dk2 + 1) + (ceil_dk2 - floork2) * (ceil_dk2 - ceilk2);
    long f = (3 * k - D) / 2;
    v += f * (f + 1) / 2 - floork2 - 1;
    return v;
}

// ---------------------------------------------------------------------------
// exact span closure of generated matrix algebras

template <class F>
struct AlgebraBasis {
    int ambient = 0;                  // operators act on F^ambient
    std::vector<SparseMat<F>> basis;  // one representative per echelon row
    RowSpace<F> row_space;            // flattened echelon form

    explicit AlgebraBasis(int n) : ambient(n), row_space(long(n) * n) {}
    int dim() const { return row_space.dim(); }
    bool contains(const SparseMat<F>& m) const { return row_space.contains(flatten(m)); }
};

/// Rescale to clear every denominator: a nonzero scalar multiple of a
/// generator spans the same unital algebra, and products of integral
/// matrices avoid rational normalization entirely.
inline SparseMat<Quad> cleared_denominators(const SparseMat<Quad>& m) {
    Int l = 1;
    for (int i = 0; i < m.rows(); ++i)
        for (auto& [j, v] : m.row(i)) l = lcm(lcm(l, denominator(v.a())), denominator(v.b()));
    return l == 1 ? m : m.scaled(Quad(Rat(l)));
}

/// Canonical small representative of a row-space line: clear denominators,
/// divide out the integer content.  Keeps the entries of closure heads at
/// machine size so product chains cannot blow up.
inline SparseMat<Quad> reduced_representative(const typename RowSpace<Quad>::Row& row, int n) {
    Int l = 1;
    for (auto& [idx, v] : row) l = lcm(lcm(l, denominator(v.a())), denominator(v.b()));
    Int g = 0;
    for (auto& [idx, v] : row) {
        g = gcd(g, Int(numerator(v.a()) * (l / denominator(v.a()))));
        g = gcd(g, Int(numerator(v.b()) * (l / denominator(v.b()))));
    }
    if (g == 0) g = 1;
    Quad s = Quad(Rat(l, g));
    SparseMat<Quad> m(n, n);
    for (auto& [idx, v] : row) m.add_entry((int)(idx / n), (int)(idx % n), v * s);
    return m;
}

/// Basis of the unital algebra generated by the given operators: seed with
/// the identity and the generators, close under left multiplication, then
/// run one right-multiplication pass as a fixed-point check.
inline AlgebraBasis<Quad> generate_algebra(const std::vector<SparseMat<Quad>>& generators, int cap) {
    using F = Quad;
    if (generators.empty()) throw domain_error("generate_algebra: no generators");
    int n = generators.front().rows();
    AlgebraBasis<F> out(n);
    auto push = [&](const SparseMat<F>& m) {
        int at = out.row_space.insert(flatten(m));
        if (at >= 0) {
            // store a content-stripped echelon representative: same span,
            // small entries for all later products
            out.basis.push_back(reduced_representative(out.row_space.rows()[at], n));
            if (out.dim() > cap) throw resource_error("generate_algebra: cap exceeded");
            return true;
        }
        return false;
    };
    push(SparseMat<F>::identity(n));
    for (auto& g : generators) push(g);
    for (size_t head = 0; head < out.basis.size(); ++head) {
        for (auto& g : generators) {
            SparseMat<F> prod = g * out.basis[head];
            push(prod);
        }
    }
    for (size_t head = 0; head < out.basis.size(); ++head)
        for (auto& g : generators)
            if (push(out.basis[head] * g))
                throw internal_error("generate_algebra: right pass enlarged a left-closed span");
    return out;
}

// ---------------------------------------------------------------------------
// combined report

struct TerwilligerReport {
    int p, D, k;
    long generated_T = 0, generated_tildeT = 0;
    long formula_T = 0, formula_tildeT = 0;
    BlockList blocks_tildeT, blocks_T;
    bool containment = false; // every T basis element lies in tilde T
    Report checks;
};

/// Build both algebras on layer k at base point x0 and compare generated
/// dimensions against the closed forms and block structures.
inline TerwilligerReport compare_report(int p, int D, int k, const Subspace& x0, long max_cells) {
    if (k < 1 || k > D - 1) throw domain_error("compare_report: requires 1 <= k <= D-1");
    if (x0.dim() != k) throw domain_error("compare_report: dim x0 != k");
    TerwilligerReport rep{p, D, k};

    LatticeOps ops(LatticeBasis::whole(p, D, max_cells), x0);
    std::vector<int> idx = ops.basis().layer_indices(k);
    LatticeBasis layer = LatticeBasis::layer(p, D, k, max_cells);

    using M = SparseMat<Quad>;
    M ha = cleared_denominators(ops.evaluate_w(hahn_images_w().A).restricted(idx, idx));
    M hb = cleared_denominators(ops.evaluate_w(hahn_images_w().B).restricted(idx, idx));
    M hc = cleared_denominators(ops.evaluate_w(hahn_images_w().C).restricted(idx, idx));
    M A = build_adjacency(layer);
    M As = cleared_denominators(build_dual_adjacency(layer, x0));

    int kk = std::min(k, D - k);
    rep.formula_tildeT = dim_formula_tildeT(D, k);
    rep.formula_T = rep.formula_tildeT - dim_gap_formula(D, k);
    PredictedStructures ps = predicted_structures(D, kk);
    rep.blocks_tildeT = ps.tilde_t;
    rep.blocks_T = ps.t;

    int cap = (int)(rep.formula_tildeT + 8);
    AlgebraBasis<Quad> tilde = generate_algebra({ha, hb, hc}, cap);
    AlgebraBasis<Quad> plain = generate_algebra({A, As}, cap);
    rep.generated_tildeT = tilde.dim();
    rep.generated_T = plain.dim();

    rep.containment = true;
    for (auto& m : plain.basis)
        if (!tilde.contains(m)) rep.containment = false;

    rep.checks.add("dim.tildeT.formula", rep.generated_tildeT == rep.formula_tildeT,
                   std::to_string(rep.generated_tildeT) + " vs " + std::to_string(rep.formula_tildeT));
    rep.checks.add("dim.T.formula", rep.generated_T == rep.formula_T,
                   std::to_string(rep.generated_T) + " vs " + std::to_string(rep.formula_T));
    rep.checks.add("dim.tildeT.blocks", blocklist_dim(rep.blocks_tildeT) == rep.generated_tildeT);
    rep.checks.add("dim.T.blocks", blocklist_dim(rep.blocks_T) == rep.generated_T);
    rep.checks.add("containment.T.in.tildeT", rep.containment);
    return rep;
}

} // namespace qgrass
