#include "qgrass/terwilliger.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qgrass;

TEST_CASE("index triple sets") {
    // P(1) for D = 4
    auto p1 = enum_P(4, 1);
    REQUIRE(p1.size() == 3);
    CHECK(p1[0] == (IndexTriple{0, 0, 0}));
    CHECK(p1[1] == (IndexTriple{0, 1, 0}));
    CHECK(p1[2] == (IndexTriple{1, 0, 0}));
    // at k = 0 the full-lattice set is {(0,i,0) : 0 <= i <= D/2} while the
    // layer set collapses to the single surviving component
    for (int D = 1; D <= 8; ++D) {
        auto pf = enum_P_full(D, 0);
        REQUIRE((int)pf.size() == D / 2 + 1);
        for (auto& t : pf) {
            REQUIRE(t.h == 0);
            REQUIRE(t.j == 0);
        }
        auto p0 = enum_P(D, 0);
        REQUIRE(p0.size() == 1);
        REQUIRE(p0[0] == (IndexTriple{0, 0, 0}));
    }
    // the layer set P(1) keeps its shape for D = 5
    auto p15 = enum_P(5, 1);
    REQUIRE(p15.size() == 3);
}

TEST_CASE("multiplicities specialize to the weight-space census") {
    // (D=4, k=1): multiplicities 1, 6, 7 and dimension bookkeeping 15 = |L_1|
    CHECK(multiplicity_mhij_at(2, 4, 1, {0, 0, 0}) == 1);
    CHECK(multiplicity_mhij_at(2, 4, 1, {0, 1, 0}) == 6);
    CHECK(multiplicity_mhij_at(2, 4, 1, {1, 0, 0}) == 7);
    long total = 0;
    for (auto& t : enum_P(4, 1)) total += multiplicity_mhij_at(2, 4, 1, t) * (component_d(4, 1, t) + 1);
    CHECK(total == 15);
    CHECK_THROWS_AS(multiplicity_mhij(4, 1, 1, 3, 0), domain_error); // i = D-k-h+1 excluded

    // inclusion-exclusion of the weight-space dimensions reproduces the
    // closed-form multiplicities on the full set
    for (auto [p, D, k] : std::vector<std::tuple<int, int, int>>{{2, 4, 2}, {2, 5, 2}, {3, 3, 1}}) {
        for (auto& t : enum_P_full(D, k)) {
            auto dhij = [&](int i, int j) -> long {
                if (i < 0 || j < 0) return 0;
                if (2 * i > D - k - t.h || 2 * j > k - t.h) return 0;
                return weight_space_dim(p, D, k, t.h, t.h + i, j);
            };
            long m = dhij(t.i, t.j) - dhij(t.i - 1, t.j) - dhij(t.i, t.j - 1) + dhij(t.i - 1, t.j - 1);
            REQUIRE(m == multiplicity_mhij_at(p, D, k, t));
        }
    }
}

TEST_CASE("one-dimensional stratum and the folding injection") {
    // (D=4, k=1): both survivors sit in stratum II, stratum III empty
    P0Split s = enum_P0(4, 1);
    REQUIRE(s.all.size() == 2);
    CHECK(s.two.size() == 2);
    CHECK(s.one.empty());
    CHECK(s.three.empty());

    for (int D = 1; D <= 12; ++D)
        for (int k = 0; 2 * k <= D; ++k) {
            P0Split sp = enum_P0(D, k);
            // closed-form sizes of strata II and III
            long two_want, three_want;
            if (3 * k < D) {
                two_want = (long)(k / 2 + 1) * ((k + 1) / 2 + 1);
                three_want = 0;
            } else {
                long c1 = (D - k + 1) / 2;
                two_want = (long)(D - 2 * k + 1) * (k - c1 + 1) + (c1 - k / 2) * (c1 - (k + 1) / 2);
                long f = (3 * k - D) / 2;
                three_want = f * (f + 1) / 2;
            }
            REQUIRE((long)sp.two.size() == two_want);
            REQUIRE((long)sp.three.size() == three_want);
            // stratum II by fixed j has the predicted parameterization
            for (auto& [j, list] : sp.two_by_j)
                for (size_t t = 0; t < list.size(); ++t) {
                    int pval = list[t].i - j;
                    REQUIRE(list[t].h == k - 2 * j - pval);
                    REQUIRE(pval >= 0);
                    REQUIRE(pval <= std::min(k - 2 * j, D - 2 * k));
                }
            // the folding map is injective and lands in stratum I
            std::map<IndexTriple, int> hits;
            for (auto& [src, img] : sp.phi) {
                REQUIRE(std::find(sp.one.begin(), sp.one.end(), img) != sp.one.end());
                hits[img] += 1;
            }
            for (auto& [img, cnt] : hits) REQUIRE(cnt == 1);
        }
}

TEST_CASE("predicted block structures") {
    // (D=4, k=1): full algebra blocks {2,1,1} of dimension 6; subalgebra {1,2} of dimension 5
    PredictedStructures s41 = predicted_structures(4, 1);
    CHECK(s41.tilde_t == (BlockList{{1, 2}, {2, 1}}));
    CHECK(blocklist_dim(s41.tilde_t) == 6);
    CHECK(s41.t == (BlockList{{1, 1}, {2, 1}}));
    CHECK(blocklist_dim(s41.t) == 5);
    // middle layer: both algebras coincide
    PredictedStructures s42 = predicted_structures(4, 2);
    CHECK(s42.t == s42.tilde_t);
    CHECK(blocklist_dim(s42.tilde_t) == 16);
}

TEST_CASE("closed-form dimensions against the block-list oracle") {
    CHECK(dim_formula_tildeT(4, 1) == 6);
    CHECK(dim_gap_formula(4, 1) == 1);
    CHECK(dim_gap_formula(4, 2) == 0);
    CHECK(dim_formula_tildeT(5, 2) == 21);
    CHECK(dim_gap_formula(5, 2) == 1);
    for (int D = 0; D <= 8; ++D)
        for (int k = 0; 2 * k <= D; ++k) {
            long oracle = blocklist_dim(predicted_structures(D, k).tilde_t);
            REQUIRE(dim_formula_tildeT(D, k) == oracle);
            // duality through the k <-> D-k bijection
            REQUIRE(dim_formula_tildeT(D, D - k) == dim_formula_tildeT(D, k));
            long sum_over_P = 0;
            for (auto& t : enum_P(D, k)) {
                long dd = component_d(D, k, t) + 1;
                sum_over_P += dd * dd;
            }
            if (2 * k != D) {
                REQUIRE(sum_over_P == oracle);
            } else {
                // at the middle layer the naive sum over P(k) double-counts
                // the paired components
                REQUIRE(sum_over_P >= oracle);
            }
            if (k >= 1) {
                long gap = dim_gap_formula(D, k);
                REQUIRE(gap == oracle - blocklist_dim(predicted_structures(D, k).t));
            }
        }
}

TEST_CASE("span closure of generated algebras") {
    using M = SparseMat<Quad>;
    // identity alone generates a one-dimensional algebra
    auto triv = generate_algebra({M::identity(4)}, 8);
    CHECK(triv.dim() == 1);
    // a nilpotent Jordan block generates {I, N, N^2}
    M nil(3, 3);
    nil.add_entry(0, 1, Quad(1));
    nil.add_entry(1, 2, Quad(1));
    auto nilalg = generate_algebra({nil}, 8);
    CHECK(nilalg.dim() == 3);
    CHECK(nilalg.contains(nil * nil));
    M other(3, 3);
    other.add_entry(1, 0, Quad(1));
    CHECK_FALSE(nilalg.contains(other));
    CHECK_THROWS_AS(generate_algebra({nil}, 2), resource_error);
}

TEST_CASE("generated dimensions match the closed forms on the smallest instance") {
    // (p=2, D=4, k=1): full algebra 6, subalgebra 5, containment holds
    Subspace x0 = Subspace::parse("1000", 2, 4);
    TerwilligerReport rep = compare_report(2, 4, 1, x0, 100000);
    CHECK(rep.generated_tildeT == 6);
    CHECK(rep.generated_T == 5);
    CHECK(rep.containment);
    for (auto& c : rep.checks.checks) {
        INFO(c.name << " " << c.witness);
        REQUIRE(c.pass);
    }
    // base-point independence of the generated dimensions
    Subspace x0b = Subspace::parse("0011", 2, 4);
    TerwilligerReport repb = compare_report(2, 4, 1, x0b, 100000);
    CHECK(repb.generated_tildeT == rep.generated_tildeT);
    CHECK(repb.generated_T == rep.generated_T);
}

TEST_CASE("re-closing a generated algebra is a fixed point") {
    LatticeBasis layer = LatticeBasis::layer(2, 4, 1, 100000);
    Subspace x0 = Subspace::parse("1000", 2, 4);
    auto first = generate_algebra({build_adjacency(layer), cleared_denominators(build_dual_adjacency(layer, x0))}, 32);
    auto again = generate_algebra(first.basis, 32);
    CHECK(again.dim() == first.dim());
    for (auto& m : again.basis) CHECK(first.contains(m));
}
