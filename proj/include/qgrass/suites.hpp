#pragma once

#include "qgrass/homs.hpp"
#include "qgrass/lattice_ops.hpp"
#include "qgrass/oracle.hpp"

#include <random>

namespace qgrass {

inline Word random_word(std::mt19937& rng, Alg alg, int max_len) {
    const RewriteSystem& sys = system(alg);
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gpick(0, sys.ngens() - 1);
    std::uniform_int_distribution<int> epos(1, 2);
    std::uniform_int_distribution<int> eany(-2, 2);
    Word w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        int g = gpick(rng);
        long e = sys.invertible(g) ? eany(rng) : epos(rng);
        if (e == 0) e = 1;
        w.push_back({g, e});
    }
    return w;
}

/// The symbolic verification suite: defining relations, central elements,
/// the two lifting diagrams, the q-Hahn relation checks, the closed-form
/// commutation identities, and seeded randomized property checks
/// (confluence, faithfulness, homomorphism law).
inline Report symbolic_suite(unsigned seed, int random_words = 500) {
    Report rep;
    const RewriteSystem& u = system(Alg::U);
    const RewriteSystem& w = system(Alg::W);
    const RatFun inv_qq = RatFun(1) / (RatFun::q_power(1) - RatFun::q_power(-1));
    RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);

    // defining commutators in normal form
    rep.add("nf.E1F1", w.normal_form(parse_word("F1*E1", Alg::W)) ==
                           w.element({{RatFun(1), {{gen::E1, 1}, {gen::F1, 1}}},
                                      {-inv_qq, {{gen::K1, 1}}},
                                      {inv_qq, {{gen::I, 1}, {gen::K1, -1}}}}));
    rep.add("nf.E2F2", w.normal_form(parse_word("F2*E2", Alg::W)) ==
                           w.element({{RatFun(1), {{gen::E2, 1}, {gen::F2, 1}}},
                                      {-inv_qq, {{gen::I, 1}, {gen::K2, 1}}},
                                      {inv_qq, {{gen::K2, -1}}}}));
    rep.add("nf.cross", w.normal_form(parse_word("E2*E1", Alg::W)) ==
                                w.normal_form(parse_word("E1*E2", Alg::W)) &&
                            w.normal_form(parse_word("F2*F1", Alg::W)) ==
                                w.normal_form(parse_word("F1*F2", Alg::W)));
    rep.add("nf.inverses", w.normal_form(parse_word("K1*K1^-1", Alg::W)) == w.one() &&
                               w.normal_form(parse_word("K2^-1*K2", Alg::W)) == w.one() &&
                               w.normal_form(parse_word("I*I^-1", Alg::W)) == w.one());
    rep.add("nf.qswap", w.normal_form(parse_word("K1*E1", Alg::W)) ==
                            w.normal_form(parse_word("E1*K1", Alg::W)).scaled(RatFun::q_power(2)));

    // central elements
    rep.add("central.casimir.u", check_central(casimir_u()));
    rep.add("central.casimir.w1", check_central(casimir_w1()));
    rep.add("central.casimir.w2", check_central(casimir_w2()));
    rep.add("central.I", check_central(w.generator(gen::I)));
    rep.add("central.E1.not", !check_central(w.generator(gen::E1)));

    // both closed forms of the central elements
    rep.add("casimir.w1.two.forms",
            casimir_w1() == w.element({{w2, {{gen::F1, 1}, {gen::E1, 1}}},
                                       {RatFun::q_power(1), {{gen::K1, 1}}},
                                       {RatFun::q_power(-1), {{gen::I, 1}, {gen::K1, -1}}}}));
    rep.add("casimir.w2.two.forms",
            casimir_w2() == w.element({{w2, {{gen::F2, 1}, {gen::E2, 1}}},
                                       {RatFun::q_power(1), {{gen::I, 1}, {gen::K2, 1}}},
                                       {RatFun::q_power(-1), {{gen::K2, -1}}}}));

    // covering projection values on the central elements
    rep.add("cover.kills.I", hom_cover().apply(w.generator(gen::I) - w.one()).is_zero());
    rep.add("cover.casimir.w1", hom_cover().apply(casimir_w1()) == tensor(casimir_u(), u.one()));
    rep.add("cover.casimir.w2", hom_cover().apply(casimir_w2()) == tensor(u.one(), casimir_u()));

    // lifted comultiplication of the Casimir element: the closed expansion
    {
        PBW lam = hom_comult_lift().apply(casimir_u());
        PBW expect = w.element({{w2, {{gen::K1, -1}, {gen::E2, 1}, {gen::F1, 1}, {gen::K2, 1}}},
                                {w2, {{gen::E1, 1}, {gen::F2, 1}}}}) +
                     w.mul(casimir_w1(), w.generator(gen::K2)) +
                     w.mul(w.generator(gen::K1, -1), casimir_w2()) -
                     w.element({{RatFun::q_power(1) + RatFun::q_power(-1),
                                 {{gen::I, 1}, {gen::K1, -1}, {gen::K2, 1}}}});
        rep.add("lift.casimir.expansion", lam == expect);
    }

    // commuting diagrams of the two lifts
    {
        bool ok = true;
        for (Word gw : {parse_word("E", Alg::U), parse_word("F", Alg::U), parse_word("K", Alg::U),
                        parse_word("K^-1", Alg::U)})
            ok = ok && hom_cover().apply(hom_comult_lift().apply_word(gw)) == hom_comult().apply_word(gw);
        std::mt19937 rng(seed + 1);
        for (int t = 0; t < 50 && ok; ++t) {
            PBW x = u.normal_form(random_word(rng, Alg::U, 6));
            ok = hom_cover().apply(hom_comult_lift().apply(x)) == hom_comult().apply(x);
        }
        rep.add("diagram.comult.lift", ok);
    }
    {
        bool ok = true;
        for (HGen g : {HGen::A, HGen::B, HGen::C, HGen::Alpha, HGen::Beta, HGen::Gamma})
            ok = ok && hom_cover().apply(hahn_images_w()[g]) == hahn_images_uu()[g];
        rep.add("diagram.hahn.lift", ok);
    }

    // q-Hahn relations for both image sets; centralizer of the lifted K
    {
        std::string why;
        rep.add("hahn.relations.lift", check_hq_relations(hahn_images_w(), Alg::W, &why), why);
        rep.add("hahn.relations.embed", check_hq_relations(hahn_images_uu(), Alg::UU, &why), why);
        rep.add("hahn.images.alpha",
                hahn_images_w().alpha ==
                    casimir_w2() + w.mul(casimir_w1(), hom_comult_lift().apply_word({{gen::UK, -1}})));
        rep.add("hahn.images.gamma",
                hahn_images_w().gamma ==
                    casimir_w1() + w.mul(casimir_w2(), hom_comult_lift().apply_word({{gen::UK, -1}})));
        PBW dk = hom_comult_lift().apply_word({{gen::UK, 1}});
        bool cen = true;
        for (HGen g : {HGen::A, HGen::B, HGen::Gamma})
            cen = cen && w.bracket(dk, hahn_images_w()[g]).is_zero();
        rep.add("hahn.centralizer.liftK", cen);
    }

    // commutation identities up to the budgeted exponent
    {
        bool efn = true, emfn = true;
        for (int n = 1; n <= 6; ++n) {
            efn = efn && verify_commutation_identity(CommutationKind::E1F1n, 0, n) &&
                  verify_commutation_identity(CommutationKind::E2F2n, 0, n);
            for (int m = 0; m <= n; ++m)
                emfn = emfn && verify_commutation_identity(CommutationKind::E1mF1n, m, n) &&
                       verify_commutation_identity(CommutationKind::E2mF2n, m, n);
        }
        rep.add("commutation.EFn", efn);
        rep.add("commutation.EmFn", emfn);
    }

    // randomized property checks
    {
        std::mt19937 rng(seed + 2);
        bool ok = true;
        for (Alg alg : {Alg::U, Alg::UU, Alg::W}) {
            const RewriteSystem& sys = system(alg);
            for (int t = 0; t < random_words && ok; ++t) {
                Word word = random_word(rng, alg, 10);
                ok = sys.normal_form(word, ReduceOrder::LeftmostFirst) ==
                     sys.normal_form(word, ReduceOrder::RightmostFirst);
            }
        }
        rep.add("property.confluence", ok);
    }
    {
        std::mt19937 rng(seed + 3);
        bool ok = true;
        for (int t = 0; t < 200 && ok; ++t) {
            Word word = random_word(rng, Alg::W, 8);
            ok = WOracle::apply_word(word) == WOracle::apply_elementwise(w.normal_form(word));
        }
        rep.add("property.faithful", ok);
    }
    {
        std::mt19937 rng(seed + 4);
        bool ok = true;
        struct Case {
            const Hom& h;
            Alg src;
        };
        const Case cases[] = {{hom_comult(), Alg::U}, {hom_cover(), Alg::W}, {hom_comult_lift(), Alg::U}};
        for (auto& [h, src] : cases) {
            const RewriteSystem& s = system(src);
            const RewriteSystem& d = system(h.dst());
            // short factors: image elements fan out quickly under the
            // comultiplication, and the law is degree-independent anyway
            for (int t = 0; t < 100 && ok; ++t) {
                Word w1 = random_word(rng, src, 4), w2r = random_word(rng, src, 4);
                Word cat = w1;
                cat.insert(cat.end(), w2r.begin(), w2r.end());
                ok = h.apply(s.normal_form(cat)) == d.mul(h.apply_word(w1), h.apply_word(w2r));
            }
        }
        rep.add("property.hom.law", ok);
    }
    return rep;
}

/// Self-test with one deliberately corrupted rewrite rule: the report names
/// the identities the fault breaks (the run is expected to fail).
inline Report corrupted_rule_selftest() {
    Report rep;
    RewriteSystem w(Alg::W);
    w.corrupt_first_rule();
    Word fe = parse_word("F1*E1", Alg::W);
    rep.add("selftest.faithful.F1E1",
            WOracle::apply_word(fe) == WOracle::apply_elementwise(w.normal_form(fe)),
            "normal form disagrees with the module oracle");
    // centrality of the first central element, evaluated in the corrupted system
    PBW c1 = casimir_w1();
    bool central = true;
    for (int g = 0; g < w.ngens() && central; ++g)
        central = w.mul(c1, w.generator(g)) == w.mul(w.generator(g), c1);
    rep.add("selftest.central.casimir.w1", central, "corrupted commutator leaks into the center check");
    return rep;
}

} // namespace qgrass
