#include "qgrass/homs.hpp"
#include "qgrass/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qgrass;

namespace {

Word random_word(std::mt19937& rng, Alg alg, int max_len) {
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

const RatFun inv_qq = RatFun(1) / (RatFun::q_power(1) - RatFun::q_power(-1));

} // namespace

TEST_CASE("normal form of the defining commutators") {
    const RewriteSystem& w = system(Alg::W);
    // F1 E1 = E1 F1 - (q-q^-1)^-1 K1 + (q-q^-1)^-1 I K1^-1
    PBW lhs = w.normal_form(parse_word("F1*E1", Alg::W));
    PBW rhs = w.element({
        {RatFun(1), {{gen::E1, 1}, {gen::F1, 1}}},
        {-inv_qq, {{gen::K1, 1}}},
        {inv_qq, {{gen::I, 1}, {gen::K1, -1}}},
    });
    CHECK(lhs == rhs);

    CHECK(w.normal_form(parse_word("E2*E1", Alg::W)) == w.normal_form(parse_word("E1*E2", Alg::W)));
    CHECK(w.normal_form(parse_word("K1*K1^-1", Alg::W)) == w.one());
    CHECK(w.normal_form(parse_word("I*I^-1", Alg::W)) == w.one());
    CHECK(w.normal_form(parse_word("K2*K2^-1", Alg::W)) == w.one());

    // F2 E2 = E2 F2 - (I K2 - K2^-1)/(q - q^-1)
    PBW lhs2 = w.normal_form(parse_word("F2*E2", Alg::W));
    PBW rhs2 = w.element({
        {RatFun(1), {{gen::E2, 1}, {gen::F2, 1}}},
        {-inv_qq, {{gen::I, 1}, {gen::K2, 1}}},
        {inv_qq, {{gen::K2, -1}}},
    });
    CHECK(lhs2 == rhs2);

    const RewriteSystem& u = system(Alg::U);
    // K E = q^2 E K
    CHECK(u.normal_form(parse_word("K*E", Alg::U)) ==
          u.normal_form(parse_word("E*K", Alg::U)).scaled(RatFun::q_power(2)));
}

TEST_CASE("termination and practical confluence: leftmost vs rightmost") {
    std::mt19937 rng(424242);
    for (Alg alg : {Alg::U, Alg::UU, Alg::W}) {
        const RewriteSystem& sys = system(alg);
        for (int t = 0; t < 500; ++t) {
            Word w = random_word(rng, alg, 10);
            PBW a = sys.normal_form(w, ReduceOrder::LeftmostFirst);
            PBW b = sys.normal_form(w, ReduceOrder::RightmostFirst);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("faithfulness against the Laurent-module oracle") {
    const RewriteSystem& w = system(Alg::W);
    // E1^2 K2 maps 1 to x1^2 z2
    PBW img = WOracle::apply_word(parse_word("E1^2*K2", Alg::W));
    PBW expect(Alg::W);
    expect.add(Mono{2, 0, 0, 0, 0, 1, 0}, RatFun(1));
    CHECK(img == expect);

    // empty word maps 1 to 1
    CHECK(WOracle::apply_word({}) == WOracle::apply_elementwise(w.one()));

    // F1 E1 applied to 1 agrees with its normal form applied elementwise
    Word fe = parse_word("F1*E1", Alg::W);
    CHECK(WOracle::apply_word(fe) == WOracle::apply_elementwise(w.normal_form(fe)));

    std::mt19937 rng(31337);
    for (int t = 0; t < 200; ++t) {
        Word word = random_word(rng, Alg::W, 8);
        REQUIRE(WOracle::apply_word(word) == WOracle::apply_elementwise(w.normal_form(word)));
    }
}

TEST_CASE("generator images of the homomorphisms") {
    const RewriteSystem& u = system(Alg::U);
    const RewriteSystem& w = system(Alg::W);

    // comultiplication: E -> E (x) 1 + K^-1 (x) E; 1 -> 1 (x) 1
    CHECK(hom_comult().image(gen::UE) ==
          tensor(u.generator(gen::UE), u.one()) + tensor(u.generator(gen::UK, -1), u.generator(gen::UE)));
    CHECK(hom_comult().apply(u.one()) == system(Alg::UU).one());

    // covering projection kills I - 1 and sends the central elements to
    // Casimir (x) 1 and 1 (x) Casimir
    CHECK(hom_cover().apply(w.generator(gen::I) - w.one()).is_zero());
    CHECK(hom_cover().apply(casimir_w1()) == tensor(casimir_u(), u.one()));
    CHECK(hom_cover().apply(casimir_w2()) == tensor(u.one(), casimir_u()));

    // lift of the comultiplication on generators
    CHECK(hom_comult_lift().image(gen::UE) ==
          w.generator(gen::E1) + w.element({{RatFun(1), {{gen::K1, -1}, {gen::E2, 1}}}}));
    CHECK(hom_comult_lift().apply_word(parse_word("K*K^-1", Alg::U)) == w.one());

    // Hahn images
    CHECK(hahn_images_w().A == w.generator(gen::K2, -1));
    RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
    CHECK(hahn_images_w().C ==
          w.element({{RatFun(1), {{gen::I, 1}, {gen::K1, -1}}},
                     {-RatFun::q_power(1) * w2, {{gen::E1, 1}, {gen::F2, 1}, {gen::K2, -1}}}}));
    CHECK(hahn_images_w().beta == w.mul(w.generator(gen::I), hom_comult_lift().apply_word({{gen::UK, -1}})));
    CHECK(hahn_images_uu().A == tensor(u.one(), u.generator(gen::UK, -1)));
    CHECK(hahn_images_uu().beta == hom_comult().apply_word({{gen::UK, -1}}));
}

TEST_CASE("image of the Casimir element under the lifted comultiplication") {
    const RewriteSystem& w = system(Alg::W);
    PBW lam = hom_comult_lift().apply(casimir_u());
    RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
    // (q-q^-1)^2 (K1^-1 E2 F1 K2 + E1 F2) + L1 K2 + K1^-1 L2 - (q+q^-1) I K1^-1 K2
    PBW expect = w.element({{w2, {{gen::K1, -1}, {gen::E2, 1}, {gen::F1, 1}, {gen::K2, 1}}},
                            {w2, {{gen::E1, 1}, {gen::F2, 1}}}}) +
                 w.mul(casimir_w1(), w.generator(gen::K2)) +
                 w.mul(w.generator(gen::K1, -1), casimir_w2()) -
                 w.element({{RatFun::q_power(1) + RatFun::q_power(-1), {{gen::I, 1}, {gen::K1, -1}, {gen::K2, 1}}}});
    CHECK(lam == expect);
    // leading structure: coefficient of E1 F2 is (q-q^-1)^2
    CHECK(lam.coeff(Mono{1, 0, 0, 1, 0, 0, 0}) == w2);
    // and B maps to it
    CHECK(hahn_images_w().B == lam);
}

TEST_CASE("expansion of the comultiplied Casimir element") {
    const RewriteSystem& u = system(Alg::U);
    PBW dl = hom_comult().apply(casimir_u());
    RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
    // coefficient of E F (x) K in the normalized expansion is (q-q^-1)^2
    CHECK(dl.coeff(uu_mono(Mono{1, 1, 0}, Mono{0, 0, 1})) == w2);
    // cross-checked against the lift composed with the covering projection
    CHECK(dl == hom_cover().apply(hom_comult_lift().apply(casimir_u())));
    CHECK(hahn_images_uu().B == dl);
    (void)u;
}

TEST_CASE("homomorphism law on random word pairs") {
    std::mt19937 rng(777);
    struct Case {
        const Hom& h;
        Alg src;
    };
    const Case cases[] = {{hom_comult(), Alg::U}, {hom_cover(), Alg::W}, {hom_comult_lift(), Alg::U}};
    for (auto& [h, src] : cases) {
        const RewriteSystem& s = system(src);
        const RewriteSystem& d = system(h.dst());
        for (int t = 0; t < 100; ++t) {
            Word w1 = random_word(rng, src, 5), w2 = random_word(rng, src, 5);
            Word cat = w1;
            cat.insert(cat.end(), w2.begin(), w2.end());
            // applying h to the normal form of w1*w2 equals h(w1) h(w2):
            // the homomorphism respects the defining relations
            PBW lhs = h.apply(s.normal_form(cat));
            PBW rhs = d.mul(h.apply_word(w1), h.apply_word(w2));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("covering projection after the lift equals the comultiplication") {
    const RewriteSystem& u = system(Alg::U);
    for (Word w : {parse_word("E", Alg::U), parse_word("F", Alg::U), parse_word("K", Alg::U),
                   parse_word("K^-1", Alg::U)})
        CHECK(hom_cover().apply(hom_comult_lift().apply_word(w)) == hom_comult().apply_word(w));
    std::mt19937 rng(555);
    for (int t = 0; t < 50; ++t) {
        PBW x = u.normal_form(random_word(rng, Alg::U, 6));
        REQUIRE(hom_cover().apply(hom_comult_lift().apply(x)) == hom_comult().apply(x));
    }
}

TEST_CASE("covering projection after the Hahn lift equals the Hahn embedding") {
    for (HGen g : {HGen::A, HGen::B, HGen::C, HGen::Alpha, HGen::Beta, HGen::Gamma})
        CHECK(hom_cover().apply(hahn_images_w()[g]) == hahn_images_uu()[g]);
}

TEST_CASE("centrality") {
    const RewriteSystem& w = system(Alg::W);
    CHECK(check_central(casimir_u()));
    CHECK(check_central(casimir_w1()));
    CHECK(check_central(casimir_w2()));
    CHECK(check_central(w.generator(gen::I)));
    CHECK_FALSE(check_central(w.generator(gen::E1)));
    CHECK_FALSE(check_central(system(Alg::U).generator(gen::UK)));
}

TEST_CASE("both closed forms of the central elements agree") {
    const RewriteSystem& w = system(Alg::W);
    RatFun w2 = (RatFun::q_power(1) - RatFun::q_power(-1)).pow(2);
    PBW alt1 = w.element({{w2, {{gen::F1, 1}, {gen::E1, 1}}},
                          {RatFun::q_power(1), {{gen::K1, 1}}},
                          {RatFun::q_power(-1), {{gen::I, 1}, {gen::K1, -1}}}});
    CHECK(alt1 == casimir_w1());
    PBW alt2 = w.element({{w2, {{gen::F2, 1}, {gen::E2, 1}}},
                          {RatFun::q_power(1), {{gen::I, 1}, {gen::K2, 1}}},
                          {RatFun::q_power(-1), {{gen::K2, -1}}}});
    CHECK(alt2 == casimir_w2());
}

TEST_CASE("q-Hahn relation check for both embeddings") {
    std::string why;
    CHECK(check_hq_relations(hahn_images_w(), Alg::W, &why));
    CHECK(check_hq_relations(hahn_images_uu(), Alg::UU, &why));

    // perturbing C breaks the beta relation
    HImages bad = hahn_images_w();
    bad.C += system(Alg::W).generator(gen::E1);
    CHECK_FALSE(check_hq_relations(bad, Alg::W, &why));
    CHECK(!why.empty());
}

TEST_CASE("lifted comultiplication of K centralizes the Hahn lift image") {
    const RewriteSystem& w = system(Alg::W);
    PBW dk = hom_comult_lift().apply_word({{gen::UK, 1}});
    for (HGen g : {HGen::A, HGen::B, HGen::Gamma})
        CHECK(w.bracket(dk, hahn_images_w()[g]).is_zero());
}

TEST_CASE("commutation identities for E F^n and E^m F^n") {
    CHECK(verify_commutation_identity(CommutationKind::E1F1n, 0, 1));
    CHECK(verify_commutation_identity(CommutationKind::E1F1n, 0, 3));
    CHECK(verify_commutation_identity(CommutationKind::E1mF1n, 2, 3));
    for (int n = 1; n <= 6; ++n) {
        REQUIRE(verify_commutation_identity(CommutationKind::E1F1n, 0, n));
        REQUIRE(verify_commutation_identity(CommutationKind::E2F2n, 0, n));
        for (int m = 0; m <= n; ++m) {
            REQUIRE(verify_commutation_identity(CommutationKind::E1mF1n, m, n));
            REQUIRE(verify_commutation_identity(CommutationKind::E2mF2n, m, n));
        }
    }
}

TEST_CASE("a corrupted rewrite rule is caught") {
    RewriteSystem w(Alg::W);
    w.corrupt_first_rule();
    // the corrupted relation no longer matches the oracle action
    Word fe = parse_word("F1*E1", Alg::W);
    CHECK(WOracle::apply_word(fe) != WOracle::apply_elementwise(w.normal_form(fe)));
}
