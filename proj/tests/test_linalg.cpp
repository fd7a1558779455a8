#include "qgrass/linalg.hpp"
#include "qgrass/scalar_context.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qgrass;

namespace {

Mat<Quad> random_mat(std::mt19937& rng, int n, long N) {
    std::uniform_int_distribution<int> v(-3, 3);
    Mat<Quad> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Quad(Rat(v(rng)), Rat(v(rng)), N);
    return m;
}

} // namespace

TEST_CASE("dense rank, kernel, inverse over a quadratic field") {
    std::mt19937 rng(5150);
    for (int t = 0; t < 30; ++t) {
        Mat<Quad> m = random_mat(rng, 5, 2);
        Mat<Quad> k = m.kernel();
        REQUIRE(m.rank() + k.rows() == 5);
        // every kernel row is annihilated
        for (int i = 0; i < k.rows(); ++i) {
            for (int r = 0; r < 5; ++r) {
                Quad acc(0);
                for (int c = 0; c < 5; ++c) acc += m.at(r, c) * k.at(i, c);
                REQUIRE(acc.is_zero());
            }
        }
        if (m.rank() == 5) {
            REQUIRE(m * m.inverse() == Mat<Quad>::identity(5));
        }
    }
}

TEST_CASE("characteristic polynomial on small exact matrices") {
    // companion-style check: diag(1, q^2, q^-2) at q = sqrt(2)
    QuadCtx ctx{2};
    Mat<Quad> m(3, 3);
    m.at(0, 0) = Quad(1);
    m.at(1, 1) = ctx.q_power(2);
    m.at(2, 2) = ctx.q_power(-2);
    auto c = m.charpoly();
    // p(x) = (x-1)(x-2)(x-1/2) = x^3 - 7/2 x^2 + 7/2 x - 1
    REQUIRE(c[3] == Quad(1));
    REQUIRE(c[2] == Quad(Rat(-7, 2)));
    REQUIRE(c[1] == Quad(Rat(7, 2)));
    REQUIRE(c[0] == Quad(-1));

    std::mt19937 rng(99);
    for (int t = 0; t < 10; ++t) {
        Mat<Quad> a = random_mat(rng, 4, 2);
        auto cp = a.charpoly();
        // Cayley-Hamilton
        Mat<Quad> acc(4, 4);
        Mat<Quad> pw = Mat<Quad>::identity(4);
        for (int i = 0; i <= 4; ++i) {
            acc = acc + pw.scaled(cp[i]);
            pw = pw * a;
        }
        REQUIRE(acc.is_zero());
    }
}

TEST_CASE("sparse products agree with dense") {
    std::mt19937 rng(321);
    std::uniform_int_distribution<int> v(-2, 2);
    for (int t = 0; t < 20; ++t) {
        SparseMat<Quad> a(6, 6), b(6, 6);
        for (int k = 0; k < 12; ++k) {
            a.add_entry(rng() % 6, rng() % 6, Quad(Rat(v(rng)), Rat(v(rng)), 3));
            b.add_entry(rng() % 6, rng() % 6, Quad(Rat(v(rng)), Rat(v(rng)), 3));
        }
        REQUIRE((a * b).to_dense() == a.to_dense() * b.to_dense());
        REQUIRE((a + b).to_dense() == a.to_dense() + b.to_dense());
        REQUIRE((a - b).to_dense() == a.to_dense() - b.to_dense());
    }
}

TEST_CASE("row space accumulation") {
    RowSpace<Quad> rs(10);
    using Row = RowSpace<Quad>::Row;
    Row r1{{0, Quad(1)}, {3, Quad(2)}};
    Row r2{{0, Quad(2)}, {3, Quad(4)}};
    Row r3{{1, Quad(1)}};
    CHECK(rs.insert(r1) == 0);
    CHECK(rs.insert(r2) < 0); // dependent
    CHECK(rs.insert(r3) == 1);
    CHECK(rs.dim() == 2);
    CHECK(rs.contains(Row{{0, Quad(3)}, {1, Quad(5)}, {3, Quad(6)}}));
    CHECK_FALSE(rs.contains(Row{{2, Quad(1)}}));
}

TEST_CASE("restriction to an invariant row span") {
    QuadCtx ctx{2};
    // X acts on e0, e1, e2 with invariant span {e0 + e1, e2}
    Mat<Quad> X(3, 3);
    X.at(0, 0) = X.at(1, 1) = ctx.q_power(2);
    X.at(2, 2) = ctx.q_power(-2);
    Mat<Quad> B(2, 3);
    B.at(0, 0) = B.at(0, 1) = Quad(1);
    B.at(1, 2) = Quad(1);
    Mat<Quad> R = restrict_to_rows(X, B);
    CHECK(R.at(0, 0) == ctx.q_power(2));
    CHECK(R.at(1, 1) == ctx.q_power(-2));
    CHECK(R.at(0, 1).is_zero());
    CHECK(R.at(1, 0).is_zero());
}
