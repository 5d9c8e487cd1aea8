#include <doctest.h>

#include "mukai/error.hpp"
#include "mukai/rank2.hpp"
#include "support.hpp"

using namespace mukai;

namespace {

BinaryEvenForm random_form(bool want_square) {
    for (;;) {
        const BinaryEvenForm f{testing::uniform(-30, 30), testing::uniform(-30, 30), testing::uniform(-30, 30)};
        const Integer delta = f.delta();
        if (delta <= 0) continue;
        if (is_perfect_square(delta).has_value() == want_square) return f;
    }
}

bool isotropic_in_box(const BinaryEvenForm& f, long box) {
    for (long p = -box; p <= box; ++p)
        for (long q = -box; q <= box; ++q)
            if ((p != 0 || q != 0) && f.value(p, q) == 0) return true;
    return false;
}

}  // namespace

TEST_SUITE("rank2") {

TEST_CASE("classification") {
    const auto sq = classify({1, 2, 0});
    REQUIRE(std::holds_alternative<SquareDiscriminant>(sq));
    CHECK(std::get<SquareDiscriminant>(sq).root == 2);
    // N = 1: (2 + N)^2 - 4 = 5
    CHECK(std::holds_alternative<NonsquareDiscriminant>(classify({1, 3, 1})));
    CHECK(std::get<SquareDiscriminant>(classify({0, 1, 0})).root == 1);
    CHECK(std::get<SquareDiscriminant>(classify({1, 2, 1})).root == 0);
    CHECK(std::holds_alternative<DefiniteDiscriminant>(classify({1, 0, 1})));
    CHECK(form_from_gram(2, 2, 0) == BinaryEvenForm{1, 2, 0});
    CHECK_THROWS_AS(form_from_gram(1, 2, 0), Error);
}

TEST_CASE("embedding into U") {
    CHECK(embed_into_u({1, 2, 0}) == UEmbedding{1, 1, 0, 2});
    CHECK(embed_into_u({0, 1, 0}) == UEmbedding{1, 0, 0, 1});
    try {
        (void)embed_into_u({1, 3, 1});
        FAIL("nonsquare form embedded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoEmbedding);
    }
    // Degenerate Delta = 0 lands on one isotropic ray.
    const UEmbedding deg = embed_into_u({1, 2, 1});
    CHECK(preserves_gram(deg, {1, 2, 1}));
    CHECK(deg.s * deg.y - deg.t * deg.x == 0);
}

TEST_CASE("isotropic vectors") {
    CHECK(isotropic_vector({1, 2, 0}) == std::make_pair(Integer(0), Integer(1)));
    CHECK_FALSE(isotropic_vector({1, 3, 1}).has_value());
    CHECK(isotropic_vector({0, 1, 0}) == std::make_pair(Integer(1), Integer(0)));
}

TEST_CASE("random square forms embed and carry isotropic vectors") {
    for (int i = 0; i < 300; ++i) {
        const BinaryEvenForm f = random_form(true);
        CAPTURE(to_string(f));
        const UEmbedding e = embed_into_u(f);
        CHECK(preserves_gram(e, f));
        // U pairings of the images: (s f + x g)^2 = 2 s x, etc.
        CHECK(2 * e.s * e.x == 2 * f.a);
        CHECK(e.s * e.y + e.t * e.x == f.b);
        CHECK(2 * e.t * e.y == 2 * f.c);
        const auto iso = isotropic_vector(f);
        REQUIRE(iso.has_value());
        CHECK(f.value(iso->first, iso->second) == 0);
        CHECK(gcd(iso->first, iso->second) == 1);
    }
    // Forms built from an embedding are square by construction.
    for (int i = 0; i < 200; ++i) {
        const Integer s = testing::uniform(-9, 9), x = testing::uniform(-9, 9);
        const Integer t = testing::uniform(-9, 9), y = testing::uniform(-9, 9);
        if (s * y - t * x == 0) continue;
        const BinaryEvenForm f{s * x, s * y + t * x, t * y};
        CHECK(preserves_gram(embed_into_u(f), f));
    }
}

TEST_CASE("random nonsquare forms have no isotropic vector") {
    for (int i = 0; i < 200; ++i) {
        const BinaryEvenForm f = random_form(false);
        CAPTURE(to_string(f));
        CHECK_THROWS_AS(embed_into_u(f), Error);
        CHECK_FALSE(isotropic_vector(f).has_value());
        CHECK_FALSE(isotropic_in_box(f, 50));
    }
}

TEST_CASE("pell isometries") {
    const Isometry2x2 g = isometry_from_pell({1, 0, -2});
    CHECK(g == Isometry2x2{3, 4, 2, 3});
    CHECK(g.preserves({1, 0, -2}));
    CHECK(isometry_from_pell({1, 3, 1}) == Isometry2x2{0, -1, 1, 3});
    CHECK_THROWS_AS(isometry_from_pell({1, 2, 0}), Error);
    CHECK_THROWS_AS(isometry_from_pell({1, 0, 1}), Error);

    for (int i = 0; i < 100; ++i) {
        const BinaryEvenForm f = random_form(false);
        CAPTURE(to_string(f));
        const Isometry2x2 m = isometry_from_pell(f);
        CHECK(m.det() == 1);
        CHECK(m.preserves(f));
        Isometry2x2 p = Isometry2x2::identity();
        for (int k = 1; k <= 12; ++k) {
            p = p * m;
            CHECK_FALSE(p == Isometry2x2::identity());
        }
    }
}

TEST_CASE("stabilization modulo r") {
    const Isometry2x2 g{3, 4, 2, 3};
    auto s1 = stabilize_mod(g, 1);
    CHECK(s1.isometry == g);
    CHECK(s1.exponent == 1);
    auto s2 = stabilize_mod(g, 2);
    CHECK(s2.isometry == g);
    CHECK(s2.exponent == 1);

    const Isometry2x2 h{0, -1, 1, 3};
    for (long r = 1; r <= 30; ++r) {
        CAPTURE(r);
        const auto st = stabilize_mod(h, r);
        CHECK(st.isometry.is_identity_mod(r));
        CHECK(st.isometry.trace() > 0);
        // Smallest stabilizing power by plain iteration.
        Isometry2x2 p = h;
        long n = 1;
        while (!p.is_identity_mod(r)) {
            p = p * h;
            ++n;
        }
        if (p.trace() > 0) {
            CHECK(st.exponent == n);
            CHECK(st.isometry == p);
        } else {
            CHECK(st.exponent == 2 * n);
            CHECK(st.isometry == p * p);
        }
    }
    CHECK(stabilize_mod(h, 3).isometry.is_identity_mod(3));
}

}  // TEST_SUITE
