#include "doctest.h"

#include "stokes/lie.hpp"
#include "support.hpp"

using namespace stokes;
using testsupport::Rng;
using testsupport::matq_of;

static const LieSpec SL2(Flavor::sl, 2);
static const LieSpec SL3(Flavor::sl, 3);
static const LieSpec GL3(Flavor::gl, 3);

// diagonal ordered descending by (Re, Im) -- the framing tie-break
static bool diag_sorted(const MatQ& h) {
    for (int i = 0; i + 1 < h.rows(); i++) {
        const Rat &a = h(i, i), &b = h(i + 1, i + 1);
        if (a.re < b.re) return false;
        if (a.re == b.re && a.im < b.im) return false;
    }
    return true;
}

TEST_CASE("root_decompose splits entrywise") {
    MatQ h = matq_of(SL2, {1, 0, 0, -1});
    auto [hp, parts] = root_decompose(h, SL2);
    CHECK(hp == h);
    CHECK(parts.empty());

    MatQ e = matq_of(SL2, {0, 1, 0, 0});
    auto [hp2, parts2] = root_decompose(e, SL2);
    CHECK(hp2.is_zero());
    REQUIRE(parts2.size() == 1);
    CHECK(parts2.at({0, 1}) == Rat(1));

    MatQ x = matq_of(SL2, {2, 3, 5, -2});
    auto [hp3, parts3] = root_decompose(x, SL2);
    CHECK(hp3 == matq_of(SL2, {2, 0, 0, -2}));
    CHECK(parts3.at({0, 1}) == Rat(3));
    CHECK(parts3.at({1, 0}) == Rat(5));
}

TEST_CASE("root_decompose reassembles exactly") {
    Rng rng(11);
    for (int trial = 0; trial < 20; trial++) {
        const LieSpec& L = trial % 2 ? SL3 : GL3;
        MatQ x = rng.matq(L);
        auto [hp, parts] = root_decompose(x, L);
        MatQ sum = hp;
        for (auto& [a, c] : parts) sum += L.root_vector(a, c);
        CHECK(sum == x);
    }
}

TEST_CASE("ad_invert on sl2 eigenvectors") {
    MatQ h = matq_of(SL2, {1, 0, 0, -1});
    MatQ y = matq_of(SL2, {0, 1, 0, 0});
    MatQ x = ad_invert(h, y, SL2);
    CHECK(x(0, 1) == Rat(1, 2));
    CHECK(x(1, 0).is_zero());

    MatQ h2 = matq_of(SL2, {2, 0, 0, -2});
    MatQ y2 = matq_of(SL2, {0, 0, 3, 0});
    MatQ x2 = ad_invert(h2, y2, SL2);
    CHECK(x2(1, 0) == Rat(-3, 4));

    MatQ zero(2, 2);
    CHECK_THROWS_AS(ad_invert(zero, y, SL2), DomainError);
}

TEST_CASE("ad_invert round-trips through the bracket") {
    Rng rng(12);
    for (int trial = 0; trial < 25; trial++) {
        const LieSpec& L = trial % 2 ? SL2 : SL3;
        MatQ h = rng.regular_cartan(L);
        MatQ y = LieSpec::offcartan_part(rng.matq(L));
        MatQ x = ad_invert(h, y, L);
        CHECK(bracket(h, x) == y);
        CHECK(LieSpec::cartan_part(x).is_zero());
    }
}

TEST_CASE("is_regular_semisimple exact") {
    CHECK(is_regular_semisimple(matq_of(SL2, {1, 0, 0, -1})));
    CHECK_FALSE(is_regular_semisimple(matq_of(SL2, {0, 1, 0, 0})));
    // char poly z^2 - 1 factors with roots +-1
    CHECK(is_regular_semisimple(matq_of(SL2, {0, 1, 1, 0})));
    // distinct but irrational eigenvalues still counts as regular
    CHECK(is_regular_semisimple(matq_of(SL2, {0, 2, 1, 0})));
}

TEST_CASE("is_regular_semisimple float raises Indeterminate for collisions") {
    MatC nil(2, 2);
    nil(0, 0) = Cplx(64);
    nil(0, 1) = Cplx(1.0, 0.0, 64);
    nil(1, 0) = Cplx(64);
    nil(1, 1) = Cplx(64);
    CHECK_THROWS_AS(is_regular_semisimple(nil), DomainError);
    MatC ok(2, 2);
    ok(0, 0) = Cplx(1.0, 0.0, 64);
    ok(0, 1) = Cplx(1.0, 0.0, 64);
    ok(1, 0) = Cplx(64);
    ok(1, 1) = Cplx(-1.0, 0.0, 64);
    CHECK(is_regular_semisimple(ok));
}

TEST_CASE("unipotent_conjugate_to_cartan") {
    MatQ d = matq_of(SL2, {1, 0, 0, -1});
    auto [u0, h0] = unipotent_conjugate_to_cartan(d, SL2);
    CHECK(u0 == MatQ::identity(2));
    CHECK(h0 == d);

    MatQ a = matq_of(SL2, {1, 5, 0, -1});
    auto [u, h] = unipotent_conjugate_to_cartan(a, SL2);
    CHECK(u(0, 1) == Rat(5, 2));
    CHECK(h == d);
    CHECK(u * a == h * u);  // u A u^-1 = h without forming the inverse

    CHECK_THROWS_AS(unipotent_conjugate_to_cartan(matq_of(SL2, {1, 1, 0, 1}), SL2),
                    DomainError);
}

TEST_CASE("unipotent reduction is gauge independent in h") {
    Rng rng(13);
    for (int trial = 0; trial < 20; trial++) {
        const LieSpec& L = trial % 2 ? SL2 : SL3;
        MatQ a = rng.regular_borel(L);
        MatQ v = MatQ::identity(L.n) + rng.nilq(L);
        MatQ a2 = v * a * v.inverse();
        auto [u1, h1] = unipotent_conjugate_to_cartan(a, L);
        auto [u2, h2] = unipotent_conjugate_to_cartan(a2, L);
        CHECK(h1 == h2);
        // composite unipotent consistency: u2 * v conjugates like u1
        MatQ w = u2 * v;
        CHECK(w * a == h1 * w);
    }
}

TEST_CASE("compatible_framing exact") {
    MatQ d = matq_of(SL2, {3, 0, 0, -3});
    auto [g0, h0] = compatible_framing(d, SL2);
    CHECK(g0 == MatQ::identity(2));
    CHECK(h0 == d);

    MatQ s = matq_of(SL2, {0, 1, 1, 0});
    auto [g, h] = compatible_framing(s, SL2);
    CHECK(h == matq_of(SL2, {1, 0, 0, -1}));
    CHECK(g * s == h * g);

    CHECK_THROWS_AS(compatible_framing(matq_of(SL2, {0, 1, 0, 0}), SL2), DomainError);
}

TEST_CASE("compatible_framing is deterministic on the exact backend") {
    Rng rng(14);
    for (int trial = 0; trial < 10; trial++) {
        // build a matrix with known rational eigenvalues
        MatQ h = rng.regular_cartan(SL3, false);
        MatQ p = MatQ::identity(3) + rng.nilq(SL3);
        MatQ a = p * h * p.inverse();
        auto [g1, h1] = compatible_framing(a, SL3);
        auto [g2, h2] = compatible_framing(a, SL3);
        CHECK(g1 == g2);
        CHECK(h1 == h2);
        CHECK(g1 * a == h1 * g1);
        CHECK(diag_sorted(h1));
    }
}

TEST_CASE("compatible_framing float") {
    Rng rng(15);
    for (int trial = 0; trial < 6; trial++) {
        MatC a = rng.matc(SL3, 128);
        auto [g, h] = compatible_framing(a, SL3);
        CHECK(LieSpec::is_diagonal(h));
        Real resid = fro_norm(g * a - h * g);
        CHECK(resid < Real::eps2(100, 128));
    }
}

TEST_CASE("exact framing of irrational spectrum reports Indeterminate") {
    MatQ a = matq_of(SL2, {0, 2, 1, 0});  // eigenvalues +-sqrt(2)
    CHECK_THROWS_AS(compatible_framing(a, SL2), DomainError);
    try {
        compatible_framing(a, SL2);
    } catch (const DomainError& e) {
        CHECK(e.code() == Err::Indeterminate);
    }
}
