#include "doctest.h"

#include "stokes/gauge.hpp"
#include "support.hpp"

using namespace stokes;
using testsupport::Rng;
using testsupport::matq_of;

static const LieSpec SL2(Flavor::sl, 2);

static MatQ H() { return matq_of(SL2, {1, 0, 0, -1}); }
static MatQ E() { return matq_of(SL2, {0, 1, 0, 0}); }

static MatSeries<Rat> rand_series(Rng& rng, const LieSpec& L, int lo, int hi) {
    MatSeries<Rat> s(L.n, lo, hi);
    for (int k = lo; k <= hi; k++) s.set_coeff(k, rng.matq(L));
    return s;
}

TEST_CASE("nilpotent products truncate exactly") {
    auto one = MatSeries<Rat>::identity(2);
    auto ez = MatSeries<Rat>::monomial(E(), 1);
    auto a = one + ez, b = one - ez;
    CHECK((a * b) == one);  // E^2 = 0
}

TEST_CASE("exp of a nilpotent monomial is finite") {
    auto ez = MatSeries<Rat>::monomial(E(), 1);
    auto g = ez.exp_series(8);
    CHECK(g == (MatSeries<Rat>::identity(2, 8) + ez));
}

TEST_CASE("series inverse against the geometric series oracle") {
    auto one = MatSeries<Rat>::identity(2);
    auto ez = MatSeries<Rat>::monomial(E(), 1);
    auto inv = (one + ez).inverse(8);
    // oracle: sum of (-Ez)^k through order 8
    MatSeries<Rat> oracle = MatSeries<Rat>::zero(2, 8);
    MatSeries<Rat> pow = MatSeries<Rat>::identity(2, 8);
    for (int k = 0; k <= 8; k++) {
        oracle = oracle + pow;
        pow = (pow * (-ez)).truncated(8);
    }
    CHECK(inv == oracle.truncated(8));
    CHECK(inv == (one - ez));
}

TEST_CASE("random series inverse round-trips") {
    Rng rng(21);
    for (int trial = 0; trial < 8; trial++) {
        MatSeries<Rat> s = rand_series(rng, SL2, -1, 5);
        MatQ lead = s.coeff(-1);
        if (is_zero(lead.det())) continue;
        auto inv = s.inverse();
        auto prod = s * inv;
        CHECK(prod == MatSeries<Rat>::identity(2, prod.hi()));
        CHECK(inv.hi() == 5 - 2 * (-1));
    }
}

TEST_CASE("exp and log are mutually inverse on 1+O(z)") {
    Rng rng(22);
    for (int trial = 0; trial < 8; trial++) {
        MatSeries<Rat> s = rand_series(rng, SL2, 1, 6);
        auto g = s.exp_series(6);
        auto back = g.log_series(6);
        CHECK(back == s.truncated(6));
        MatSeries<Rat> u = MatSeries<Rat>::identity(2, 6) + rand_series(rng, SL2, 1, 6);
        CHECK(u.log_series().exp_series() == u);
    }
}

TEST_CASE("derivative is a derivation over products") {
    Rng rng(23);
    for (int trial = 0; trial < 6; trial++) {
        MatSeries<Rat> a = rand_series(rng, SL2, -2, 4);
        MatSeries<Rat> b = rand_series(rng, SL2, 0, 4);
        auto lhs = (a * b).derivative();
        auto rhs = a.derivative() * b + a * b.derivative();
        CHECK(lhs.truncated(rhs.hi()) == rhs.truncated(lhs.hi()));
    }
}

TEST_CASE("coefficients beyond the reliable range are rejected") {
    MatSeries<Rat> s = MatSeries<Rat>::identity(2, 3);
    CHECK_THROWS_AS((void)s.coeff(4), DomainError);
    CHECK(s.coeff(2).is_zero());  // trailing zero inside the range
}

TEST_CASE("gauge classes") {
    auto one_plus = GaugeElement<Rat>::from_log(MatSeries<Rat>::monomial(H(), 2), 6);
    CHECK(one_plus.cls() == GaugeClass::one_plus_z);

    // exp(u0 + u1 z + g2 z^2 + ...) lies in G_2^U but not G_3^U
    MatSeries<Rat> s(2, 0, 6);
    s.set_coeff(0, E());
    s.set_coeff(1, Rat(2) * E());
    s.set_coeff(2, H());
    auto g = GaugeElement<Rat>::from_log(s, 6);
    CHECK(g.cls() == GaugeClass::positive_loop);
    CHECK(g.positive_loop_order() == 2);
    CHECK(g.in_positive_loop_group(2));
    CHECK_FALSE(g.in_positive_loop_group(3));

    auto c = GaugeElement<Rat>::constant(matq_of(SL2, {2, 0, 0, 1}));
    CHECK(c.cls() == GaugeClass::general);
}

static ConnectionGerm<Rat> germ_H_over_z2() {
    MatSeries<Rat> a = MatSeries<Rat>::monomial(H(), -2);
    return ConnectionGerm<Rat>(SL2, 2, a);
}

TEST_CASE("gauge action fixed points") {
    auto germ = germ_H_over_z2();
    auto id = GaugeElement<Rat>::identity(2);
    CHECK(gauge_act(id, germ).a == germ.a);

    auto t = GaugeElement<Rat>::constant(matq_of(SL2, {3, 0, 0, 5}));
    CHECK(gauge_act(t, germ).a == germ.a);  // commuting diagonal pair
}

TEST_CASE("gauge action of exp(Ez) on d + (H/z^2)dz") {
    auto germ = germ_H_over_z2();
    auto g = GaugeElement<Rat>::from_log(MatSeries<Rat>::monomial(E(), 1), 6);
    auto out = gauge_act(g, germ);
    // gAg^-1 + g'g^-1: [E,H] = -2E at 1/z, derivative term E at order 0
    CHECK(out.pole_order == 2);
    CHECK(out.a.coeff(-2) == H());
    CHECK(out.a.coeff(-1) == Rat(-2) * E());
    CHECK(out.a.coeff(0) == E());
    CHECK(out.a.coeff(1).is_zero());
}

TEST_CASE("infinitesimal gauge action matches [R,A] + R'") {
    using D = Dual<Rat>;
    Rng rng(24);
    for (int trial = 0; trial < 5; trial++) {
        MatSeries<Rat> avals = rand_series(rng, SL2, -2, 4);
        MatSeries<Rat> rvals = rand_series(rng, SL2, 0, 4);

        MatSeries<D> a(2, -2, 4), r(2, 0, 4);
        for (int k = -2; k <= 4; k++)
            a.set_coeff(k, avals.coeff(k).convert([](const Rat& x) { return D(x); }));
        for (int k = 0; k <= 4; k++)
            r.set_coeff(k, rvals.coeff(k).convert([](const Rat& x) { return D(Rat(0), x); }));

        ConnectionGerm<D> germ(LieSpec(Flavor::gl, 2), 2, a);
        auto g = GaugeElement<D>::from_log(r, 4);
        auto moved = gauge_act(g, germ);

        MatSeries<Rat> variation = rvals * avals - avals * rvals + rvals.derivative();
        for (int k = -2; k <= std::min(moved.a.hi(), variation.hi()); k++) {
            CHECK(moved.a.coeff(k).convert([](const D& x) { return x.a; }) == avals.coeff(k));
            CHECK(moved.a.coeff(k).convert([](const D& x) { return x.b; }) == variation.coeff(k));
        }
    }
}

// general gauge: exactly invertible constant times exp of an O(z) series
static GaugeElement<Rat> rand_gauge(Rng& rng, const LieSpec& L, int hi) {
    MatQ c = MatQ::identity(L.n) + rng.nilq(L);
    for (int i = 0; i < L.n; i++) c(i, i) = c(i, i) * rng.nonzero_rat();
    MatSeries<Rat> tail(L.n, 1, hi);
    for (int k = 1; k <= hi; k++) tail.set_coeff(k, rng.matq(L));
    return GaugeElement<Rat>::constant(c, hi) * GaugeElement<Rat>::from_log(tail, hi);
}

TEST_CASE("gauge action is a left action") {
    Rng rng(25);
    for (int trial = 0; trial < 5; trial++) {
        MatSeries<Rat> a = rand_series(rng, SL2, -2, 5);
        ConnectionGerm<Rat> germ(LieSpec(Flavor::gl, 2), 2, a);
        auto g1 = rand_gauge(rng, SL2, 5);
        auto g2 = GaugeElement<Rat>::from_log(rand_series(rng, SL2, 1, 5), 5);
        auto lhs = gauge_act(g1, gauge_act(g2, germ));
        auto rhs = gauge_act(g1 * g2, germ);
        CHECK(lhs.a == rhs.a);
    }
}

TEST_CASE("formal solutions transform as Phi -> Phi g^-1") {
    Rng rng(26);
    for (int trial = 0; trial < 3; trial++) {
        MatSeries<Rat> a = rand_series(rng, SL2, 0, 6);
        ConnectionGerm<Rat> germ(LieSpec(Flavor::gl, 2), 0, a);
        auto g = rand_gauge(rng, SL2, 6);
        CHECK(germ_solution_covariance_check(g, germ, 6));
    }
}
