#include "doctest.h"

#include <cmath>
#include <complex>

#include "stokes/stokes_geometry.hpp"
#include "support.hpp"

using namespace stokes;
using testsupport::Rng;

static const LieSpec SL2(Flavor::sl, 2);
static const unsigned P = 128;

static MatC diagC(double a_re, double a_im, double b_re, double b_im) {
    MatC m(2, 2);
    m(0, 0) = Cplx(a_re, a_im, P);
    m(1, 1) = Cplx(b_re, b_im, P);
    return m;
}

// Oracle: dense angular scan in double precision. A ray of the root alpha is
// bracketed where Im(alpha(h) e^{i(1-n)t}) changes sign while the real part
// stays negative.
static std::vector<double> scan_rays(std::complex<double> alpha_h, int n, int grid = 200000) {
    std::vector<double> found;
    const double tp = 2 * M_PI;
    auto val = [&](double t) { return alpha_h * std::exp(std::complex<double>(0, (1 - n) * t)); };
    for (int k = 0; k < grid; k++) {
        double t0 = tp * k / grid, t1 = tp * (k + 1) / grid;
        auto v0 = val(t0), v1 = val(t1);
        if (v0.imag() == 0 && v0.real() < 0) {
            found.push_back(t0);
            continue;
        }
        if (v0.imag() * v1.imag() < 0 && v0.real() < 0)
            found.push_back(t0 + (t1 - t0) * std::abs(v0.imag()) /
                                     (std::abs(v0.imag()) + std::abs(v1.imag())));
    }
    return found;
}

static void check_rays_against_scan(const MatC& h, int n) {
    auto rays = anti_stokes(h, n, SL2);
    std::vector<double> expected;
    for (auto a : SL2.roots()) {
        Cplx c = h(a.i, a.i) - h(a.j, a.j);
        for (double t : scan_rays({c.re.to_double(), c.im.to_double()}, n))
            expected.push_back(t);
    }
    std::sort(expected.begin(), expected.end());
    // merge scan duplicates
    std::vector<double> merged;
    for (double t : expected)
        if (merged.empty() || t - merged.back() > 1e-3)
            merged.push_back(t);
        else
            merged.back() = (merged.back() + t) / 2;
    if (merged.size() > 1 && merged.front() + 2 * M_PI - merged.back() < 1e-3) merged.pop_back();
    REQUIRE(rays.size() == merged.size());
    for (size_t i = 0; i < rays.size(); i++)
        CHECK(std::abs(rays[i].theta.to_double() - merged[i]) < 1e-4);
}

TEST_CASE("anti-Stokes rays match the angular scan oracle") {
    // sl2, n = 2, h = diag(1,-1) -> {0, pi}
    MatC h1 = diagC(1, 0, -1, 0);
    auto rays1 = anti_stokes(h1, 2, SL2);
    REQUIRE(rays1.size() == 2);
    CHECK(abs(rays1[0].theta) < Real::eps2(100, P));
    CHECK(abs(rays1[1].theta - Real::pi(P)) < Real::eps2(100, P));
    check_rays_against_scan(h1, 2);

    // sl2, n = 3, h = diag(1,-1) -> {0, pi/2, pi, 3pi/2}
    auto rays2 = anti_stokes(h1, 3, SL2);
    REQUIRE(rays2.size() == 4);
    for (int k = 0; k < 4; k++)
        CHECK(abs(rays2[size_t(k)].theta - Real(double(k), P) * Real::pi(P) / Real(2L, P)) <
              Real::eps2(100, P));
    check_rays_against_scan(h1, 3);

    // sl2, n = 2, h = diag(i,-i) -> {pi/2, 3pi/2}
    MatC h2 = diagC(0, 1, 0, -1);
    auto rays3 = anti_stokes(h2, 2, SL2);
    REQUIRE(rays3.size() == 2);
    CHECK(abs(rays3[0].theta - Real::pi(P) / Real(2L, P)) < Real::eps2(100, P));
    CHECK(abs(rays3[1].theta - Real(3L, P) * Real::pi(P) / Real(2L, P)) < Real::eps2(100, P));
    check_rays_against_scan(h2, 2);

    // a skew generic example against the oracle
    check_rays_against_scan(diagC(0.7, 0.31, -0.7, -0.31), 4);
}

TEST_CASE("ray count for sl2 is 2(n-1) and each ray satisfies the defining identity") {
    Rng rng(41);
    for (int n = 2; n <= 5; n++) {
        MatC h(2, 2);
        Cplx v = rng.cplx(P);
        h(0, 0) = v;
        h(1, 1) = -v;
        auto rays = anti_stokes(h, n, SL2);
        CHECK(rays.size() == size_t(2 * (n - 1)));
        for (const auto& ray : rays)
            for (auto a : ray.roots) {
                // arg(alpha(h)) + (1-n) theta = pi (mod 2pi)
                Cplx c = h(a.i, a.i) - h(a.j, a.j);
                Real lhs = arg(c) + Real(long(1 - n), P) * ray.theta - Real::pi(P);
                Real tp = Real(2L, P) * Real::pi(P);
                Real frac = lhs / tp;
                CHECK(abs(frac - round(frac)) < Real("1e-30", P));
            }
    }
}

TEST_CASE("exact rays for axis-aligned spectra") {
    MatQ h(2, 2);
    h(0, 0) = Rat(1);
    h(1, 1) = Rat(-1);
    auto rays = exact_anti_stokes(h, 2, SL2);
    REQUIRE(rays.size() == 2);
    CHECK(rays[0].first == 0);
    CHECK(rays[1].first == 1);

    MatQ hi(2, 2);
    hi(0, 0) = Rat::i();
    hi(1, 1) = -Rat::i();
    auto rays2 = exact_anti_stokes(hi, 2, SL2);
    CHECK(rays2[0].first == mpq_class(1, 2));
    CHECK(rays2[1].first == mpq_class(3, 2));

    MatQ bad(2, 2);
    bad(0, 0) = Rat(mpq_class(1), mpq_class(2));
    bad(1, 1) = Rat(mpq_class(-1), mpq_class(-2));
    CHECK_THROWS_AS(exact_anti_stokes(bad, 2, SL2), DomainError);
}

TEST_CASE("sectors cover, overlap, and exceed the minimal width") {
    auto check_family = [](const MatC& h, int n) {
        auto rays = anti_stokes(h, n, SL2);
        auto secs = sectors(rays, n);
        REQUIRE(secs.size() == rays.size());
        Real min_width = Real::pi(P) / Real(long(n - 1), P);
        Real tp = Real(2L, P) * Real::pi(P);
        Real covered(P);
        for (size_t j = 0; j < secs.size(); j++) {
            CHECK(secs[j].width() > min_width);
            const auto& next = secs[(j + 1) % secs.size()];
            // consecutive overlap is a nonempty open arc
            Real next_lo = j + 1 < secs.size() ? next.lo : next.lo + tp;
            CHECK(next_lo < secs[j].hi);
            covered += next_lo - secs[j].lo;
        }
        CHECK(abs(covered - tp) < Real::eps2(100, P));  // closed chain covers the circle
    };
    check_family(diagC(1, 0, -1, 0), 2);
    check_family(diagC(1, 0.4, -1, -0.4), 3);
    check_family(diagC(0.2, 1.1, -0.2, -1.1), 5);
}

TEST_CASE("single-ray family gives one full-turn sector") {
    std::vector<AntiStokesRay> rays = {{Real(1.0, P), {{0, 1}}}};
    auto secs = sectors(rays, 2);
    REQUIRE(secs.size() == 1);
    Real tp = Real(2L, P) * Real::pi(P);
    CHECK(abs(secs[0].width() - (tp + Real::pi(P))) < Real::eps2(100, P));
}

TEST_CASE("sector family rotates with the leading coefficient") {
    Rng rng(42);
    for (int n = 2; n <= 4; n++) {
        MatC h(2, 2);
        Cplx v = rng.cplx(P);
        h(0, 0) = v;
        h(1, 1) = -v;
        auto base = anti_stokes(h, n, SL2);

        double phi = rng.uniform(0.05, 0.6);
        // multiply h by e^{i(n-1)phi}: every ray rotates by phi
        Cplx rot = Cplx::cis(Real(double(n - 1), P) * Real(phi, P));
        MatC h2 = h;
        h2(0, 0) = h2(0, 0) * rot;
        h2(1, 1) = h2(1, 1) * rot;
        auto moved = anti_stokes(h2, n, SL2);
        REQUIRE(moved.size() == base.size());
        // compare as rotated multisets modulo 2pi
        Real tp = Real(2L, P) * Real::pi(P);
        for (size_t i = 0; i < base.size(); i++) {
            Real expect = base[i].theta + Real(phi, P);
            bool hit = false;
            for (const auto& ray : moved) {
                Real d = abs(ray.theta - expect);
                while (d >= tp) d -= tp;
                if (d < Real("1e-12", P) || abs(d - tp) < Real("1e-12", P)) hit = true;
            }
            CHECK(hit);
        }
    }
}

TEST_CASE("formal solution evaluation") {
    // h1 = 0, Q = -H/z, z = 1 -> exp(H)
    MatC zero(2, 2);
    MatSeries<Cplx> q(2, -1, kExactOrder);
    MatC negH(2, 2);
    negH(0, 0) = Cplx(-1.0, 0.0, P);
    negH(1, 1) = Cplx(1.0, 0.0, P);
    q.set_coeff(-1, negH);
    StokesSector sec{1, Real(-1.0, P), Real(1.0, P), Real(0.0, P)};
    FormalBranch b{zero, q, sec};
    MatC v = eval_formal_solution(b, Cplx(1.0, 0.0, P));
    CHECK(abs(v(0, 0) - exp(Cplx(1.0, 0.0, P))) < Real("1e-30", P));
    CHECK(abs(v(1, 1) - exp(Cplx(-1.0, 0.0, P))) < Real("1e-30", P));

    // h1 = H, Q = 0, z = 1, branch arg 0 -> identity
    MatC h1(2, 2);
    h1(0, 0) = Cplx(1.0, 0.0, P);
    h1(1, 1) = Cplx(-1.0, 0.0, P);
    FormalBranch b2{h1, MatSeries<Cplx>::zero(2), sec};
    MatC v2 = eval_formal_solution(b2, Cplx(1.0, 0.0, P));
    CHECK(abs(v2(0, 0) - Cplx(1.0, 0.0, P)) < Real("1e-30", P));

    // same but branch window forcing arg = 2pi -> exp(-2 pi i H)
    Real tp = Real(2L, P) * Real::pi(P);
    StokesSector sec3{1, tp - Real(1.0, P), tp + Real(1.0, P), tp};
    FormalBranch b3{h1, MatSeries<Cplx>::zero(2), sec3};
    MatC v3 = eval_formal_solution(b3, Cplx(1.0, 0.0, P));
    Cplx expect = exp(Cplx(Real(0.0, P), -tp));  // e^{-2pi i}
    CHECK(abs(v3(0, 0) - expect) < Real("1e-30", P));
    CHECK(abs(v3(1, 1) - exp(Cplx(Real(0.0, P), tp))) < Real("1e-30", P));

    // out of sector
    StokesSector sec4{1, Real(0.0, P), Real(0.5, P), Real(0.25, P)};
    FormalBranch b4{h1, MatSeries<Cplx>::zero(2), sec4};
    CHECK_THROWS_AS(eval_formal_solution(b4, Cplx(-1.0, 0.0, P)), DomainError);
}