#pragma once

// Shared deterministic generators for the test suites.

#include <random>

#include "stokes/lie.hpp"
#include "stokes/normal_form.hpp"

namespace testsupport {

using namespace stokes;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    /// Small nonzero-denominator rational, optionally Gaussian.
    Rat rat(bool gaussian = true, long span = 6) {
        mpq_class re(integer(-span, span), integer(1, 4));
        re.canonicalize();
        if (!gaussian) return Rat(re);
        mpq_class im(integer(-span, span), integer(1, 4));
        im.canonicalize();
        return Rat(re, im);
    }
    Rat nonzero_rat(bool gaussian = true, long span = 6) {
        for (;;) {
            Rat q = rat(gaussian, span);
            if (!q.is_zero()) return q;
        }
    }
    MatQ matq(const LieSpec& L, bool gaussian = true) {
        MatQ m(L.n, L.n);
        for (int i = 0; i < L.n; i++)
            for (int j = 0; j < L.n; j++) m(i, j) = rat(gaussian);
        if (L.flavor == Flavor::sl) {
            Rat t = m.trace();
            m(L.n - 1, L.n - 1) -= t;
        }
        return m;
    }
    /// Strictly upper triangular (nilradical of b).
    MatQ nilq(const LieSpec& L, bool gaussian = true) {
        MatQ m(L.n, L.n);
        for (int i = 0; i < L.n; i++)
            for (int j = i + 1; j < L.n; j++) m(i, j) = rat(gaussian);
        return m;
    }
    /// Upper triangular, in the algebra.
    MatQ borelq(const LieSpec& L, bool gaussian = true) {
        MatQ m = nilq(L, gaussian);
        for (int i = 0; i < L.n; i++) m(i, i) = rat(gaussian);
        if (L.flavor == Flavor::sl) {
            Rat t = m.trace();
            m(L.n - 1, L.n - 1) -= t;
        }
        return m;
    }
    /// Diagonal regular element of the Cartan (distinct entries).
    MatQ regular_cartan(const LieSpec& L, bool gaussian = true) {
        for (;;) {
            MatQ m(L.n, L.n);
            for (int i = 0; i < L.n; i++) m(i, i) = rat(gaussian);
            if (L.flavor == Flavor::sl) {
                Rat t = m.trace();
                m(L.n - 1, L.n - 1) -= t;
            }
            if (L.is_regular_cartan(m)) return m;
        }
    }
    /// Upper triangular with regular diagonal (b cap g^rs).
    MatQ regular_borel(const LieSpec& L, bool gaussian = true) {
        MatQ m = regular_cartan(L, gaussian) ;
        MatQ u = nilq(L, gaussian);
        return m + u;
    }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    Cplx cplx(unsigned prec, double span = 2.0) {
        return Cplx(uniform(-span, span), uniform(-span, span), prec);
    }
    MatC matc(const LieSpec& L, unsigned prec) {
        MatC m(L.n, L.n);
        for (int i = 0; i < L.n; i++)
            for (int j = 0; j < L.n; j++) m(i, j) = cplx(prec);
        if (L.flavor == Flavor::sl) {
            Cplx t = m.trace();
            m(L.n - 1, L.n - 1) -= t;
        }
        return m;
    }
};

inline MatQ matq_of(const LieSpec& L, std::initializer_list<long> xs) {
    MatQ m(L.n, L.n);
    auto it = xs.begin();
    for (int i = 0; i < L.n; i++)
        for (int j = 0; j < L.n; j++) m(i, j) = Rat(*it++);
    return m;
}

/// Random exact germ in Conn_n^B: Borel polar part with regular leading
/// coefficient, unconstrained non-polar tail up to order hi.
inline ConnectionGerm<Rat> borel_germ(Rng& rng, const LieSpec& L, int n, int hi) {
    MatSeries<Rat> s(L.n, -n, hi);
    s.set_coeff(-n, rng.regular_borel(L));
    for (int k = -n + 1; k <= -1; k++) s.set_coeff(k, rng.borelq(L));
    for (int k = 0; k <= hi; k++) s.set_coeff(k, rng.matq(L));
    return ConnectionGerm<Rat>(L, n, s);
}

/// Random framed germ: diagonal regular leading coefficient, free tail.
inline ConnectionGerm<Rat> framed_germ(Rng& rng, const LieSpec& L, int n, int hi) {
    MatSeries<Rat> s(L.n, -n, hi);
    s.set_coeff(-n, rng.regular_cartan(L));
    for (int k = -n + 1; k <= hi; k++) s.set_coeff(k, rng.matq(L));
    return ConnectionGerm<Rat>(L, n, s);
}

/// Random element of G_n^U: exp(u_0 + ... + u_{n-1} z^{n-1} + g_n z^n + ...).
inline GaugeElement<Rat> gnu_gauge(Rng& rng, const LieSpec& L, int n, int hi) {
    MatSeries<Rat> s(L.n, 0, hi);
    for (int k = 0; k < n; k++) s.set_coeff(k, rng.nilq(L));
    for (int k = n; k <= hi; k++) s.set_coeff(k, rng.matq(L));
    return GaugeElement<Rat>::from_log(s, hi);
}

} // namespace testsupport
