#pragma once

#include <vector>

#include "stokes/matrix.hpp"

namespace stokes {

/// Dense univariate polynomials, coefficients ascending: p[k] ~ z^k.
template <class K>
using Poly = std::vector<K>;

template <class K>
void poly_trim(Poly<K>& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class K>
int poly_deg(const Poly<K>& p) {
    for (int k = int(p.size()) - 1; k >= 0; k--)
        if (!is_zero(p[size_t(k)])) return k;
    return -1;
}

template <class K>
Poly<K> poly_add(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < a.size(); k++) r[k] += a[k];
    for (size_t k = 0; k < b.size(); k++) r[k] += b[k];
    return r;
}

template <class K>
Poly<K> poly_sub(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < a.size(); k++) r[k] += a[k];
    for (size_t k = 0; k < b.size(); k++) r[k] -= b[k];
    return r;
}

template <class K>
Poly<K> poly_mul(const Poly<K>& a, const Poly<K>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<K> r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); i++) {
        if (is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    }
    return r;
}

template <class K>
Poly<K> poly_deriv(const Poly<K>& p) {
    if (p.size() <= 1) return {};
    Poly<K> r(p.size() - 1);
    for (size_t k = 1; k < p.size(); k++)
        r[k - 1] = field_from_int(long(k), p[k]) * p[k];
    return r;
}

template <class K>
K poly_eval(const Poly<K>& p, const K& x) {
    K v{};
    for (int k = int(p.size()) - 1; k >= 0; k--) v = v * x + p[size_t(k)];
    return v;
}

/// Euclidean division a = q*b + r over an exact field.
template <class K>
std::pair<Poly<K>, Poly<K>> poly_divrem(Poly<K> a, Poly<K> b) {
    poly_trim(a);
    poly_trim(b);
    if (b.empty()) fail(Err::NotInvertible, "polynomial division by zero");
    Poly<K> q;
    if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        K f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t k = 0; k < b.size(); k++) a[shift + k] -= f * b[k];
        poly_trim(a);
    }
    return {q, a};
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        auto [q, r] = poly_divrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        K lead = a.back();
        for (K& c : a) c = c / lead;
    }
    return a;
}

/// Characteristic polynomial (monic, ascending) by Faddeev-LeVerrier;
/// only divides by small integers, so it works over every field here.
template <class K>
Poly<K> charpoly(const Mat<K>& a) {
    const int n = a.rows();
    Poly<K> c(size_t(n) + 1);
    c[size_t(n)] = field_from_int(1, a(0, 0));
    Mat<K> b = Mat<K>::identity(n);
    for (int k = 1; k <= n; k++) {
        b = a * b;
        K t = b.trace();
        K ck = -(t / field_from_int(k, t));
        c[size_t(n - k)] = ck;
        for (int i = 0; i < n; i++) b(i, i) += ck;
    }
    return c;
}

/// All roots of a monic complex polynomial by Durand-Kerner iteration.
/// Reliable for the well-separated spectra handled here; callers decide
/// what clustered roots mean.
inline std::vector<Cplx> poly_roots(const Poly<Cplx>& monic, unsigned prec) {
    const int n = poly_deg(monic);
    if (n <= 0) return {};
    Poly<Cplx> p = monic;
    p.resize(size_t(n) + 1);
    Real bound(1.0, prec);
    for (int k = 0; k < n; k++) bound = max(bound, abs(p[size_t(k)]));
    bound += Real(1.0, prec);

    std::vector<Cplx> z(static_cast<size_t>(n));
    Cplx seed(0.4, 0.9, prec);
    Cplx w = Cplx::from_int(1, prec);
    for (int k = 0; k < n; k++) {
        w = w * seed;
        z[size_t(k)] = bound * w;
    }
    Real tol = Real::eps2(long(prec) - 6, prec) * bound;
    for (int iter = 0; iter < 500; iter++) {
        Real moved(prec);
        for (int i = 0; i < n; i++) {
            Cplx num = poly_eval(p, z[size_t(i)]);
            Cplx den = Cplx::from_int(1, prec);
            for (int j = 0; j < n; j++)
                if (j != i) den = den * (z[size_t(i)] - z[size_t(j)]);
            if (den.is_zero()) { den = Cplx(Real::eps2(long(prec), prec), Real(prec)); }
            Cplx step = num / den;
            z[size_t(i)] = z[size_t(i)] - step;
            moved = max(moved, abs(step));
        }
        if (moved < tol) break;
    }
    return z;
}

} // namespace stokes
