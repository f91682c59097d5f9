#pragma once

#include "stokes/series.hpp"
#include "stokes/poly.hpp"

namespace stokes {

// scalar-polynomial helpers for the rational layer

template <class K>
Poly<K> poly_shift(const Poly<K>& p, const K& x) {  // p(x + u) in powers of u
    Poly<K> out(p.size());
    for (int k = int(p.size()) - 1; k >= 0; k--) {
        for (int j = int(p.size()) - 1; j >= 1; j--)
            out[size_t(j)] = out[size_t(j)] * x + out[size_t(j - 1)];
        out[0] = out[0] * x + p[size_t(k)];
    }
    return out;
}

/// 1/u(z) as a power series to order `count-1`; u[0] must be invertible.
template <class K>
std::vector<K> scalar_series_inverse(const std::vector<K>& u, int count) {
    if (u.empty() || !is_invertible(u[0]))
        fail(Err::NotInvertible, "series inverse at a vanishing denominator");
    std::vector<K> v(size_t(count));
    v[0] = field_from_int(1, u[0]) / u[0];
    for (int m = 1; m < count; m++) {
        K s{};
        for (int j = 1; j <= m && j < int(u.size()); j++) s += u[size_t(j)] * v[size_t(m - j)];
        v[size_t(m)] = -(s / u[0]);
    }
    return v;
}

template <class K>
using MatPoly = std::vector<Mat<K>>;  // ascending matrix polynomial

template <class K>
void matpoly_trim(MatPoly<K>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <class K>
MatPoly<K> matpoly_add(const MatPoly<K>& a, const MatPoly<K>& b, int n) {
    MatPoly<K> r(std::max(a.size(), b.size()), Mat<K>(n, n));
    for (size_t k = 0; k < a.size(); k++) r[k] += a[k];
    for (size_t k = 0; k < b.size(); k++) r[k] += b[k];
    return r;
}

template <class K>
MatPoly<K> matpoly_mul(const MatPoly<K>& a, const MatPoly<K>& b, int n) {
    if (a.empty() || b.empty()) return {};
    MatPoly<K> r(a.size() + b.size() - 1, Mat<K>(n, n));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    return r;
}

template <class K>
MatPoly<K> matpoly_scale(const MatPoly<K>& a, const Poly<K>& s, int n) {
    if (a.empty() || s.empty()) return {};
    MatPoly<K> r(a.size() + s.size() - 1, Mat<K>(n, n));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < s.size(); j++) r[i + j] += s[j] * a[i];
    return r;
}

template <class K>
MatPoly<K> matpoly_derivative(const MatPoly<K>& a, int n) {
    if (a.size() <= 1) return {};
    MatPoly<K> r(a.size() - 1, Mat<K>(n, n));
    for (size_t k = 1; k < a.size(); k++)
        r[k - 1] = a[k].map([&](const K& c) { return field_from_int(long(k), c) * c; });
    return r;
}

/// Quotient of a matrix polynomial by a monic-ish scalar polynomial.
template <class K>
MatPoly<K> matpoly_div(MatPoly<K> a, const Poly<K>& q, int n) {
    matpoly_trim(a);
    int dq = poly_deg(q);
    if (dq < 0) fail(Err::NotInvertible, "division by the zero polynomial");
    MatPoly<K> quot;
    if (int(a.size()) > dq) quot.assign(a.size() - size_t(dq), Mat<K>(n, n));
    while (int(a.size()) > dq) {
        size_t shift = a.size() - 1 - size_t(dq);
        Mat<K> f = a.back().map([&](const K& c) { return c / q[size_t(dq)]; });
        quot[shift] = f;
        for (int j = 0; j <= dq; j++) {
            Mat<K> sub = q[size_t(j)] * f;
            a[shift + size_t(j)] -= sub;
        }
        a.pop_back();
        matpoly_trim(a);
    }
    return quot;
}

/// g-valued rational function on P^1 presented as a matrix polynomial over a
/// factored scalar denominator prod (z - x)^m.
template <class K>
struct RationalSection {
    int n = 0;  // matrix size
    MatPoly<K> num;
    std::vector<std::pair<K, int>> den;  // distinct points with multiplicities

    static RationalSection zero(int n) { return {n, {}, {}}; }
    /// m * (z - x)^{-k} (k >= 0; k = 0 gives a constant term).
    static RationalSection pole_term(Mat<K> m, const K& x, int k) {
        RationalSection s{m.rows(), {std::move(m)}, {}};
        if (k > 0) s.den.push_back({x, k});
        return s;
    }
    static RationalSection monomial(Mat<K> m, int degree) {
        RationalSection s{m.rows(), MatPoly<K>(size_t(degree) + 1, Mat<K>(m.rows(), m.rows())), {}};
        s.num[size_t(degree)] = std::move(m);
        return s;
    }

    bool is_zero() const {
        for (const auto& m : num)
            if (!m.is_zero()) return false;
        return true;
    }

    Poly<K> den_poly() const {
        Poly<K> q = {field_from_int(1, K{})};
        for (const auto& [x, m] : den)
            for (int t = 0; t < m; t++) q = poly_mul(q, Poly<K>{-x, field_from_int(1, K{})});
        return q;
    }

    int mult_of(const K& x) const {
        for (const auto& [p, m] : den)
            if (p == x) return m;
        return 0;
    }

    friend RationalSection operator+(const RationalSection& a, const RationalSection& b) {
        RationalSection r{a.n, {}, {}};
        // union of denominators
        r.den = a.den;
        for (const auto& [x, m] : b.den) {
            bool found = false;
            for (auto& [y, my] : r.den)
                if (y == x) { my = std::max(my, m); found = true; }
            if (!found) r.den.push_back({x, m});
        }
        auto scale_to = [&](const RationalSection& s) {
            Poly<K> extra = {field_from_int(1, K{})};
            for (const auto& [x, m] : r.den) {
                int have = s.mult_of(x);
                for (int t = have; t < m; t++)
                    extra = poly_mul(extra, Poly<K>{-x, field_from_int(1, K{})});
            }
            return matpoly_scale(s.num, extra, a.n);
        };
        r.num = matpoly_add(scale_to(a), scale_to(b), a.n);
        return r;
    }
    friend RationalSection operator-(const RationalSection& a, const RationalSection& b) {
        RationalSection nb = b;
        for (auto& m : nb.num) m = -m;
        return a + nb;
    }
    friend RationalSection operator*(const RationalSection& a, const RationalSection& b) {
        RationalSection r{a.n, matpoly_mul(a.num, b.num, a.n), a.den};
        for (const auto& [x, m] : b.den) {
            bool found = false;
            for (auto& [y, my] : r.den)
                if (y == x) { my += m; found = true; }
            if (!found) r.den.push_back({x, m});
        }
        return r;
    }

    RationalSection derivative() const {
        // (P/q)' = (P' q - P q') / q^2
        Poly<K> q = den_poly();
        MatPoly<K> a = matpoly_scale(matpoly_derivative(num, n), q, n);
        MatPoly<K> b = matpoly_scale(num, poly_deriv(q), n);
        RationalSection r{n, {}, den};
        for (auto& [x, m] : r.den) m *= 2;
        for (auto& mat : b) mat = -mat;
        r.num = matpoly_add(a, b, n);
        return r;
    }

    /// Laurent expansion at x through order hi (pole orders included).
    MatSeries<K> laurent_at(const K& x, int hi) const {
        int m = mult_of(x);
        // remaining denominator in the local variable zeta = z - x:
        // (z - y) = (zeta + (x - y)), nonvanishing at zeta = 0
        Poly<K> u = {field_from_int(1, K{})};
        for (const auto& [y, my] : den) {
            if (y == x) continue;
            Poly<K> factor = {x - y, field_from_int(1, K{})};
            for (int t = 0; t < my; t++) u = poly_mul(u, factor);
        }
        int count = hi + m + 1;
        if (count <= 0) return MatSeries<K>(n, 0, hi);
        std::vector<K> uinv = scalar_series_inverse(u, count);
        // numerator shifted to zeta
        MatSeries<K> out(n, -m, hi);
        std::vector<Mat<K>> shifted(size_t(count), Mat<K>(n, n));
        {
            // direct binomials are fine at desk scale
            for (size_t k = 0; k < num.size(); k++) {
                // (zeta + x)^k expansion
                Poly<K> pw = {field_from_int(1, K{})};
                for (size_t t = 0; t < k; t++) pw = poly_mul(pw, Poly<K>{x, field_from_int(1, K{})});
                for (size_t j = 0; j < pw.size() && j < size_t(count); j++)
                    shifted[j] += pw[j] * num[k];
            }
        }
        for (int j = 0; j < count; j++) {
            Mat<K> c(n, n);
            for (int t = 0; t <= j; t++) c += uinv[size_t(t)] * shifted[size_t(j - t)];
            out.set_coeff(j - m, std::move(c));
        }
        return out;
    }

    /// Polynomial part (the quotient of num by the denominator).
    MatPoly<K> polynomial_part() const {
        if (den.empty()) {
            MatPoly<K> p = num;
            matpoly_trim(p);
            return p;
        }
        return matpoly_div(num, den_poly(), n);
    }
};

} // namespace stokes
