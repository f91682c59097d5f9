#pragma once

#include <string>

#include "stokes/series.hpp"

namespace stokes {

enum class GaugeClass { general, one_plus_z, positive_loop };

/// Invertible series gauge transformation with a cached inverse.
/// positive_loop with order n means exp(u_0 + ... + u_{n-1} z^{n-1} + g_n z^n + ...)
/// with u_k strictly upper triangular (the group G_n^U).
template <class K>
class GaugeElement {
public:
    static GaugeElement from_series(MatSeries<K> g, std::optional<int> inv_target = {}) {
        GaugeElement e;
        e.g_ = g.trimmed();
        e.ginv_ = e.g_.inverse(inv_target);
        e.classify();
        return e;
    }
    /// exp(S); the inverse exp(-S) comes free.
    static GaugeElement from_log(const MatSeries<K>& s, std::optional<int> target = {}) {
        GaugeElement e;
        e.g_ = s.exp_series(target);
        e.ginv_ = (-s).exp_series(target);
        e.classify();
        return e;
    }
    static GaugeElement constant(const Mat<K>& m, int hi = kExactOrder) {
        GaugeElement e;
        e.g_ = MatSeries<K>::constant(m, hi);
        e.ginv_ = MatSeries<K>::constant(m.inverse(), hi);
        e.classify();
        return e;
    }
    static GaugeElement identity(int n, int hi = kExactOrder) {
        return constant(Mat<K>::identity(n), hi);
    }

    const MatSeries<K>& series() const { return g_; }
    const MatSeries<K>& inverse_series() const { return ginv_; }
    GaugeClass cls() const { return cls_; }

    /// Largest n with log-coefficients in the nilradical below order n
    /// (0 when the constant term is not unipotent).
    int positive_loop_order() const { return loop_order_; }
    bool in_positive_loop_group(int n) const { return loop_order_ >= n; }

    friend GaugeElement operator*(const GaugeElement& a, const GaugeElement& b) {
        GaugeElement e;
        e.g_ = a.g_ * b.g_;
        e.ginv_ = b.ginv_ * a.ginv_;
        e.classify();
        return e;
    }

private:
    void classify() {
        cls_ = GaugeClass::general;
        loop_order_ = 0;
        if (g_.lo() != 0) return;
        const int n = g_.dim();
        Mat<K> c0 = g_.coeff(0);
        if (c0 == Mat<K>::identity(n) && g_.hi() >= 1) cls_ = GaugeClass::one_plus_z;
        // unipotent constant term => the log exists and grades the element
        Mat<K> nil = c0 - Mat<K>::identity(n);
        Mat<K> p = nil;
        for (int k = 1; k < n && !p.is_zero(); k++) p = p * nil;
        if (!p.is_zero()) return;
        // the log is only scanned through low orders (positive-loop grading
        // never matters past the pole order), keeping classification cheap
        int scan_hi = std::min({g_.hi(), g_.stored_hi(), 12});
        MatSeries<K> lg = g_.truncated(scan_hi).log_series(scan_hi);
        int order = 0;
        while (order <= scan_hi && LieSpec::is_strictly_upper(lg.coeff(order))) order++;
        loop_order_ = order;
        if (loop_order_ > 0 && cls_ == GaugeClass::general) cls_ = GaugeClass::positive_loop;
    }

    MatSeries<K> g_, ginv_;
    GaugeClass cls_ = GaugeClass::general;
    int loop_order_ = 0;
};

/// Germ of a connection d + A(z)dz at one singular point.
template <class K>
struct ConnectionGerm {
    LieSpec lie;
    int pole_order = 0;      // n; the series starts at z^-n
    MatSeries<K> a;          // coefficient 1-form
    std::string coord = "z"; // local coordinate label

    ConnectionGerm() = default;
    ConnectionGerm(LieSpec L, int n, MatSeries<K> series, std::string label = "z")
        : lie(L), pole_order(n), a(std::move(series)), coord(std::move(label)) {
        if (a.lo() < -pole_order)
            fail(Err::BadInput, "series extends below the declared pole order");
        if (pole_order > 0 && a.trimmed().lo() > -pole_order)
            fail(Err::BadInput, "leading coefficient of the germ vanishes");
    }

    const Mat<K>& leading() const { return a.coeff(-pole_order); }
    bool irregular() const { return pole_order >= 2; }

    /// Leading coefficient diagonal (a compatible framing has been applied).
    bool framed() const { return pole_order >= 1 && LieSpec::is_diagonal(leading()); }
};

template <class K>
bool non_resonant(const ConnectionGerm<K>& g) {
    if (!g.irregular()) return true;
    return is_regular_semisimple(g.leading());
}

/// Gauge action A -> g A g^-1 + g' g^-1, so that solutions of Phi' = -Phi A
/// transform as Phi -> Phi g^-1.
template <class K>
ConnectionGerm<K> gauge_act(const GaugeElement<K>& g, const ConnectionGerm<K>& germ) {
    MatSeries<K> moved = g.series() * germ.a * g.inverse_series() +
                         g.series().derivative() * g.inverse_series();
    if (moved.empty_range())
        fail(Err::TruncationUnderflow, "gauge action leaves no reliable coefficients");
    MatSeries<K> trimmed = moved.trimmed();
    int n = std::max(0, -trimmed.lo());
    ConnectionGerm<K> out;
    out.lie = germ.lie;
    out.pole_order = n;
    out.a = trimmed;
    out.coord = germ.coord;
    return out;
}

/// Power-series fundamental solution of Phi' = -Phi A for an analytic germ,
/// normalized by the constant term phi0.
template <class K>
MatSeries<K> analytic_solution_series(const ConnectionGerm<K>& germ, Mat<K> phi0, int order) {
    if (germ.a.lo() < 0) fail(Err::BadInput, "series solution needs an analytic germ");
    const int n = germ.a.dim();
    MatSeries<K> phi(n, 0, order);
    phi.set_coeff(0, std::move(phi0));
    for (int k = 0; k < order; k++) {
        Mat<K> sum(n, n);
        for (int j = 0; j <= std::min(k, germ.a.hi()); j++)
            sum += phi.coeff(k - j) * germ.a.coeff(j);
        K div = field_from_int(k + 1, sum(0, 0));
        phi.set_coeff(k + 1, sum.map([&](const K& x) { return -(x / div); }));
    }
    return phi;
}

/// Checks that fundamental solutions transform as Phi -> Phi g^-1 through
/// order N (the sign convention fixed in gauge_act).
template <class K>
bool germ_solution_covariance_check(const GaugeElement<K>& g, const ConnectionGerm<K>& germ,
                                    int order) {
    const int n = germ.a.dim();
    MatSeries<K> phi = analytic_solution_series(germ, Mat<K>::identity(n), order);
    ConnectionGerm<K> moved = gauge_act(g, germ);
    if (moved.a.lo() < 0) return false;
    MatSeries<K> psi =
        analytic_solution_series(moved, g.inverse_series().coeff(0), order);
    MatSeries<K> expect = phi * g.inverse_series();
    return psi.truncated(std::min(order, expect.hi())) ==
           expect.truncated(std::min(order, psi.hi()));
}

} // namespace stokes
