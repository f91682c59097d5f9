#pragma once

#include "stokes/ratsection.hpp"
#include "stokes/gauge.hpp"
#include "stokes/ode.hpp"

namespace stokes {

/// Global connection d + A(z)dz on the trivial bundle over P^1 with the
/// polar divisor sum n_i x_i. Finite points carry partial-fraction
/// coefficients; a pole at infinity of order n >= 2 is carried by the
/// polynomial part (degree <= n - 2).
template <class K>
struct RationalConnection {
    struct Point {
        bool at_infinity = false;
        K x{};               // ignored when at_infinity
        int order = 1;       // n_i >= 1 (divisor bound)
        std::vector<Mat<K>> coeff;  // coeff[k-1] ~ (z - x)^-k, k = 1..order; empty at infinity
        Mat<K> framing;      // empty means identity
    };

    LieSpec lie;
    std::vector<Point> points;
    MatPoly<K> poly;  // polynomial part of A

    int infinity_index() const {
        for (size_t i = 0; i < points.size(); i++)
            if (points[i].at_infinity) return int(i);
        return -1;
    }

    void validate() const {
        int n_inf = 0, seen_inf = 0;
        long irregular = 0;
        for (const auto& p : points) {
            if (p.order < 1) fail(Err::BadInput, "divisor multiplicities must be >= 1");
            if (p.at_infinity) {
                seen_inf++;
                n_inf = p.order;
                if (!p.coeff.empty())
                    fail(Err::BadInput, "the pole at infinity lives in the polynomial part");
            } else if (int(p.coeff.size()) != p.order) {
                fail(Err::BadInput, "each finite point needs order-many coefficients");
            }
            if (p.order >= 2) irregular++;
        }
        if (seen_inf > 1) fail(Err::BadInput, "at most one point at infinity");
        for (size_t i = 0; i < points.size(); i++)
            for (size_t j = i + 1; j < points.size(); j++)
                if (!points[i].at_infinity && !points[j].at_infinity &&
                    points[i].x == points[j].x)
                    fail(Err::BadInput, "duplicate singular points");
        MatPoly<K> p = poly;
        matpoly_trim(p);
        int deg = int(p.size()) - 1;
        if (deg >= 0 && deg > n_inf - 2)
            fail(Err::BadInput, "polynomial part exceeds the order bound at infinity");
        if (n_inf == 0) {
            // no pole at infinity: A = O(z^-2), i.e. the residues cancel
            Mat<K> sum(lie.n, lie.n);
            for (const auto& pt : points)
                if (!pt.at_infinity) sum += pt.coeff[0];
            if (!sum.is_zero())
                fail(Err::BadInput, "residues must sum to zero when infinity is unramified");
        }
    }

    /// A as a rational section in the z-chart.
    RationalSection<K> section() const {
        RationalSection<K> s = RationalSection<K>::zero(lie.n);
        for (const auto& p : points) {
            if (p.at_infinity) continue;
            for (int k = 1; k <= p.order; k++)
                s = s + RationalSection<K>::pole_term(p.coeff[size_t(k - 1)], p.x, k);
        }
        for (size_t d = 0; d < poly.size(); d++)
            s = s + RationalSection<K>::monomial(poly[d], int(d));
        return s;
    }

    /// B(w) = -A(1/w)/w^2, the coefficient form in the w = 1/z chart.
    RationalSection<K> infinity_section() const {
        RationalSection<K> s = RationalSection<K>::zero(lie.n);
        K one = field_from_int(1, K{});
        for (const auto& p : points) {
            if (p.at_infinity) continue;
            for (int k = 1; k <= p.order; k++) {
                // (1/w - x)^-k = w^k (1 - x w)^-k; for x = 0 it is just w^k
                const Mat<K>& c = p.coeff[size_t(k - 1)];
                if (is_zero(p.x)) {
                    s = s - (RationalSection<K>::pole_term(c, K{}, 0) * wpow(k - 2));
                    continue;
                }
                // w^{k-2} c / (1 - x w)^k = w^{k-2} c (-x)^{-k} / (w - 1/x)^k
                K scale = one;
                for (int t = 0; t < k; t++) scale = scale / (-p.x);
                RationalSection<K> term =
                    RationalSection<K>::pole_term(scale * c, one / p.x, k);
                term = term * wpow(k - 2);
                s = s - term;
            }
        }
        for (size_t d = 0; d < poly.size(); d++)
            s = s - RationalSection<K>::pole_term(poly[d], K{}, int(d) + 2);
        return s;
    }

private:
    // w^e as a section, e may be negative (pole at w = 0)
    RationalSection<K> wpow(int e) const {
        if (e >= 0) return RationalSection<K>::monomial(Mat<K>::identity(lie.n), e);
        return RationalSection<K>::pole_term(Mat<K>::identity(lie.n), K{}, -e);
    }
};

/// Laurent-expansion germ of the connection at one of its points, exact in
/// the scalar backend through the requested order.
template <class K>
ConnectionGerm<K> germ_at(const RationalConnection<K>& c, size_t index, int target) {
    const auto& p = c.points.at(index);
    MatSeries<K> series =
        p.at_infinity ? c.infinity_section().laurent_at(K{}, target)
                      : c.section().laurent_at(p.x, target);
    series = series.trimmed();
    int pole = std::max(0, -series.lo());
    if (pole > p.order)
        fail(Err::BadInput, "expansion exceeds the declared divisor bound");
    ConnectionGerm<K> g(c.lie, pole, series, p.at_infinity ? "w" : "z");
    return g;
}

/// ODE evaluator backed by a rational section (one coordinate chart);
/// `singular` lists the chart's singular points for step control.
class SectionEvaluator : public ConnectionEvaluator {
public:
    SectionEvaluator(RationalSection<Cplx> sec, std::vector<Cplx> singular)
        : sec_(std::move(sec)), sing_(std::move(singular)) {}

    int dim() const override { return sec_.n; }

    std::vector<MatC> taylor(const Cplx& z_c, int count) const override {
        MatSeries<Cplx> s = sec_.laurent_at(z_c, count - 1);
        if (s.lo() < 0) fail(Err::BadInput, "Taylor expansion requested at a singular point");
        std::vector<MatC> out;
        for (int j = 0; j < count; j++) out.push_back(s.coeff(j));
        return out;
    }

    Real clearance(const Cplx& z_c) const override {
        unsigned prec = z_c.precision();
        Real best(1e30, prec);
        for (const auto& x : sing_) best = min(best, abs(z_c - x));
        return best;
    }

private:
    RationalSection<Cplx> sec_;
    std::vector<Cplx> sing_;
};

/// Convert an exact connection to the float backend at the given precision.
inline RationalConnection<Cplx> to_float(const RationalConnection<Rat>& c, unsigned prec) {
    RationalConnection<Cplx> out;
    out.lie = c.lie;
    for (const auto& p : c.points) {
        RationalConnection<Cplx>::Point q;
        q.at_infinity = p.at_infinity;
        q.x = p.x.to_cplx(prec);
        q.order = p.order;
        for (const auto& m : p.coeff) q.coeff.push_back(to_cplx(m, prec));
        if (!p.framing.empty()) q.framing = to_cplx(p.framing, prec);
        out.points.push_back(std::move(q));
    }
    for (const auto& m : c.poly) out.poly.push_back(to_cplx(m, prec));
    return out;
}

} // namespace stokes
