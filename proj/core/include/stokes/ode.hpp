#pragma once

#include <functional>
#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "stokes/gauge.hpp"

namespace stokes {

/// Numeric policy for the high-precision continuation machinery.
struct ODESolverConfig {
    unsigned precision = 128;  // working precision P in bits
    long tol_exp2 = 0;         // per-step tolerance 2^-tol_exp2 (0: P - 16)
    long max_steps = 200000;
    double rho = 1.0;          // radius of the working disk around the singular point
    double fixed_r0 = 0.0;     // matching radius; 0 means the auto policy
    int fixed_truncation = 0;  // F truncation; 0 means optimal (smallest term)
    long match_exp2 = 0;       // min-term target 2^-match_exp2 (0: P/2 + 8)

    void validate() const {
        if (precision < 64) fail(Err::BadInput, "solver precision must be at least 64 bits");
        if (tol_exp2 < 0 || match_exp2 < 0 || rho <= 0 || fixed_r0 < 0 || max_steps <= 0)
            fail(Err::BadInput, "solver tolerances must be positive");
    }
    Real step_tol() const {
        return Real::eps2(tol_exp2 ? tol_exp2 : long(precision) - 16, precision);
    }
    /// Matching target. Anchor errors mostly cancel across the multiplier
    /// chain, while roundoff is amplified by powers of the inverse min term,
    /// so the default keeps the matching shallow relative to the precision.
    Real match_tol() const {
        return Real::eps2(match_exp2 ? match_exp2 : std::max(24L, long(precision) / 5 + 2),
                          precision);
    }
};

/// Exactly evaluable coefficient matrix of a connection d + A(z)dz,
/// the right-hand side of Phi' = -Phi A.
class ConnectionEvaluator {
public:
    virtual ~ConnectionEvaluator() = default;
    virtual int dim() const = 0;
    /// Taylor coefficients of A at a regular point z_c, orders 0..count-1.
    virtual std::vector<MatC> taylor(const Cplx& z_c, int count) const = 0;
    /// Distance to the nearest singularity (step-size control).
    virtual Real clearance(const Cplx& z_c) const = 0;
};

/// Laurent-polynomial germ at the origin, evaluated exactly.
class GermEvaluator : public ConnectionEvaluator {
public:
    explicit GermEvaluator(MatSeries<Cplx> a) : a_(std::move(a)) {}

    int dim() const override { return a_.dim(); }

    std::vector<MatC> taylor(const Cplx& z_c, int count) const override {
        std::vector<MatC> out(size_t(count), MatC(a_.dim(), a_.dim()));
        unsigned prec = z_c.precision();
        for (int k = a_.lo(); k <= a_.stored_hi(); k++) {
            const MatC& ak = a_.coeff(k);
            if (ak.is_zero()) continue;
            // (z_c + w)^k = sum_j c_j w^j, c_0 = z_c^k, c_{j+1} = c_j (k-j) / ((j+1) z_c)
            Cplx c = Cplx::from_int(1, prec);
            if (k >= 0)
                for (int t = 0; t < k; t++) c = c * z_c;
            else
                for (int t = 0; t < -k; t++) c = c / z_c;
            for (int j = 0; j < count; j++) {
                out[size_t(j)] += c * ak;
                if (k >= 0 && j >= k) break;
                c = c * Cplx::from_int(k - j, prec) /
                    (Cplx::from_int(j + 1, prec) * z_c);
            }
        }
        return out;
    }

    Real clearance(const Cplx& z_c) const override { return abs(z_c); }

    const MatSeries<Cplx>& series() const { return a_; }

private:
    MatSeries<Cplx> a_;
};

/// Adaptive Taylor-series continuation of Phi' = -Phi A along polylines and
/// circular arcs. Single-step, high order, dense error control at working
/// precision; the accumulated tail estimates are reported through err.
class PathIntegrator {
public:
    PathIntegrator(const ConnectionEvaluator& a, const ODESolverConfig& cfg)
        : a_(a), cfg_(cfg) {
        cfg_.validate();
        order_ = std::max<long>(24, (cfg_.tol_exp2 ? cfg_.tol_exp2 : cfg_.precision - 16) + 10);
        // with steps capped at 0.35 of the clearance, `order_ * log2(1/0.35)`
        // decades of tail decay; translate the tolerance into the order
        order_ = std::max<long>(24, long(double(order_) / 1.51) + 4);
    }

    void segment(MatC& phi, const Cplx& z0, const Cplx& z1, Real& err) {
        unsigned prec = cfg_.precision;
        Cplx pos = z0;
        Real total = abs(z1 - z0);
        if (total.is_zero()) return;
        Real tol = cfg_.step_tol();
        for (long step = 0;; step++) {
            if (step >= cfg_.max_steps) fail(Err::StepLimit, "segment step limit exceeded");
            Real remain = abs(z1 - pos);
            if (remain.is_zero()) break;
            Real room = clearance_cap(pos);
            Real h = min(remain, room);

            auto coeffs = solution_taylor(phi, pos);
            Real scale = max(fro_norm(phi), Real(1.0, prec));
            Real floor_h = room * Real("1e-8", prec);
            for (;;) {
                Real tail = tail_estimate(coeffs, h);
                if (std::getenv("STOKES_TRACE_STEPS"))
                    std::fprintf(stderr, "step dbg: h=%s tail=%s tol*scale=%s remain=%s\n",
                                 h.str(4).c_str(), tail.str(4).c_str(),
                                 (tol * scale).str(4).c_str(), remain.str(4).c_str());
                if (tail < tol * scale) break;
                if (h <= floor_h)
                    fail(Err::StepLimit,
                         "error control collapsed the step size (|z|=" + abs(pos).str(6) +
                             ", tail=" + tail.str(6) + ", scale=" + scale.str(6) + ")");
                h = h * Real(0.6, prec);
            }

            Cplx dir = (z1 - pos) / remain;
            Cplx w = h * dir;
            MatC next(a_.dim(), a_.dim());
            for (int m = int(coeffs.size()) - 1; m >= 0; m--)
                next = w * next + coeffs[size_t(m)];  // scalar-times-matrix Horner
            err += tail_estimate(coeffs, h);
            phi = std::move(next);
            pos = pos + w;
            if (abs(z1 - pos) < Real::eps2(long(prec), prec) * total) break;
        }
    }

    /// Counterclockwise for th1 > th0; follows the circle with chords.
    void arc(MatC& phi, const Real& radius, const Real& th0, const Real& th1, Real& err) {
        unsigned prec = cfg_.precision;
        Real span = th1 - th0;
        if (span.is_zero()) return;
        double total = span.to_double();
        long pieces = std::max<long>(1, long(std::ceil(std::abs(total) / 0.25)));
        Real prev_t = th0;
        for (long k = 1; k <= pieces; k++) {
            Real t = th0 + span * Real(double(k) / double(pieces), prec);
            segment(phi, from_polar(radius, prev_t), from_polar(radius, t), err);
            prev_t = t;
        }
    }

private:
    Real clearance_cap(const Cplx& pos) const {
        Real c = a_.clearance(pos);
        return c * Real(0.35, cfg_.precision);
    }

    /// Solution Taylor coefficients around pos: Phi_{m+1} = -(sum Phi_i A_j)/(m+1).
    std::vector<MatC> solution_taylor(const MatC& phi, const Cplx& pos) const {
        unsigned prec = cfg_.precision;
        const int n = a_.dim();
        auto ataylor = a_.taylor(pos, int(order_));
        std::vector<MatC> out;
        out.reserve(size_t(order_) + 1);
        out.push_back(phi);
        for (long m = 0; m < order_; m++) {
            MatC sum(n, n);
            for (long j = 0; j <= m; j++) sum += out[size_t(m - j)] * ataylor[size_t(j)];
            Cplx div = Cplx::from_int(-(m + 1), prec);
            out.push_back(sum.convert([&](const Cplx& x) { return x / div; }));
        }
        return out;
    }

    Real tail_estimate(const std::vector<MatC>& coeffs, const Real& h) const {
        unsigned prec = cfg_.precision;
        Real est(prec);
        Real hp(1.0, prec);
        size_t top = coeffs.size() - 1;
        for (size_t m = 0; m < top - 2; m++) hp = hp * h;
        for (size_t m = top - 2; m <= top; m++) {
            est += fro_norm(coeffs[m]) * hp;
            hp = hp * h;
        }
        return est;
    }

    const ConnectionEvaluator& a_;
    ODESolverConfig cfg_;
    long order_;
};

} // namespace stokes
