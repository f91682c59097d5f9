#include "stokes/stokes_matrices.hpp"

namespace stokes {

namespace {

/// F's partial sum evaluated at z (Horner).
MatC eval_partial(const MatSeries<Cplx>& f, const Cplx& z, int top) {
    const int n = f.dim();
    MatC acc(n, n);
    for (int k = top; k >= 0; k--) acc = z * acc + f.coeff(k);
    return acc;
}

std::vector<Real> term_norms(const MatSeries<Cplx>& f, int top) {
    std::vector<Real> t;
    for (int k = 0; k <= top; k++) t.push_back(fro_norm(f.coeff(k)));
    return t;
}

Cplx scalar_exp_entry(const Cplx& x) { return exp(x); }

MatC diag_exp(const MatC& h, const Cplx& factor) {
    MatC out(h.rows(), h.cols());
    for (int i = 0; i < h.rows(); i++) out(i, i) = scalar_exp_entry(h(i, i) * factor);
    return out;
}

} // namespace

MatchingPoint optimal_truncation(const std::vector<Real>& norms, const Real& r) {
    unsigned prec = r.precision();
    MatchingPoint best{0, Real(1.0, prec)};
    Real rk(1.0, prec);
    for (size_t k = 0; k < norms.size(); k++) {
        Real mag = norms[k] * rk;
        if (k >= 1 && (best.index == 0 || mag < best.magnitude)) best = {int(k), mag};
        rk = rk * r;
    }
    return best;
}

Real StokesData::pattern_residual(size_t j) const {
    const MatC& s = multipliers[j];
    unsigned prec = r0.precision();
    Real worst(prec);
    for (int a = 0; a < s.rows(); a++)
        for (int b = 0; b < s.cols(); b++) {
            if (a == b) {
                worst = max(worst, abs(s(a, b) - Cplx::from_int(1, prec)));
                continue;
            }
            bool allowed = false;
            for (auto root : patterns[j])
                if (root.i == a && root.j == b) allowed = true;
            if (!allowed) worst = max(worst, abs(s(a, b)));
        }
    return worst;
}

StokesSolution stokes_solution(const FormalNormalForm<Cplx>& nf, const FormalBranch& branch,
                               const Real& r0, int truncation) {
    const MatSeries<Cplx>& f = nf.transformer.series();
    StokesSolution out;
    out.sector_index = branch.sector.index;
    out.branch = branch;
    out.r0 = r0;
    out.theta = branch.sector.anchor;
    MatC upsilon = formal_solution_at(branch.h1, branch.q, r0, out.theta);
    Cplx z = from_polar(r0, out.theta);
    out.value = upsilon * eval_partial(f, z, truncation);
    out.anchor_err = optimal_truncation(term_norms(f, f.hi() > truncation ? truncation : f.hi()),
                                        r0).magnitude;
    unsigned prec = r0.precision();
    Real hi_amp(prec), lo_amp(prec);
    for (int i = 0; i < upsilon.rows(); i++) {
        Real mag = abs(upsilon(i, i));
        hi_amp = max(hi_amp, mag);
        lo_amp = max(lo_amp, Real(1.0, prec) / mag);
    }
    out.anchor_amp = hi_amp * lo_amp;
    out.truncation_used = truncation;
    return out;
}

StokesData stokes_multipliers(const std::function<ConnectionGerm<Cplx>(int)>& request_germ,
                              const ConnectionEvaluator& a, const ODESolverConfig& cfg) {
    cfg.validate();
    unsigned prec = cfg.precision;

    // normal form at a working truncation, extended while the matching
    // series is still descending at its tail
    int trunc = cfg.fixed_truncation ? cfg.fixed_truncation : 24;
    ConnectionGerm<Cplx> germ = request_germ(trunc);
    const int n = germ.pole_order;
    const LieSpec L = germ.lie;
    FormalNormalForm<Cplx> nf = formal_normal_form(germ, trunc);

    // largest radius whose smallest term beats the target; gentle refinement
    // steps keep the min term near the target, which also caps the
    // exp(+|Q|)/exp(-|Q|) roundoff amplification at roughly its inverse
    Real match_target = cfg.match_tol() * Real(0.1, prec);
    Real r0 = Real(cfg.fixed_r0 > 0 ? cfg.fixed_r0 : cfg.rho / 4, prec);
    MatchingPoint mp;
    for (;;) {
        mp = optimal_truncation(term_norms(nf.transformer.series(), nf.truncation), r0);
        bool tail_bound = mp.index >= nf.truncation - 2;
        if (tail_bound && !cfg.fixed_truncation && nf.truncation < 512) {
            trunc = nf.truncation * 2;
            germ = request_germ(trunc);
            nf = formal_normal_form(germ, trunc);
            continue;
        }
        if (mp.magnitude < match_target || cfg.fixed_r0 > 0) break;
        r0 = r0 * Real(0.9, prec);
        if (r0 < Real(cfg.rho, prec) * Real::eps2(24, prec))
            fail(Err::PrecisionExhausted,
                 "no matching radius reaches the target tolerance; raise the precision");
    }
    if (mp.magnitude > cfg.match_tol() && cfg.fixed_r0 > 0)
        fail(Err::PrecisionExhausted, "matching radius too large for the target tolerance");

    StokesData out;
    out.r0 = r0;
    out.truncation = mp.index;
    auto rays = anti_stokes(nf.h.back(), n, L);
    out.sectors = sectors(rays, n);
    out.branches = formal_branches(nf, out.sectors);
    const int m = int(rays.size());
    out.formal_residue = nf.residue();
    out.formal_monodromy = diag_exp(nf.residue(),
                                    Cplx(Real(0L, prec), Real(-2L, prec) * Real::pi(prec)));

    for (int j = 0; j < m; j++)
        out.solutions.push_back(stokes_solution(nf, out.branches[size_t(j)], r0, mp.index));

    PathIntegrator integrate(a, cfg);
    Real tp = Real(2L, prec) * Real::pi(prec);
    auto ray_angle = [&](int j) {  // unwrapped bound between sector j and j+1 (1-based j)
        return j < m ? rays[size_t(j)].theta : rays[0].theta + tp;
    };

    for (int j = 1; j <= m; j++) {
        // crossing the ray between sector j and sector j+1 (wrapping to 1)
        bool wrap = (j == m);
        Real target = ray_angle(j);
        const StokesSolution& left = out.solutions[size_t(j - 1)];
        const StokesSolution& right = out.solutions[size_t(wrap ? 0 : j)];
        Real right_target = wrap ? target - tp : target;

        Real margin = Real::pi(prec) / Real(long(2 * n - 2), prec);
        Real second_offset = margin * Real(0.5, prec);

        MatC phi_l = left.value;
        Real err_l(prec);
        integrate.arc(phi_l, r0, left.theta, target, err_l);
        MatC phi_r = right.value;
        Real err_r(prec);
        integrate.arc(phi_r, r0, right.theta, right_target, err_r);
        MatC s = phi_l * phi_r.inverse();

        // constancy probe at a second overlap point
        MatC phi_l2 = phi_l, phi_r2 = phi_r;
        integrate.arc(phi_l2, r0, target, target + second_offset, err_l);
        integrate.arc(phi_r2, r0, right_target, right_target + second_offset, err_r);
        MatC s2 = phi_l2 * phi_r2.inverse();

        if (wrap) {
            MatC unwind = diag_exp(nf.residue(), Cplx(Real(0L, prec), tp));
            s = unwind * s;   // split e^{-2 pi i h_1} off the raw wrap ratio
            s2 = unwind * s2;
        }
        out.multipliers.push_back(s);
        out.constancy.push_back(max_abs(s - s2));

        // roundoff is amplified by the dynamic range of Upsilon at the
        // crossing point; the matching error propagates as an O(1) constant
        MatC ups = formal_solution_at(nf.residue(), out.branches[size_t(j - 1)].q, r0, target);
        Real amp_hi(prec), amp_lo(prec);
        for (int i = 0; i < ups.rows(); i++) {
            Real mag = abs(ups(i, i));
            amp_hi = max(amp_hi, mag);
            amp_lo = max(amp_lo, Real(1.0, prec) / mag);
        }
        // each anchor's matching error acts as a constant conjugated by
        // Upsilon at its own anchor direction
        Real anchor = left.anchor_err * left.anchor_amp + right.anchor_err * right.anchor_amp;
        Real snorm = fro_norm(s) + Real(1.0, prec);
        out.error.push_back(max_abs(s - s2) + (anchor + err_l + err_r) * snorm +
                            Real::eps2(long(prec) - 8, prec) * amp_hi * amp_lo);

        // with solutions of Phi' = -Phi A the multiplier entries sit at the
        // negatives of the crossed ray's supporting roots
        std::vector<RootId> pat;
        for (auto root : rays[size_t(j % m)].roots) pat.push_back({root.j, root.i});
        out.patterns.push_back(std::move(pat));
    }
    return out;
}

StokesData stokes_multipliers(const ConnectionGerm<Cplx>& germ, const ODESolverConfig& cfg) {
    GermEvaluator eval(germ.a);
    auto supply = [&germ](int) { return germ; };
    return stokes_multipliers(supply, eval, cfg);
}

MatC loop_monodromy(const ConnectionEvaluator& a, const Cplx& base, const ODESolverConfig& cfg,
                    Real* err_out) {
    cfg.validate();
    unsigned prec = cfg.precision;
    if (base.is_zero()) fail(Err::BadInput, "monodromy base point must avoid the singularity");
    PathIntegrator integrate(a, cfg);
    MatC phi = MatC::identity(a.dim());
    Real err(prec);
    Real th0 = arg(base);
    integrate.arc(phi, abs(base), th0, th0 + Real(2L, prec) * Real::pi(prec), err);
    if (err_out) *err_out = err;
    return phi;
}

} // namespace stokes
