#include "stokes/stokes_geometry.hpp"

#include <algorithm>

namespace stokes {

namespace {

Real two_pi(unsigned prec) { return Real(2L, prec) * Real::pi(prec); }

Real normalize_angle(Real t, unsigned prec) {
    Real tp = two_pi(prec);
    Real k = floor(t / tp);
    Real r = t - k * tp;
    if (r < Real(0L, prec)) r += tp;
    if (r >= tp) r -= tp;
    return r;
}

} // namespace

std::vector<AntiStokesRay> anti_stokes(const MatC& h_n, int pole_order, const LieSpec& L) {
    const int n = pole_order;
    if (n < 2) fail(Err::BadInput, "anti-Stokes directions need pole order >= 2");
    if (!LieSpec::is_diagonal(h_n)) fail(Err::BadInput, "h_n must lie in the Cartan");
    unsigned prec = h_n(0, 0).precision();
    Real pi = Real::pi(prec);
    Real period = two_pi(prec) / Real(long(n - 1), prec);

    std::vector<std::pair<Real, RootId>> hits;
    for (auto a : L.roots()) {
        Cplx c = h_n(a.i, a.i) - h_n(a.j, a.j);
        if (c.is_zero()) fail(Err::NotRegular, "alpha(h_n) = 0 for a root");
        // alpha(h) z^{1-n} real negative: (1-n) theta + arg(alpha(h)) = pi (mod 2pi)
        Real base = (arg(c) - pi) / Real(long(n - 1), prec);
        for (int k = 0; k < n - 1; k++)
            hits.emplace_back(normalize_angle(base + Real(long(k), prec) * period, prec), a);
    }
    std::sort(hits.begin(), hits.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    Real tol = Real::eps2(long(prec) / 2, prec);
    std::vector<AntiStokesRay> rays;
    for (auto& [theta, root] : hits) {
        if (!rays.empty() && theta - rays.back().theta < tol) {
            rays.back().roots.push_back(root);
            continue;
        }
        rays.push_back({theta, {root}});
    }
    // wraparound cluster: last ray within tol of first + 2pi
    if (rays.size() > 1 && rays.front().theta + two_pi(prec) - rays.back().theta < tol) {
        for (auto r : rays.back().roots) rays.front().roots.push_back(r);
        rays.pop_back();
    }
    return rays;
}

std::vector<std::pair<mpq_class, std::vector<RootId>>> exact_anti_stokes(const MatQ& h_n,
                                                                         int pole_order,
                                                                         const LieSpec& L) {
    const int n = pole_order;
    if (n < 2) fail(Err::BadInput, "anti-Stokes directions need pole order >= 2");
    if (!LieSpec::is_diagonal(h_n)) fail(Err::BadInput, "h_n must lie in the Cartan");

    // arg of a Gaussian rational is an exact multiple of pi/4 only on the
    // axes and diagonals; anything else needs the float backend
    auto arg_in_pi = [](const Rat& c) -> mpq_class {
        if (c.is_zero()) fail(Err::NotRegular, "alpha(h_n) = 0 for a root");
        int sr = sgn(c.re), si = sgn(c.im);
        if (si == 0) return sr > 0 ? mpq_class(0) : mpq_class(1);
        if (sr == 0) return si > 0 ? mpq_class(1, 2) : mpq_class(3, 2);
        if (c.re == c.im) return sr > 0 ? mpq_class(1, 4) : mpq_class(5, 4);
        if (c.re == -c.im) return si > 0 ? mpq_class(3, 4) : mpq_class(7, 4);
        fail(Err::Indeterminate,
             "ray angles are not exact rational multiples of pi; use the float backend");
    };

    std::vector<std::pair<mpq_class, std::vector<RootId>>> rays;
    for (auto a : L.roots()) {
        Rat c = h_n(a.i, a.i) - h_n(a.j, a.j);
        mpq_class angle = arg_in_pi(c);
        // theta/pi = (arg/pi - 1)/(n-1) + 2k/(n-1), normalized into [0, 2)
        for (int k = 0; k < n - 1; k++) {
            mpq_class t = (angle - 1) / mpq_class(n - 1) + mpq_class(2 * k, n - 1);
            t.canonicalize();
            while (t < 0) t += 2;
            while (t >= 2) t -= 2;
            bool merged = false;
            for (auto& r : rays)
                if (r.first == t) {
                    r.second.push_back(a);
                    merged = true;
                    break;
                }
            if (!merged) rays.push_back({t, {a}});
        }
    }
    std::sort(rays.begin(), rays.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return rays;
}

std::vector<StokesSector> sectors(const std::vector<AntiStokesRay>& rays, int pole_order) {
    if (rays.empty()) fail(Err::BadInput, "sector construction needs at least one ray");
    unsigned prec = rays.front().theta.precision();
    Real margin = Real::pi(prec) / Real(long(2 * pole_order - 2), prec);
    const int m = int(rays.size());
    std::vector<StokesSector> out;
    for (int j = 0; j < m; j++) {
        Real r1 = rays[size_t(j)].theta;
        Real r2 = (j + 1 < m) ? rays[size_t(j + 1)].theta : rays[0].theta + two_pi(prec);
        StokesSector s;
        s.index = j + 1;
        s.lo = r1 - margin;
        s.hi = r2 + margin;
        s.anchor = (r1 + r2) / Real(2L, prec);
        out.push_back(std::move(s));
    }
    return out;
}

MatC formal_solution_at(const MatC& h1, const MatSeries<Cplx>& q, const Real& r,
                        const Real& theta) {
    unsigned prec = std::max(h1(0, 0).precision(), theta.precision());
    const int n = h1.rows();
    Cplx logz(log(r), theta);
    Cplx z = from_polar(r, theta);
    MatC out(n, n);
    for (int i = 0; i < n; i++) {
        Cplx expnt = -(h1(i, i) * logz);
        for (int k = q.lo(); k <= std::min(-1, q.stored_hi()); k++) {
            Cplx zk = Cplx::from_int(1, prec);
            for (int t = 0; t < -k; t++) zk = zk / z;  // z^k, k < 0, single-valued
            expnt -= q.coeff(k)(i, i) * zk;
        }
        out(i, i) = exp(expnt);
    }
    return out;
}

MatC eval_formal_solution(const FormalBranch& branch, const Cplx& z) {
    if (z.is_zero()) fail(Err::BadInput, "formal solution undefined at the origin");
    unsigned prec = z.precision();
    Real r = abs(z);
    Real theta = arg(z);  // principal value
    Real tp = two_pi(prec);
    // slide into the sector window; a window wider than a full turn can hold
    // two representatives, pick the one nearest the anchor
    Real k = -floor((theta - branch.sector.lo) / tp);  // smallest rep >= lo
    Real cand = theta + k * tp;
    if (cand > branch.sector.hi) fail(Err::OutOfSector, "arg z has no branch in the sector");
    Real best = cand;
    if (cand + tp <= branch.sector.hi &&
        abs(cand + tp - branch.sector.anchor) < abs(cand - branch.sector.anchor))
        best = cand + tp;
    return formal_solution_at(branch.h1, branch.q, r, best);
}

std::vector<FormalBranch> formal_branches(const FormalNormalForm<Cplx>& nf,
                                          const std::vector<StokesSector>& secs) {
    std::vector<FormalBranch> out;
    for (const auto& s : secs) out.push_back({nf.residue(), nf.q_polynomial(), s});
    return out;
}

} // namespace stokes
