#pragma once

#include "stokes/rational_connection.hpp"
#include "stokes/normal_form.hpp"
#include "stokes/stokes_matrices.hpp"

namespace stokes {

/// Tangent direction at a rational connection: coefficient derivatives in
/// the same partial-fraction shape (the divisor bound is preserved).
template <class K>
struct TangentDeformation {
    std::vector<std::vector<Mat<K>>> coeff;  // per point, k = 1..order (empty at infinity)
    MatPoly<K> poly;

    static TangentDeformation zero_like(const RationalConnection<K>& c) {
        TangentDeformation d;
        for (const auto& p : c.points)
            d.coeff.push_back(std::vector<Mat<K>>(p.coeff.size(), Mat<K>(c.lie.n, c.lie.n)));
        d.poly.assign(c.poly.size(), Mat<K>(c.lie.n, c.lie.n));
        return d;
    }

    RationalSection<K> section(const RationalConnection<K>& c) const {
        RationalSection<K> s = RationalSection<K>::zero(c.lie.n);
        for (size_t i = 0; i < c.points.size(); i++) {
            if (c.points[i].at_infinity) continue;
            for (size_t k = 0; k < coeff[i].size(); k++)
                s = s + RationalSection<K>::pole_term(coeff[i][k], c.points[i].x, int(k) + 1);
        }
        for (size_t d = 0; d < poly.size(); d++)
            s = s + RationalSection<K>::monomial(poly[d], int(d));
        return s;
    }
};

/// Outcome of the linear infinitesimal-isostokes test: a certifying rational
/// R with poles bounded by N * D, or the least-squares residual at the
/// largest N tried.
template <class K>
struct IsostokesCertificate {
    bool feasible = false;
    int pole_bound = 0;                    // the N that certified (or N_max)
    RationalSection<K> certifying;         // R, when feasible
    std::vector<Mat<K>> cartan_constants;  // c_i per irregular point
    double residual = 0;                   // least-squares residual (infeasible)
};

namespace detail {

/// Basis of the Lie algebra as matrix units (traceless combinations for sl).
inline std::vector<MatQ> algebra_units(const LieSpec& L) {
    std::vector<MatQ> units;
    for (int i = 0; i < L.n; i++)
        for (int j = 0; j < L.n; j++) {
            if (i == j) continue;
            MatQ m(L.n, L.n);
            m(i, j) = Rat(1);
            units.push_back(std::move(m));
        }
    int diag = L.flavor == Flavor::sl ? L.n - 1 : L.n;
    for (int i = 0; i < diag; i++) {
        MatQ m(L.n, L.n);
        m(i, i) = Rat(1);
        if (L.flavor == Flavor::sl) m(L.n - 1, L.n - 1) = Rat(-1);
        units.push_back(std::move(m));
    }
    return units;
}

/// Coordinates of a section in the fixed extraction frame: Laurent
/// coefficients of orders -depth..-1 at every singular point plus the
/// polynomial part through poly_deg.
inline std::vector<Rat> section_coordinates(const RationalSection<Rat>& s,
                                            const std::vector<Rat>& xs, int depth,
                                            int poly_deg) {
    std::vector<Rat> out;
    const int n = s.n;
    for (const auto& x : xs) {
        MatSeries<Rat> exp = s.laurent_at(x, -1);
        for (int k = -depth; k <= -1; k++) {
            MatQ c = (k >= exp.lo() && !exp.empty_range()) ? exp.coeff(k) : MatQ(n, n);
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++) out.push_back(c(i, j));
        }
    }
    MatPoly<Rat> pp = s.polynomial_part();
    for (int d = 0; d <= poly_deg; d++) {
        MatQ c = d < int(pp.size()) ? pp[size_t(d)] : MatQ(n, n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) out.push_back(c(i, j));
    }
    return out;
}

} // namespace detail

/// Decides whether delta is an isostokes direction: looks for rational R
/// with poles bounded by N*D such that delta A = R' + [R, A], N = 1..N_max.
/// Infeasibility is a value, not an error.
IsostokesCertificate<Rat> infinitesimal_isostokes(const RationalConnection<Rat>& c,
                                                  const TangentDeformation<Rat>& delta,
                                                  int n_max = 6);

/// One accepted continuation step.
struct ContinuationStep {
    Real t;
    RationalConnection<Cplx> connection;
    Real invariant_residual;  // final Newton residual
    Real multiplier_drift;    // max multiplier entry drift against step 0
    int newton_iters = 0;
};

struct ContinuationConfig {
    ODESolverConfig ode;
    int steps = 10;
    long newton_exp2 = 40;  // Newton residual target 2^-newton_exp2
    int max_newton = 30;
};

/// Numerical realization of the isostokes deformation: the leading
/// coefficients follow the prescribed irregular-type path while a Newton
/// corrector restores the recorded Stokes multipliers, formal residues and
/// regular-point monodromy spectra. Irregular points must carry diagonal
/// polar coefficients above the residue (framings are then the identity).
std::vector<ContinuationStep> isostokes_continuation(
    const RationalConnection<Cplx>& c0,
    const std::function<IrregularType<Cplx>(const Real&)>& path, const Real& t_end,
    const ContinuationConfig& cfg);

} // namespace stokes
