#pragma once

#include "stokes/ode.hpp"
#include "stokes/stokes_geometry.hpp"

namespace stokes {

/// Actual solution on one Stokes sector, anchored by asymptotic matching:
/// Phi_j(z0) = Upsilon(z0) F_N(z0) at optimal truncation N.
struct StokesSolution {
    int sector_index = 0;
    FormalBranch branch;
    Real r0;             // anchor radius
    Real theta;          // anchor angle, unwrapped inside the branch window
    MatC value;          // Phi_j at the anchor
    Real anchor_err;     // smallest-term magnitude of the matching series
    Real anchor_amp;     // dynamic range of Upsilon at the anchor
    int truncation_used = 0;
};

/// Stokes data at one irregular point: sectors, anchored solutions,
/// multipliers S_1..S_{m-1}, the wraparound factor (with the formal
/// monodromy split off), and per-multiplier quality estimates.
struct StokesData {
    std::vector<StokesSector> sectors;
    std::vector<FormalBranch> branches;
    std::vector<StokesSolution> solutions;
    Real r0;
    int truncation = 0;

    std::vector<MatC> multipliers;   // size m: S_1..S_{m-1}, then the wrap factor
    MatC formal_residue;             // h_1 of the normal form
    MatC formal_monodromy;           // e^{-2 pi i h_1}
    std::vector<Real> error;         // estimated absolute error per multiplier
    std::vector<Real> constancy;     // discrepancy at a second overlap point
    std::vector<std::vector<RootId>> patterns;  // allowed root entries per multiplier

    /// Counterclockwise monodromy of the first Stokes solution:
    /// S_1 ... S_{m-1} * M_formal * S_wrap.
    MatC assembled_monodromy() const {
        MatC m = MatC::identity(formal_monodromy.rows());
        for (size_t j = 0; j + 1 < multipliers.size(); j++) m = m * multipliers[j];
        return m * formal_monodromy * multipliers.back();
    }

    /// Largest off-pattern entry magnitude of multiplier j.
    Real pattern_residual(size_t j) const;
};

/// Optimal truncation data of the matching series at radius r: the smallest
/// term index and magnitude of sum ||F_k|| r^k.
struct MatchingPoint {
    int index = 0;
    Real magnitude;
};
MatchingPoint optimal_truncation(const std::vector<Real>& term_norms, const Real& r);

/// Anchor one Stokes solution (no continuation).
StokesSolution stokes_solution(const FormalNormalForm<Cplx>& nf, const FormalBranch& branch,
                               const Real& r0, int truncation);

/// All Stokes data of a framed non-resonant germ presented as an exact
/// Laurent polynomial (request_germ supplies it at any truncation order).
StokesData stokes_multipliers(const std::function<ConnectionGerm<Cplx>(int)>& request_germ,
                              const ConnectionEvaluator& a, const ODESolverConfig& cfg);

/// Convenience overload for exact-polynomial germs.
StokesData stokes_multipliers(const ConnectionGerm<Cplx>& germ, const ODESolverConfig& cfg);

/// Fundamental-solution continuation around a counterclockwise circle
/// |z| = |base|, normalized to the identity at the base point.
MatC loop_monodromy(const ConnectionEvaluator& a, const Cplx& base, const ODESolverConfig& cfg,
                    Real* err_out = nullptr);

} // namespace stokes
