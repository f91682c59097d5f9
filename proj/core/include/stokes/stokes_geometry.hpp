#pragma once

#include "stokes/normal_form.hpp"

namespace stokes {

/// Direction where alpha(h_n) z^(1-n) is real and negative for the
/// supporting roots; exponential dominance flips across it.
struct AntiStokesRay {
    Real theta;                 // [0, 2pi)
    std::vector<RootId> roots;  // supporting roots (merged rays carry several)
};

/// Overlapping sector between consecutive rays, widened by pi/(2n-2).
/// The [lo, hi] interval doubles as the branch window for arg z, unwrapped:
/// consecutive sectors carry increasing windows and the last one reaches
/// 2 pi past the first.
struct StokesSector {
    int index = 0;  // 1-based, counterclockwise
    Real lo, hi;
    Real anchor;    // bisector of the two bounding rays
    Real width() const { return hi - lo; }
};

/// Everything needed to evaluate the canonical formal solution
/// Upsilon = exp(-h_1 ln z - Q(z)) single-valued on one sector.
struct FormalBranch {
    MatC h1;            // formal residue (diagonal)
    MatSeries<Cplx> q;  // Q(z), an h-valued polynomial in 1/z
    StokesSector sector;
};

std::vector<AntiStokesRay> anti_stokes(const MatC& h_n, int pole_order, const LieSpec& L);

/// Exact-mode rays as rational multiples of pi in [0, 2); only available when
/// every root value sits on an axis or diagonal of Q(i).
std::vector<std::pair<mpq_class, std::vector<RootId>>> exact_anti_stokes(const MatQ& h_n,
                                                                         int pole_order,
                                                                         const LieSpec& L);

std::vector<StokesSector> sectors(const std::vector<AntiStokesRay>& rays, int pole_order);

/// Upsilon at radius r and unwrapped angle theta (no sector check).
MatC formal_solution_at(const MatC& h1, const MatSeries<Cplx>& q, const Real& r,
                        const Real& theta);

/// Branch-resolved evaluation: picks the representative of arg z inside the
/// sector window (nearest the anchor if the window exceeds a full turn);
/// throws OutOfSector when no representative exists.
MatC eval_formal_solution(const FormalBranch& branch, const Cplx& z);

/// Branches for all sectors of a float normal form.
std::vector<FormalBranch> formal_branches(const FormalNormalForm<Cplx>& nf,
                                          const std::vector<StokesSector>& secs);

} // namespace stokes
