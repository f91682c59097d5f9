#pragma once

#include <map>
#include <vector>
#include <utility>

#include "stokes/poly.hpp"

namespace stokes {

enum class Flavor { gl, sl };

/// Root of type A(n-1): alpha_{ij} = e_i - e_j, i != j, with root vector E_{ij}.
struct RootId {
    int i, j;
    friend bool operator<(const RootId& a, const RootId& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
    friend bool operator==(const RootId& a, const RootId& b) { return a.i == b.i && a.j == b.j; }
};

/// Type-A Lie data for gl_n / sl_n: Cartan h = diagonal matrices (traceless
/// for sl), Borel b = upper triangular, nilradical u = strictly upper
/// triangular, Weyl group acting by permutations.
struct LieSpec {
    Flavor flavor = Flavor::sl;
    int n = 2;

    LieSpec() = default;
    LieSpec(Flavor f, int size) : flavor(f), n(size) {}

    int rank() const { return flavor == Flavor::sl ? n - 1 : n; }
    int dim() const { return flavor == Flavor::sl ? n * n - 1 : n * n; }

    std::vector<RootId> roots() const {
        std::vector<RootId> r;
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                if (i != j) r.push_back({i, j});
        return r;
    }

    template <class K>
    bool in_algebra(const Mat<K>& m) const {
        if (m.rows() != n || m.cols() != n) return false;
        if (flavor == Flavor::sl && !is_zero(m.trace())) return false;
        return true;
    }

    template <class K>
    Mat<K> root_vector(RootId a, const K& coeff) const {
        Mat<K> m(n, n);
        m(a.i, a.j) = coeff;
        return m;
    }

    /// alpha_{ij}(h) = h_i - h_j for diagonal h.
    template <class K>
    K root_eval(RootId a, const Mat<K>& h) const {
        return h(a.i, a.i) - h(a.j, a.j);
    }

    template <class K>
    static Mat<K> cartan_part(const Mat<K>& m) {
        Mat<K> h(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); i++) h(i, i) = m(i, i);
        return h;
    }

    template <class K>
    static Mat<K> offcartan_part(const Mat<K>& m) {
        Mat<K> r = m;
        for (int i = 0; i < m.rows(); i++) r(i, i) = K{};
        return r;
    }

    template <class K>
    static bool is_diagonal(const Mat<K>& m) {
        for (int i = 0; i < m.rows(); i++)
            for (int j = 0; j < m.cols(); j++)
                if (i != j && !is_zero(m(i, j))) return false;
        return true;
    }

    template <class K>
    static bool is_upper_triangular(const Mat<K>& m) {
        for (int i = 0; i < m.rows(); i++)
            for (int j = 0; j < i; j++)
                if (!is_zero(m(i, j))) return false;
        return true;
    }

    template <class K>
    static bool is_strictly_upper(const Mat<K>& m) {
        for (int i = 0; i < m.rows(); i++)
            for (int j = 0; j <= i && j < m.cols(); j++)
                if (!is_zero(m(i, j))) return false;
        return true;
    }

    /// Diagonal h is regular iff all roots are nonvanishing on it.
    template <class K>
    bool is_regular_cartan(const Mat<K>& h) const {
        for (int i = 0; i < n; i++)
            for (int j = i + 1; j < n; j++)
                if (is_zero(h(i, i) - h(j, j))) return false;
        return true;
    }

    Mat<Rat> weyl_matrix(const std::vector<int>& perm) const {
        Mat<Rat> w(n, n);
        for (int j = 0; j < n; j++) w(perm[size_t(j)], j) = Rat(1);
        return w;
    }
};

/// X = h_part + sum over roots of coeff * E_{ij}; entrywise split for type A.
template <class K>
std::pair<Mat<K>, std::map<RootId, K>> root_decompose(const Mat<K>& x, const LieSpec& L) {
    if (!L.in_algebra(x)) fail(Err::BadInput, "root_decompose: matrix not in the algebra");
    std::map<RootId, K> parts;
    for (auto a : L.roots())
        if (!is_zero(x(a.i, a.j))) parts[a] = x(a.i, a.j);
    return {LieSpec::cartan_part(x), parts};
}

/// Solve [h, X] = Y for X with zero Cartan part; X_alpha = Y_alpha / alpha(h).
template <class K>
Mat<K> ad_invert(const Mat<K>& h, const Mat<K>& y, const LieSpec& L) {
    if (!LieSpec::is_diagonal(h)) fail(Err::BadInput, "ad_invert: h must be in the Cartan");
    Mat<K> x(L.n, L.n);
    for (int i = 0; i < L.n; i++)
        for (int j = 0; j < L.n; j++) {
            if (i == j) {
                if (!is_zero(y(i, j)))
                    fail(Err::BadInput, "ad_invert: Y must have zero Cartan part");
                continue;
            }
            if (is_zero(y(i, j))) continue;
            K ah = h(i, i) - h(j, j);
            if (is_zero(ah)) fail(Err::NotRegular, "ad_invert: alpha(h) = 0");
            x(i, j) = y(i, j) / ah;
        }
    return x;
}

// ---------------------------------------------------------------------------
// Eigenstructure (type A regular-semisimple tests and framings)
// ---------------------------------------------------------------------------

/// Exact test: char poly squarefree <=> n distinct eigenvalues.
inline bool is_regular_semisimple(const MatQ& a) {
    Poly<Rat> p = charpoly(a);
    Poly<Rat> g = poly_gcd(p, poly_deriv(p));
    return poly_deg(g) <= 0;
}

/// Float test at the precision carried by the entries. Throws Indeterminate
/// when the eigenvalue separation falls below the 2^(-P/2) resolution limit.
inline bool is_regular_semisimple(const MatC& a) {
    unsigned prec = a(0, 0).precision();
    auto roots = poly_roots(charpoly(a), prec);
    Real scale = max_abs(a) + Real(1.0, prec);
    Real tol = scale * Real::eps2(long(prec) / 2, prec);
    for (size_t i = 0; i < roots.size(); i++)
        for (size_t j = i + 1; j < roots.size(); j++)
            if (abs(roots[i] - roots[j]) < tol)
                fail(Err::Indeterminate,
                     "eigenvalue separation below float tolerance; raise the precision");
    return true;
}

/// Eigenvalues of an exact matrix, provided they are Gaussian rationals.
/// Scales to a Gaussian-integer matrix, finds integer roots numerically and
/// certifies them by exact reconstruction of the characteristic polynomial.
inline std::vector<Rat> exact_eigenvalues(const MatQ& a) {
    const int n = a.rows();
    mpz_class den(1);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            mpz_class l1 = a(i, j).re.get_den(), l2 = a(i, j).im.get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l1.get_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l2.get_mpz_t());
        }
    Rat scale{mpq_class(den)};
    MatQ b = a.convert([&](const Rat& x) { return scale * x; });
    Poly<Rat> p = charpoly(b);

    for (unsigned prec = 256; prec <= 4096; prec *= 2) {
        auto approx = poly_roots(
            [&] {
                Poly<Cplx> pc(p.size(), Cplx(prec));
                for (size_t k = 0; k < p.size(); k++) pc[k] = p[k].to_cplx(prec);
                return pc;
            }(),
            prec);
        std::vector<Rat> cand;
        for (const Cplx& r : approx) {
            mpz_class zr, zi;
            mpfr_get_z(zr.get_mpz_t(), round(r.re).raw(), MPFR_RNDN);
            mpfr_get_z(zi.get_mpz_t(), round(r.im).raw(), MPFR_RNDN);
            cand.push_back(Rat(mpq_class(zr), mpq_class(zi)));
        }
        Poly<Rat> rebuilt = {Rat(1)};
        for (const Rat& c : cand) rebuilt = poly_mul(rebuilt, Poly<Rat>{-c, Rat(1)});
        if (rebuilt.size() == p.size()) {
            bool ok = true;
            for (size_t k = 0; k < p.size(); k++)
                if (rebuilt[k] != p[k]) { ok = false; break; }
            if (ok) {
                for (Rat& c : cand) c = c / scale;
                return cand;
            }
        }
    }
    fail(Err::Indeterminate,
         "matrix has eigenvalues outside Q(i); exact framing needs the float backend");
}

inline std::vector<Cplx> float_eigenvalues(const MatC& a) {
    return poly_roots(charpoly(a), a(0, 0).precision());
}

/// Adjugate by cofactors; columns of adj(B) span ker(B) when rank(B) = n-1.
template <class K>
Mat<K> adjugate(const Mat<K>& m) {
    const int n = m.rows();
    if (n == 1) return Mat<K>::identity(1);
    Mat<K> adj(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            Mat<K> minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; r++) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; c++) {
                    if (c == i) continue;
                    minor(rr, cc++) = m(r, c);
                }
                rr++;
            }
            K d = minor.det();
            adj(i, j) = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

/// A nonzero kernel vector of a rank n-1 matrix, leading entry normalized to 1.
template <class K>
std::vector<K> kernel_vector(const Mat<K>& b) {
    const int n = b.rows();
    Mat<K> adj = adjugate(b);
    int best = -1;
    double bestmag = 0;
    for (int j = 0; j < n; j++) {
        double s = 0;
        for (int i = 0; i < n; i++) s += pivot_mag(adj(i, j));
        if (s > bestmag) { bestmag = s; best = j; }
    }
    if (best < 0) fail(Err::NotRegular, "kernel_vector: matrix has rank below n-1");
    int lead = -1;
    double colmax = 0;
    for (int i = 0; i < n; i++) colmax = std::max(colmax, pivot_mag(adj(i, best)));
    for (int i = 0; i < n; i++)
        if (pivot_mag(adj(i, best)) > 1e-12 * colmax) { lead = i; break; }
    std::vector<K> v(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) v[size_t(i)] = adj(i, best) / adj(lead, best);
    return v;
}

namespace detail {

template <class K>
std::pair<Mat<K>, Mat<K>> framing_from_eigenvalues(const Mat<K>& a, std::vector<K> evs,
                                                   const LieSpec& L) {
    const int n = L.n;
    Mat<K> h(n, n), v(n, n);
    for (int k = 0; k < n; k++) {
        h(k, k) = evs[size_t(k)];
        Mat<K> b = a;
        for (int i = 0; i < n; i++) b(i, i) -= evs[size_t(k)];
        auto vec = kernel_vector(b);
        for (int i = 0; i < n; i++) v(i, k) = vec[size_t(i)];
    }
    return {v.inverse(), h};
}

} // namespace detail

/// Conjugate a regular-semisimple exact matrix into the Cartan: g A g^-1 = h.
/// Eigenvalues are ordered descending by (Re, Im) and eigenvectors have unit
/// leading entry, which pins one point of the N(T)-orbit of framings.
inline std::pair<MatQ, MatQ> compatible_framing(const MatQ& a, const LieSpec& L) {
    if (LieSpec::is_diagonal(a)) {
        if (!L.is_regular_cartan(a)) fail(Err::NotRegular, "repeated eigenvalues");
        return {MatQ::identity(L.n), a};
    }
    if (!is_regular_semisimple(a)) fail(Err::NotRegular, "matrix is not regular semisimple");
    auto evs = exact_eigenvalues(a);
    std::sort(evs.begin(), evs.end(), [](const Rat& x, const Rat& y) {
        if (x.re != y.re) return x.re > y.re;
        return x.im > y.im;
    });
    return detail::framing_from_eigenvalues(a, evs, L);
}

inline std::pair<MatC, MatC> compatible_framing(const MatC& a, const LieSpec& L) {
    is_regular_semisimple(a);  // throws NotRegular / Indeterminate
    auto evs = float_eigenvalues(a);
    std::sort(evs.begin(), evs.end(), [](const Cplx& x, const Cplx& y) {
        if (x.re != y.re) return y.re < x.re;
        return y.im < x.im;
    });
    return detail::framing_from_eigenvalues(a, evs, L);
}

/// For upper-triangular A with distinct diagonal, the unique unipotent u with
/// u A u^-1 = diag(A).
template <class K>
std::pair<Mat<K>, Mat<K>> unipotent_conjugate_to_cartan(const Mat<K>& a, const LieSpec& L) {
    const int n = L.n;
    if (!LieSpec::is_upper_triangular(a))
        fail(Err::BadInput, "unipotent_conjugate_to_cartan: matrix is not upper triangular");
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++)
            if (is_zero(a(i, i) - a(j, j)))
                fail(Err::NotRegular, "repeated diagonal entries");
    Mat<K> u = Mat<K>::identity(n);
    for (int gap = 1; gap < n; gap++)
        for (int i = 0; i + gap < n; i++) {
            int j = i + gap;
            K s{};
            for (int k = i; k < j; k++) s += u(i, k) * a(k, j);
            u(i, j) = s / (a(i, i) - a(j, j));
        }
    return {u, LieSpec::cartan_part(a)};
}

} // namespace stokes
