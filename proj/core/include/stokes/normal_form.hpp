#pragma once

#include "stokes/gauge.hpp"

namespace stokes {

/// d + h_n dz/z^n + ... + h_1 dz/z with h_n regular, brought by a 1+O(z)
/// transformer. Q(z) collects the polar part above the residue so that the
/// polar part reads dQ + h_1 dz/z.
template <class K>
struct FormalNormalForm {
    LieSpec lie;
    int pole_order = 0;
    int truncation = 0;
    std::vector<Mat<K>> h;      // h[j] = h_{j+1}, j = 0..n-1 (h[0] is the residue)
    GaugeElement<K> transformer;

    const Mat<K>& residue() const { return h[0]; }

    /// Q(z) = sum_{j=1-n}^{-1} q_j z^j with q_{1-k} = -h_k/(k-1), k = 2..n.
    MatSeries<K> q_polynomial() const {
        MatSeries<K> q(lie.n, 1 - pole_order, kExactOrder);
        for (int k = 2; k <= pole_order; k++) {
            K div = field_from_int(1 - k, h[size_t(k - 1)](0, 0));
            q.set_coeff(1 - k, h[size_t(k - 1)].map([&](const K& x) { return x / div; }));
        }
        return q;
    }

    /// The normal-form coefficient series h_n/z^n + ... + h_1/z.
    MatSeries<K> coefficient_series(int hi = kExactOrder) const {
        MatSeries<K> s(lie.n, -pole_order, hi);
        for (int k = 1; k <= pole_order; k++) s.set_coeff(-k, h[size_t(k - 1)]);
        return s;
    }

    /// The tuple (h_n, ..., h_2): what the irregular-type map remembers.
    std::vector<Mat<K>> irregular_type_entry() const {
        std::vector<Mat<K>> t;
        for (int k = pole_order; k >= 2; k--) t.push_back(h[size_t(k - 1)]);
        return t;
    }
};

/// The unique diagonal representative coordinates on Conn_n^B / G_n^U:
/// d + alpha_n dz/z^n + ... + alpha_1 dz/z + beta_0 dz + ... + beta_{n-2} z^{n-2} dz.
template <class K>
struct ReducedCoordinates {
    LieSpec lie;
    int pole_order = 0;
    std::vector<Mat<K>> alpha;  // alpha[i] = alpha_{i+1}, i = 0..n-1
    std::vector<Mat<K>> beta;   // beta[j], j = 0..n-2
    GaugeElement<K> gauge;      // reducing gauge in G_n^U

    friend bool operator==(const ReducedCoordinates& x, const ReducedCoordinates& y) {
        return x.pole_order == y.pole_order && x.alpha == y.alpha && x.beta == y.beta;
    }

    /// Rebuild the representative germ.
    ConnectionGerm<K> representative(int hi = kExactOrder) const {
        MatSeries<K> s(lie.n, -pole_order, hi);
        for (int i = 0; i < pole_order; i++) s.set_coeff(-(i + 1), alpha[size_t(i)]);
        for (int j = 0; j + 2 <= pole_order; j++) s.set_coeff(j, beta[size_t(j)]);
        return ConnectionGerm<K>(lie, pole_order, s);
    }
};

/// Per irregular point (h_n, ..., h_2); the formal residue is forgotten.
template <class K>
using IrregularType = std::vector<std::vector<Mat<K>>>;

namespace detail {

template <class K>
bool cartan_regular(const Mat<K>& h) {
    for (int i = 0; i < h.rows(); i++)
        for (int j = i + 1; j < h.rows(); j++)
            if (!is_invertible(h(i, i) - h(j, j))) return false;
    return true;
}

/// Shared order-by-order elimination. Processes orders k = 1-n .. N.
/// keep_cartan(k) tells which Cartan coefficients survive as outputs; the
/// off-Cartan defect at order k is always removed by exp(X z^{k+n}) with
/// X = ad_invert(h_n, defect), and removable Cartan defects by exp(eta z^{k+1}).
/// Monomial gauges act in closed form, which keeps the whole pass at
/// O(N^2 log N) coefficient products.
template <class K, class KeepFn>
std::pair<MatSeries<K>, MatSeries<K>> eliminate(const LieSpec& L, int n, MatSeries<K> a,
                                                int target, const KeepFn& keep_cartan,
                                                MatSeries<K> f_acc) {
    const Mat<K> lead = a.coeff(-n);
    for (int k = 1 - n; k <= target; k++) {
        Mat<K> off = LieSpec::offcartan_part(a.coeff(k));
        if (!off.is_zero()) {
            Mat<K> x = ad_invert(lead, off, L);
            a = monomial_gauge_act(x, k + n, a);
            f_acc = (exp_monomial(x, k + n, f_acc.hi()) * f_acc).truncated(f_acc.hi());
        }
        if (keep_cartan(k)) continue;
        Mat<K> diag = LieSpec::cartan_part(a.coeff(k));
        if (!diag.is_zero()) {
            K div = field_from_int(-(k + 1), diag(0, 0));
            Mat<K> eta = diag.map([&](const K& c) { return c / div; });
            a = monomial_gauge_act(eta, k + 1, a);
            f_acc = (exp_monomial(eta, k + 1, f_acc.hi()) * f_acc).truncated(f_acc.hi());
        }
    }
    return {a, f_acc};
}

} // namespace detail

/// Formal normal form of a framed non-resonant germ: all polar Cartan
/// coefficients kept as h_n..h_1, everything else eliminated through order N.
template <class K>
FormalNormalForm<K> formal_normal_form(const ConnectionGerm<K>& germ, int target = -1) {
    const int n = germ.pole_order;
    if (n < 2) fail(Err::BadInput, "formal normal form needs pole order >= 2");
    if (!LieSpec::is_diagonal(germ.leading()))
        fail(Err::NotFramed, "leading coefficient must lie in the Cartan (apply a framing)");
    if (!detail::cartan_regular(germ.leading()))
        fail(Err::NotRegular, "leading coefficient is not regular");
    if (target < 0) target = 2 * n + 4;
    if (!germ.a.exact_poly() && germ.a.hi() < target) target = germ.a.hi();
    if (target < 0)
        fail(Err::TruncationUnderflow, "germ has no reliable non-polar coefficients");

    auto [fin, f] = detail::eliminate(germ.lie, n, germ.a.truncated(target), target,
                                      [](int k) { return k <= -1; },
                                      MatSeries<K>::identity(germ.lie.n, target + n));
    FormalNormalForm<K> nf;
    nf.lie = germ.lie;
    nf.pole_order = n;
    nf.truncation = target;
    for (int k = 1; k <= n; k++) nf.h.push_back(fin.coeff(-k));
    nf.transformer = GaugeElement<K>::from_series(std::move(f), target + n);
    return nf;
}

/// The unique G_n^U-normal form of a germ with Borel polar part
/// (Conn_n^B): diagonal alpha_n..alpha_1, beta_0..beta_{n-2}.
template <class K>
ReducedCoordinates<K> b_normal_form(const ConnectionGerm<K>& germ, int target = -1) {
    const LieSpec& L = germ.lie;
    const int n = germ.pole_order;
    if (n < 2) fail(Err::BadInput, "b-normal form needs pole order >= 2");
    for (int k = -n; k <= -1; k++) {
        const Mat<K>& c = germ.a.coeff(k);
        for (int i = 0; i < L.n; i++)
            for (int j = 0; j < i; j++)
                if (!is_zero(c(i, j)))
                    fail(Err::NotBorel, "polar coefficient has a lower-triangular entry");
    }
    const Mat<K>& lead = germ.leading();
    for (int i = 0; i < L.n; i++)
        for (int j = i + 1; j < L.n; j++)
            if (!is_invertible(lead(i, i) - lead(j, j)))
                fail(Err::NotRegular, "leading coefficient has repeated diagonal entries");
    if (target < 0) target = 2 * n + 4;
    if (!germ.a.exact_poly() && germ.a.hi() < target) target = germ.a.hi();
    if (target < n - 2)
        fail(Err::TruncationUnderflow, "germ truncation too small for the beta coordinates");

    // constant unipotent stage puts alpha_n into the Cartan
    auto [u0, lead_h] = unipotent_conjugate_to_cartan(lead, L);
    MatSeries<K> a = germ.a.truncated(target);
    MatSeries<K> acc = MatSeries<K>::identity(L.n, target + n);
    if (!(u0 == Mat<K>::identity(L.n))) {
        a = conjugate_series(u0, a);
        acc = MatSeries<K>::constant(u0, target + n);
    }

    auto [fin, f] = detail::eliminate(L, n, std::move(a), target,
                                      [&](int k) { return k <= n - 2; }, std::move(acc));

    ReducedCoordinates<K> rc;
    rc.lie = L;
    rc.pole_order = n;
    for (int i = 1; i <= n; i++) rc.alpha.push_back(fin.coeff(-i));
    for (int j = 0; j <= n - 2; j++) rc.beta.push_back(fin.coeff(j));
    rc.gauge = GaugeElement<K>::from_series(std::move(f), target + n);
    return rc;
}

/// Irregular types of a list of framed germs.
template <class K>
IrregularType<K> irregular_type(const std::vector<ConnectionGerm<K>>& germs, int target = -1) {
    IrregularType<K> t;
    for (const auto& g : germs) t.push_back(formal_normal_form(g, target).irregular_type_entry());
    return t;
}

/// Dimension formulas for a divisor sum n_i x_i and a Lie algebra rank.
struct Dims {
    long fdim = 0;    // dimension of the analytic deformation: (deg D - l) rk
    long fnudim = 0;  // generic fiber of nu: (deg D - l_irr) rk
    long dimfol = 0;  // the full distribution: (2 deg D - l) rk
    std::vector<long> reduced;  // (2 n_i - 1) rk per irregular point
};

inline long reduced_space_dim(long pole_order, long rank) { return (2 * pole_order - 1) * rank; }

inline Dims dims(const std::vector<int>& orders, long rank) {
    long deg = 0, l = long(orders.size()), l_irr = 0;
    for (int n : orders) {
        if (n < 1) fail(Err::BadInput, "divisor multiplicities must be >= 1");
        deg += n;
        if (n >= 2) l_irr++;
    }
    if (l_irr == 0) fail(Err::NoIrregularPoint, "the divisor has no irregular point");
    Dims d;
    d.fdim = (deg - l) * rank;
    d.fnudim = (deg - l_irr) * rank;
    d.dimfol = (2 * deg - l) * rank;
    for (int n : orders)
        if (n >= 2) d.reduced.push_back(reduced_space_dim(n, rank));
    return d;
}

} // namespace stokes
