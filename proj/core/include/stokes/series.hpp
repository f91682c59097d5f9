#pragma once

#include <optional>

#include "stokes/matrix.hpp"
#include "stokes/lie.hpp"

namespace stokes {

/// Orders at or above this sentinel mean "exact at every order"
/// (Laurent polynomials). Saturating helpers keep it stable.
constexpr int kExactOrder = 1 << 20;

inline int ord_add(int a, int b) {
    if (a >= kExactOrder / 2 || b >= kExactOrder / 2) return kExactOrder;
    return a + b;
}

/// Truncated Laurent series with square-matrix coefficients.
/// Coefficients are exact with respect to the inputs through order hi();
/// orders above hi() are unknown. A series with hi() == kExactOrder is an
/// exact Laurent polynomial.
template <class K>
class MatSeries {
public:
    MatSeries() : n_(0), lo_(0), hi_(-1) {}
    MatSeries(int n, int lo, int hi) : n_(n), lo_(lo), hi_(hi) {}

    static MatSeries zero(int n, int hi = kExactOrder) {
        MatSeries s(n, 0, hi);
        return s;
    }
    static MatSeries constant(Mat<K> m, int hi = kExactOrder) {
        MatSeries s(m.rows(), 0, hi);
        s.set_coeff(0, std::move(m));
        return s;
    }
    static MatSeries identity(int n, int hi = kExactOrder) {
        return constant(Mat<K>::identity(n), hi);
    }
    /// z^k * m
    static MatSeries monomial(Mat<K> m, int k, int hi = kExactOrder) {
        MatSeries s(m.rows(), k, hi);
        s.set_coeff(k, std::move(m));
        return s;
    }

    int dim() const { return n_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool exact_poly() const { return hi_ >= kExactOrder; }
    bool empty_range() const { return hi_ < lo_; }

    /// Highest order with a stored (possibly zero) coefficient.
    int stored_hi() const { return lo_ + int(c_.size()) - 1; }

    const Mat<K>& coeff(int k) const {
        static const Mat<K> dummy;
        if (k > hi_) fail(Err::TruncationUnderflow, "coefficient above reliable order");
        if (k < lo_ || k > stored_hi()) {
            zero_.emplace(n_, n_);
            return *zero_;
        }
        return c_[size_t(k - lo_)];
    }

    void set_coeff(int k, Mat<K> m) {
        if (k < lo_) {
            c_.insert(c_.begin(), size_t(lo_ - k), Mat<K>(n_, n_));
            lo_ = k;
        }
        if (k > stored_hi()) c_.resize(size_t(k - lo_ + 1), Mat<K>(n_, n_));
        c_[size_t(k - lo_)] = std::move(m);
    }

    /// Drop exactly-zero leading coefficients (recomputes the true lowest order).
    MatSeries trimmed() const {
        MatSeries s = *this;
        while (!s.c_.empty() && s.c_.front().is_zero()) {
            s.c_.erase(s.c_.begin());
            s.lo_++;
        }
        if (s.c_.empty()) s.lo_ = 0;
        return s;
    }

    bool is_zero() const {
        for (const auto& m : c_)
            if (!m.is_zero()) return false;
        return true;
    }

    MatSeries shift(int k) const {  // multiply by z^k
        MatSeries s = *this;
        s.lo_ += k;
        s.hi_ = ord_add(s.hi_, k);
        return s;
    }

    friend MatSeries operator-(const MatSeries& a) {
        MatSeries s(a.n_, a.lo_, a.hi_);
        s.c_.reserve(a.c_.size());
        for (const auto& m : a.c_) s.c_.push_back(-m);
        return s;
    }
    friend MatSeries operator+(const MatSeries& a, const MatSeries& b) {
        MatSeries s(a.n_, std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
        int top = std::min(s.hi_, std::max(a.stored_hi(), b.stored_hi()));
        for (int k = s.lo_; k <= top; k++) s.set_coeff(k, a.at(k) + b.at(k));
        return s;
    }
    friend MatSeries operator-(const MatSeries& a, const MatSeries& b) {
        MatSeries s(a.n_, std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
        int top = std::min(s.hi_, std::max(a.stored_hi(), b.stored_hi()));
        for (int k = s.lo_; k <= top; k++) s.set_coeff(k, a.at(k) - b.at(k));
        return s;
    }
    /// Product; reliable through min(hi_a + lo_b, hi_b + lo_a).
    friend MatSeries operator*(const MatSeries& a, const MatSeries& b) {
        int lo = a.lo_ + b.lo_;
        int hi = std::min(ord_add(a.hi_, b.lo_), ord_add(b.hi_, a.lo_));
        MatSeries s(a.n_, lo, hi);
        int top = std::min(hi, a.stored_hi() + b.stored_hi());
        for (int k = lo; k <= top; k++) {
            Mat<K> sum(a.n_, a.n_);
            int i0 = std::max(a.lo_, k - b.stored_hi());
            int i1 = std::min(a.stored_hi(), k - b.lo_);
            for (int i = i0; i <= i1; i++) sum += a.at(i) * b.at(k - i);
            s.set_coeff(k, std::move(sum));
        }
        return s;
    }
    friend MatSeries operator*(const K& x, const MatSeries& a) {
        MatSeries s(a.n_, a.lo_, a.hi_);
        for (const auto& m : a.c_) s.c_.push_back(x * m);
        return s;
    }

    /// d/dz; reliable through hi-1.
    MatSeries derivative() const {
        MatSeries s(n_, lo_ - 1, ord_add(hi_, -1));
        for (int k = lo_; k <= stored_hi(); k++) {
            if (k == 0) continue;
            s.set_coeff(k - 1, field_from_like(k) * at(k));
        }
        if (s.c_.empty()) s.lo_ = 0;
        return s;
    }

    /// Truncate the reliable range (and storage) to order m.
    MatSeries truncated(int m) const {
        MatSeries s(n_, lo_, std::min(hi_, m));
        for (int k = lo_; k <= std::min(stored_hi(), m); k++) s.set_coeff(k, at(k));
        if (s.c_.empty()) s.lo_ = 0;
        return s;
    }

    /// Multiplicative inverse; target gives the requested reliable order for
    /// exact-polynomial inputs (mandatory there).
    MatSeries inverse(std::optional<int> target = std::nullopt) const {
        MatSeries a = trimmed();
        if (a.c_.empty() || a.c_.front().is_zero())
            fail(Err::NotInvertible, "series with zero leading coefficient");
        int hi = exact_poly() ? (target ? ord_add(*target, 0) : kExactOrder)
                              : ord_add(hi_, -2 * a.lo_);
        if (hi >= kExactOrder && a.c_.size() > 1)
            fail(Err::BadInput, "series inverse of a polynomial needs a target order");
        Mat<K> lead_inv = a.c_.front().inverse();
        int out_lo = -a.lo_;
        MatSeries s(n_, out_lo, hi);
        s.set_coeff(out_lo, lead_inv);
        for (int k = 1; k <= hi - out_lo; k++) {
            Mat<K> sum(n_, n_);
            for (int i = 1; i <= std::min(k, a.stored_hi() - a.lo_); i++)
                sum += a.at(a.lo_ + i) * s.at(out_lo + k - i);
            s.set_coeff(out_lo + k, -(lead_inv * sum));
        }
        return s;
    }

    /// exp of a series whose constant term is nilpotent (or absent).
    /// Exact inputs terminate; float inputs stop at convergence.
    MatSeries exp_series(std::optional<int> target = std::nullopt) const;

    /// log of 1 + T with T's constant term nilpotent (unipotent leading
    /// structure); covers positive-loop group elements.
    MatSeries log_series(std::optional<int> target = std::nullopt) const;

    friend bool operator==(const MatSeries& a, const MatSeries& b) {
        if (a.n_ != b.n_) return false;
        int lo = std::min(a.lo_, b.lo_);
        int hi = std::min({a.hi_, b.hi_, std::max(a.stored_hi(), b.stored_hi())});
        for (int k = lo; k <= hi; k++)
            if (!(a.at(k) == b.at(k))) return false;
        return true;
    }

private:
    // storage access without the reliability check (internal sums)
    Mat<K> at(int k) const {
        if (k < lo_ || k > stored_hi()) return Mat<K>(n_, n_);
        return c_[size_t(k - lo_)];
    }
    K field_from_like(long v) const {
        for (const auto& m : c_)
            for (int i = 0; i < n_; i++)
                for (int j = 0; j < n_; j++)
                    if (!stokes::is_zero(m(i, j))) return field_from_int(v, m(i, j));
        return field_from_int(v, K{});
    }

    int n_, lo_, hi_;
    std::vector<Mat<K>> c_;
    mutable std::optional<Mat<K>> zero_;
};

namespace detail {

inline bool series_term_negligible(const Mat<Rat>& m) { return m.is_zero(); }
template <class K> bool series_term_negligible(const Mat<Dual<K>>& m) { return m.is_zero(); }
inline bool series_term_negligible(const Mat<Cplx>& m) {
    if (m.is_zero()) return true;
    unsigned prec = m(0, 0).precision();
    return max_abs(m) < Real::eps2(long(prec) + 16, prec);
}

} // namespace detail

template <class K>
MatSeries<K> MatSeries<K>::exp_series(std::optional<int> target) const {
    int hi = target ? std::min(ord_add(hi_, 0), *target) : hi_;
    if (hi >= kExactOrder)
        fail(Err::BadInput, "exp of an exact polynomial needs a target order");
    MatSeries a = trimmed().truncated(hi);
    if (a.lo_ < 0) fail(Err::BadInput, "exp of a series with a pole");
    if (a.lo_ == 0) {
        Mat<K> c0 = a.at(0);
        Mat<K> p = c0;
        for (int k = 1; k < n_ && !p.is_zero(); k++) p = p * c0;
        if (!p.is_zero())
            fail(Err::BadInput, "exp needs a nilpotent constant term");
    }
    MatSeries result = MatSeries::identity(n_, hi);
    MatSeries term = MatSeries::identity(n_, hi);
    // S^k/k! vanishes (or converges) in the truncated window
    for (long k = 1;; k++) {
        term = term * a;
        K inv_k = field_from_like(k);
        MatSeries scaled(n_, term.lo_, hi);
        bool negligible = true;
        for (int j = term.lo_; j <= std::min(hi, term.stored_hi()); j++) {
            Mat<K> mj = term.at(j).map([&](const K& x) { return x / inv_k; });
            if (!detail::series_term_negligible(mj)) negligible = false;
            scaled.set_coeff(j, std::move(mj));
        }
        term = scaled;
        if (negligible) break;
        result = result + term;
        result.hi_ = hi;
        if (k > 80 * (hi + n_ + 2))
            fail(Err::BadInput, "exp series does not terminate");
    }
    result.hi_ = hi;
    return result;
}

template <class K>
MatSeries<K> MatSeries<K>::log_series(std::optional<int> target) const {
    int hi = target ? std::min(ord_add(hi_, 0), *target) : hi_;
    if (hi >= kExactOrder)
        fail(Err::BadInput, "log of an exact polynomial needs a target order");
    MatSeries t = *this - MatSeries::identity(n_, hi);
    t = t.trimmed().truncated(hi);
    if (t.lo_ < 0) fail(Err::LogUndefined, "log of a series with a pole");
    if (t.lo_ == 0) {
        Mat<K> c0 = t.at(0);
        Mat<K> p = c0;
        for (int k = 1; k < n_ && !p.is_zero(); k++) p = p * c0;
        if (!p.is_zero())
            fail(Err::LogUndefined, "log needs unipotent leading structure");
    }
    MatSeries result = MatSeries::zero(n_, hi);
    MatSeries power = MatSeries::identity(n_, hi);
    for (long k = 1;; k++) {
        power = power * t;
        K inv_k = field_from_like(k % 2 == 1 ? k : -k);
        MatSeries scaled(n_, power.lo_, hi);
        bool negligible = true;
        for (int j = power.lo_; j <= std::min(hi, power.stored_hi()); j++) {
            Mat<K> mj = power.at(j).map([&](const K& x) { return x / inv_k; });
            if (!detail::series_term_negligible(mj)) negligible = false;
            scaled.set_coeff(j, std::move(mj));
        }
        if (negligible) break;
        result = result + scaled;
        result.hi_ = hi;
        if (k > 80 * (hi + n_ + 2)) fail(Err::LogUndefined, "log series does not terminate");
    }
    result.hi_ = hi;
    return result;
}

/// exp(X z^m) as an explicit series through order hi (m >= 1).
template <class K>
MatSeries<K> exp_monomial(const Mat<K>& x, int m, int hi) {
    const int n = x.rows();
    if (hi >= kExactOrder) fail(Err::BadInput, "exp_monomial needs a finite target order");
    MatSeries<K> out = MatSeries<K>::identity(n, hi);
    Mat<K> pw = Mat<K>::identity(n);
    for (long k = 1; k * m <= hi; k++) {
        K div = field_from_int(k, x(0, 0));
        pw = pw * x;
        pw = pw.map([&](const K& c) { return c / div; });
        if (pw.is_zero()) break;
        out.set_coeff(int(k) * m, pw);
    }
    return out;
}

/// Gauge action of exp(X z^m) on a coefficient series (m >= 1):
/// A -> e^{ad_{Xz^m}} A + m X z^{m-1}; both pieces are exact, so the
/// reliable range is preserved.
template <class K>
MatSeries<K> monomial_gauge_act(const Mat<K>& x, int m, const MatSeries<K>& a) {
    if (a.exact_poly()) fail(Err::BadInput, "monomial_gauge_act needs a finite-range series");
    MatSeries<K> out = a;
    MatSeries<K> term = a;
    for (long k = 1; term.lo() + m <= a.hi(); k++) {
        K div = field_from_int(k, x(0, 0));
        MatSeries<K> next(a.dim(), term.lo() + m, a.hi());
        bool nonzero = false;
        for (int j = term.lo(); j <= std::min(term.stored_hi(), a.hi() - m); j++) {
            Mat<K> b = bracket(x, term.coeff(j)).map([&](const K& c) { return c / div; });
            if (!b.is_zero()) nonzero = true;
            next.set_coeff(j + m, std::move(b));
        }
        if (!nonzero) break;
        out = out + next;
        out = out.truncated(a.hi());
        term = std::move(next);
    }
    MatSeries<K> deriv(a.dim(), m - 1, a.hi());
    deriv.set_coeff(m - 1, x.map([&](const K& c) {
        return field_from_int(m, x(0, 0)) * c;
    }));
    return (out + deriv).truncated(a.hi());
}

/// Coefficientwise conjugation by a constant invertible matrix.
template <class K>
MatSeries<K> conjugate_series(const Mat<K>& c, const MatSeries<K>& a) {
    Mat<K> cinv = c.inverse();
    MatSeries<K> out(a.dim(), a.lo(), a.hi());
    for (int k = a.lo(); k <= a.stored_hi(); k++) out.set_coeff(k, c * a.coeff(k) * cinv);
    return out;
}

} // namespace stokes
