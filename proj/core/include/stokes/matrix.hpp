#pragma once

#include <vector>
#include <type_traits>
#include <optional>
#include <initializer_list>
#include <functional>

#include "stokes/errors.hpp"
#include "stokes/rational.hpp"

namespace stokes {

/// Small dense square-free matrix over a field K. Row-major.
template <class K>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}
    Mat(int rows, int cols, std::initializer_list<K> xs) : Mat(rows, cols) {
        size_t k = 0;
        for (const K& x : xs) a_[k++] = x;
    }

    static Mat zero(int n) { return Mat(n, n); }
    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; i++) m(i, i) = field_from_int(1, m(i, i));
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return a_.empty(); }

    K& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const K& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool is_zero() const {
        for (const K& x : a_)
            if (!stokes::is_zero(x)) return false;
        return true;
    }

    friend Mat operator-(const Mat& m) {
        Mat r(m.r_, m.c_);
        for (size_t k = 0; k < m.a_.size(); k++) r.a_[k] = -m.a_[k];
        return r;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r(x.r_, x.c_);
        for (size_t k = 0; k < x.a_.size(); k++) r.a_[k] = x.a_[k] + y.a_[k];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat r(x.r_, x.c_);
        for (size_t k = 0; k < x.a_.size(); k++) r.a_[k] = x.a_[k] - y.a_[k];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.r_, y.c_);
        for (int i = 0; i < x.r_; i++)
            for (int l = 0; l < x.c_; l++) {
                const K& xil = x(i, l);
                if (stokes::is_zero(xil)) continue;
                for (int j = 0; j < y.c_; j++) r(i, j) += xil * y(l, j);
            }
        return r;
    }
    friend Mat operator*(const K& s, const Mat& y) {
        Mat r(y.r_, y.c_);
        for (size_t k = 0; k < y.a_.size(); k++) r.a_[k] = s * y.a_[k];
        return r;
    }
    Mat& operator+=(const Mat& y) {
        for (size_t k = 0; k < a_.size(); k++) a_[k] += y.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& y) {
        for (size_t k = 0; k < a_.size(); k++) a_[k] -= y.a_[k];
        return *this;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    friend Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

    K trace() const {
        K t{};
        for (int i = 0; i < r_; i++) t += (*this)(i, i);
        return t;
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (int i = 0; i < r_; i++)
            for (int j = 0; j < c_; j++) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat map(const std::function<K(const K&)>& f) const {
        Mat r(r_, c_);
        for (size_t k = 0; k < a_.size(); k++) r.a_[k] = f(a_[k]);
        return r;
    }

    /// Solve (*this) X = B by Gaussian elimination with partial pivoting.
    Mat solve(Mat b) const {
        Mat a(*this);
        const int n = r_, m = b.c_;
        for (int col = 0; col < n; col++) {
            int piv = -1;
            double best = 0;
            for (int i = col; i < n; i++) {
                double s = pivot_mag(a(i, col));
                if (s > best) { best = s; piv = i; }
            }
            if (piv < 0) fail(Err::NotInvertible, "singular matrix in solve");
            if (piv != col) { a.swap_rows(piv, col); b.swap_rows(piv, col); }
            K d = a(col, col);
            for (int i = col + 1; i < n; i++) {
                if (stokes::is_zero(a(i, col))) continue;
                K f = a(i, col) / d;
                for (int j = col; j < n; j++) a(i, j) -= f * a(col, j);
                for (int j = 0; j < m; j++) b(i, j) -= f * b(col, j);
            }
        }
        Mat x(n, m);
        for (int i = n - 1; i >= 0; i--)
            for (int j = 0; j < m; j++) {
                K s = b(i, j);
                for (int l = i + 1; l < n; l++) s -= a(i, l) * x(l, j);
                x(i, j) = s / a(i, i);
            }
        return x;
    }

    Mat inverse() const { return solve(identity(r_)); }

    K det() const {
        Mat a(*this);
        const int n = r_;
        K d = field_from_int(1, a(0, 0));
        for (int col = 0; col < n; col++) {
            int piv = -1;
            double best = 0;
            for (int i = col; i < n; i++) {
                double s = pivot_mag(a(i, col));
                if (s > best) { best = s; piv = i; }
            }
            if (piv < 0) return K{};
            if (piv != col) { a.swap_rows(piv, col); d = -d; }
            d *= a(col, col);
            for (int i = col + 1; i < n; i++) {
                if (stokes::is_zero(a(i, col))) continue;
                K f = a(i, col) / a(col, col);
                for (int j = col; j < n; j++) a(i, j) -= f * a(col, j);
            }
        }
        return d;
    }

    int rank() const {
        Mat a(*this);
        int rk = 0;
        for (int col = 0; col < c_ && rk < r_; col++) {
            int piv = -1;
            double best = 0;
            for (int i = rk; i < r_; i++) {
                double s = pivot_mag(a(i, col));
                if (s > best) { best = s; piv = i; }
            }
            if (piv < 0) continue;
            a.swap_rows(piv, rk);
            for (int i = rk + 1; i < r_; i++) {
                if (stokes::is_zero(a(i, col))) continue;
                K f = a(i, col) / a(rk, col);
                for (int j = col; j < c_; j++) a(i, j) -= f * a(rk, j);
            }
            rk++;
        }
        return rk;
    }

    void swap_rows(int i, int j) {
        for (int col = 0; col < c_; col++) std::swap((*this)(i, col), (*this)(j, col));
    }

    template <class F>
    auto convert(const F& f) const {
        Mat<std::invoke_result_t<F, const K&>> r(r_, c_);
        for (int i = 0; i < r_; i++)
            for (int j = 0; j < c_; j++) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    int r_, c_;
    std::vector<K> a_;
};

using MatQ = Mat<Rat>;
using MatC = Mat<Cplx>;

/// Row reduction for possibly singular / rectangular systems: a particular
/// solution with free variables set to zero, or nullopt when inconsistent
/// (exact backend; float treats tiny pivots as zero relative to the column).
template <class K>
std::optional<std::vector<K>> solve_general(Mat<K> a, std::vector<K> b) {
    const int rows = a.rows(), cols = a.cols();
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < cols && r < rows; col++) {
        int piv = -1;
        double best = 0;
        for (int i = r; i < rows; i++) {
            double s = pivot_mag(a(i, col));
            if (s > best) { best = s; piv = i; }
        }
        double colscale = best;
        for (int i = 0; i < rows; i++) colscale = std::max(colscale, pivot_mag(a(i, col)));
        if (piv < 0 || (!field_traits<K>::exact && best < 1e-24 * colscale)) continue;
        if (piv != r) {
            a.swap_rows(piv, r);
            std::swap(b[size_t(piv)], b[size_t(r)]);
        }
        for (int i = r + 1; i < rows; i++) {
            if (stokes::is_zero(a(i, col))) continue;
            K f = a(i, col) / a(r, col);
            for (int j = col; j < cols; j++) a(i, j) -= f * a(r, j);
            b[size_t(i)] -= f * b[size_t(r)];
        }
        pivot_col.push_back(col);
        r++;
    }
    for (int i = r; i < rows; i++)
        if (!stokes::is_zero(b[size_t(i)])) {
            if (field_traits<K>::exact) return std::nullopt;
            double scale = 0;
            for (int j = 0; j < cols; j++) scale = std::max(scale, pivot_mag(a(i, j)));
            if (pivot_mag(b[size_t(i)]) > 1e-20 * std::max(scale, 1.0)) return std::nullopt;
        }
    std::vector<K> x(size_t(cols));
    for (int i = r - 1; i >= 0; i--) {
        int col = pivot_col[size_t(i)];
        K s = b[size_t(i)];
        for (int j = col + 1; j < cols; j++) s -= a(i, j) * x[size_t(j)];
        x[size_t(col)] = s / a(i, col);
    }
    return x;
}

inline Real fro_norm(const MatC& m) {
    Real s(m.rows() ? m(0, 0).precision() : default_precision());
    for (int i = 0; i < m.rows(); i++)
        for (int j = 0; j < m.cols(); j++) s += norm2(m(i, j));
    return sqrt(s);
}

inline Real max_abs(const MatC& m) {
    Real s(m.rows() ? m(0, 0).precision() : default_precision());
    for (int i = 0; i < m.rows(); i++)
        for (int j = 0; j < m.cols(); j++) s = max(s, abs(m(i, j)));
    return s;
}

inline MatC to_cplx(const MatQ& m, unsigned prec) {
    return m.convert([&](const Rat& x) { return x.to_cplx(prec); });
}

} // namespace stokes
