#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>
#include <utility>

#include "stokes/real.hpp"

namespace stokes {

/// Gaussian rational p/q + (r/s)i. Arithmetic is exact and closed
/// under +, -, *, / (the field Q(i)).
struct Rat {
    mpq_class re, im;

    Rat() : re(0), im(0) {}
    Rat(long n) : re(n), im(0) {}
    Rat(mpq_class r) : re(std::move(r)), im(0) {}
    Rat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    Rat(long p, long q) : re(p, q), im(0) { re.canonicalize(); }

    static Rat i() { return Rat(mpq_class(0), mpq_class(1)); }
    static Rat from_int(long k) { return Rat(k); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend Rat operator-(const Rat& a) { return {-a.re, -a.im}; }
    friend Rat operator+(const Rat& a, const Rat& b) { return {a.re + b.re, a.im + b.im}; }
    friend Rat operator-(const Rat& a, const Rat& b) { return {a.re - b.re, a.im - b.im}; }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        mpq_class d = b.re * b.re + b.im * b.im;
        if (d == 0) throw std::domain_error("Rat: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Rat& operator+=(const Rat& b) { re += b.re; im += b.im; return *this; }
    Rat& operator-=(const Rat& b) { re -= b.re; im -= b.im; return *this; }
    Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

    friend Rat conj(const Rat& a) { return {a.re, -a.im}; }
    friend mpq_class norm2(const Rat& a) { return a.re * a.re + a.im * a.im; }

    Cplx to_cplx(unsigned prec) const { return {Real(re, prec), Real(im, prec)}; }

    /// "p/q", "r/s i", or "p/q+r/s i"; lossless.
    std::string str() const {
        auto part = [](const mpq_class& q) { return q.get_str(); };
        if (im == 0) return part(re);
        std::string istr = (im == 1 ? "" : im == -1 ? "-" : part(im)) + "i";
        if (re == 0) return istr;
        return part(re) + (im > 0 ? "+" : "") + istr;
    }
};

/// First-order dual number a + b*eps over K (forward-mode derivatives).
template <class K>
struct Dual {
    K a, b;

    Dual() : a(), b() {}
    Dual(K x) : a(std::move(x)), b() {}
    Dual(K x, K dx) : a(std::move(x)), b(std::move(dx)) {}
    static Dual from_int(long k) { return Dual(K(k)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
    friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
    friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
    friend Dual operator*(const Dual& x, const Dual& y) {
        return {x.a * y.a, x.a * y.b + x.b * y.a};
    }
    friend Dual operator/(const Dual& x, const Dual& y) {
        K q = x.a / y.a;
        return {q, (x.b - q * y.b) / y.a};
    }
    Dual& operator+=(const Dual& y) { a += y.a; b += y.b; return *this; }
    Dual& operator-=(const Dual& y) { a -= y.a; b -= y.b; return *this; }
    Dual& operator*=(const Dual& y) { *this = *this * y; return *this; }
    Dual& operator/=(const Dual& y) { *this = *this / y; return *this; }
    friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }
};

// --- field helpers shared by the templated linear algebra ---

inline bool is_zero(const Rat& x) { return x.is_zero(); }
inline bool is_zero(const Cplx& x) { return x.is_zero(); }
template <class K> bool is_zero(const Dual<K>& x) { return x.is_zero(); }

// invertibility is what division guards care about; for dual numbers that is
// a question about the standard part only
inline bool is_invertible(const Rat& x) { return !x.is_zero(); }
inline bool is_invertible(const Cplx& x) { return !x.is_zero(); }
template <class K> bool is_invertible(const Dual<K>& x) { return is_invertible(x.a); }

inline Rat field_from_int(long k, const Rat&) { return Rat(k); }
inline Cplx field_from_int(long k, const Cplx& like) {
    return Cplx::from_int(k, like.precision() ? like.precision() : default_precision());
}
template <class K>
Dual<K> field_from_int(long k, const Dual<K>& like) {
    return Dual<K>(field_from_int(k, like.a));
}

/// Size proxy used for pivot selection; exact kinds only need nonzero/zero.
inline double pivot_mag(const Rat& x) { return x.is_zero() ? 0.0 : 1.0; }
inline double pivot_mag(const Cplx& x) {
    double r = x.re.to_double(), i = x.im.to_double();
    return std::abs(r) + std::abs(i);
}
template <class K> double pivot_mag(const Dual<K>& x) { return pivot_mag(x.a); }

template <class K> struct field_traits { static constexpr bool exact = true; };
template <> struct field_traits<Cplx> { static constexpr bool exact = false; };
template <class K> struct field_traits<Dual<K>> {
    static constexpr bool exact = field_traits<K>::exact;
};

} // namespace stokes
