#pragma once

#include <mpfr.h>
#include <gmpxx.h>
#include <string>
#include <utility>
#include <stdexcept>
#include <cmath>

namespace stokes {

// Thread-local working precision (bits) used when a Real is created without
// an explicit precision.
inline unsigned& default_precision() {
    thread_local unsigned prec = 128;
    return prec;
}

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(default_precision()) {
        default_precision() = bits;
    }
    ~PrecisionScope() { default_precision() = saved_; }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;
private:
    unsigned saved_;
};

/// Arbitrary-precision real number. Every value carries its precision;
/// binary operations compute at the larger of the two operand precisions.
class Real {
public:
    Real() { mpfr_init2(v_, default_precision()); mpfr_set_zero(v_, 1); }
    explicit Real(unsigned prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double d, unsigned prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(long i, unsigned prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, i, MPFR_RNDN); }
    Real(const mpq_class& q, unsigned prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    Real(const std::string& s, unsigned prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real: cannot parse \"" + s + "\"");
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    unsigned precision() const { return unsigned(mpfr_get_prec(v_)); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    static unsigned join(const Real& a, const Real& b) {
        return std::max(a.precision(), b.precision());
    }

    friend Real operator-(const Real& a) {
        Real r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
#define STOKES_REAL_BINOP(op, fn)                                   \
    friend Real operator op(const Real& a, const Real& b) {        \
        Real r(join(a, b));                                        \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                           \
        return r;                                                  \
    }                                                              \
    Real& operator op##=(const Real& b) {                          \
        if (b.precision() > precision()) { Real t(*this); *this = t op b; } \
        else fn(v_, v_, b.v_, MPFR_RNDN);                          \
        return *this;                                              \
    }
    STOKES_REAL_BINOP(+, mpfr_add)
    STOKES_REAL_BINOP(-, mpfr_sub)
    STOKES_REAL_BINOP(*, mpfr_mul)
    STOKES_REAL_BINOP(/, mpfr_div)
#undef STOKES_REAL_BINOP

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

#define STOKES_REAL_FN(name, fn)              \
    friend Real name(const Real& a) {         \
        Real r(a.precision());                \
        fn(r.v_, a.v_, MPFR_RNDN);            \
        return r;                             \
    }
    STOKES_REAL_FN(abs, mpfr_abs)
    STOKES_REAL_FN(sqrt, mpfr_sqrt)
    STOKES_REAL_FN(exp, mpfr_exp)
    STOKES_REAL_FN(log, mpfr_log)
    STOKES_REAL_FN(sin, mpfr_sin)
    STOKES_REAL_FN(cos, mpfr_cos)
#undef STOKES_REAL_FN

    friend Real floor(const Real& a) {
        Real r(a.precision());
        mpfr_rint(r.v_, a.v_, MPFR_RNDD);
        return r;
    }
    friend Real round(const Real& a) {
        Real r(a.precision());
        mpfr_rint(r.v_, a.v_, MPFR_RNDNA);
        return r;
    }

    friend Real atan2(const Real& y, const Real& x) {
        Real r(join(y, x));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& x, const Real& y) {
        Real r(join(y, x));
        mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, long e) {
        Real r(a.precision());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real ldexp2(const Real& a, long e) {  // a * 2^e
        Real r(a.precision());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real min(const Real& a, const Real& b) { return a < b ? a : b; }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }

    static Real pi(unsigned prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    /// 2^-e at the given precision (unit for tolerance arithmetic).
    static Real eps2(long e, unsigned prec) {
        Real r(1.0, prec);
        mpfr_mul_2si(r.raw(), r.raw(), -e, MPFR_RNDN);
        return r;
    }

    /// Round-trippable decimal string (enough digits for the precision).
    std::string str() const {
        if (!is_finite()) return "nan";
        unsigned digits = unsigned(std::ceil(precision() * 0.30103)) + 3;
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%uRg", digits);
        char* out = nullptr;
        mpfr_asprintf(&out, fmt, v_);
        std::string s(out);
        mpfr_free_str(out);
        return s;
    }
    /// Short human-readable form.
    std::string str(unsigned digits) const {
        if (!is_finite()) return "nan";
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%uRg", digits);
        char* out = nullptr;
        mpfr_asprintf(&out, fmt, v_);
        std::string s(out);
        mpfr_free_str(out);
        return s;
    }

private:
    mpfr_t v_;
};

/// Complex number over Real. Components share a precision.
struct Cplx {
    Real re, im;

    Cplx() = default;
    explicit Cplx(unsigned prec) : re(prec), im(prec) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(double r, double i, unsigned prec) : re(r, prec), im(i, prec) {}
    static Cplx from_int(long k, unsigned prec) { return Cplx(Real(k, prec), Real(0L, prec)); }

    unsigned precision() const { return std::max(re.precision(), im.precision()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        if (d.is_zero()) throw std::domain_error("Cplx: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cplx& operator+=(const Cplx& b) { re += b.re; im += b.im; return *this; }
    Cplx& operator-=(const Cplx& b) { re -= b.re; im -= b.im; return *this; }
    Cplx& operator*=(const Cplx& b) { *this = *this * b; return *this; }
    Cplx& operator/=(const Cplx& b) { *this = *this / b; return *this; }
    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }

    friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
    friend Real abs(const Cplx& a) { return hypot(a.re, a.im); }
    friend Real norm2(const Cplx& a) { return a.re * a.re + a.im * a.im; }
    friend Real arg(const Cplx& a) { return atan2(a.im, a.re); }
    friend Cplx exp(const Cplx& a) {
        Real m = exp(a.re);
        return {m * cos(a.im), m * sin(a.im)};
    }
    /// Principal branch.
    friend Cplx log(const Cplx& a) {
        if (a.is_zero()) throw std::domain_error("Cplx: log(0)");
        return {log(abs(a)), arg(a)};
    }
    friend Cplx sqrt(const Cplx& a) {
        if (a.is_zero()) return a;
        Real m = sqrt(abs(a));
        Real half(0.5, a.precision());
        Real th = arg(a) * half;
        return {m * cos(th), m * sin(th)};
    }
    /// exp(i*t) for real t.
    static Cplx cis(const Real& t) { return {cos(t), sin(t)}; }

    std::string str() const { return re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "i"; }
};

inline Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
inline Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }

/// z = r e^{i theta}.
inline Cplx from_polar(const Real& r, const Real& theta) {
    return Cplx(r * cos(theta), r * sin(theta));
}

} // namespace stokes
