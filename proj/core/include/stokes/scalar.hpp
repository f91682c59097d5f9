#pragma once

#include <variant>
#include <string>

#include "stokes/rational.hpp"
#include "stokes/errors.hpp"

namespace stokes {

enum class Backend { exact, floating };

/// Field element with two backends: exact Gaussian rationals for the formal
/// algebra, arbitrary-precision complex floats for analytics. Backends never
/// mix silently; combining them raises BackendMismatch.
class Scalar {
public:
    Scalar() : v_(Rat()) {}
    explicit Scalar(Rat q) : v_(std::move(q)) {}
    explicit Scalar(Cplx z) : v_(std::move(z)) {}

    Backend backend() const {
        return std::holds_alternative<Rat>(v_) ? Backend::exact : Backend::floating;
    }
    bool is_exact() const { return backend() == Backend::exact; }
    const Rat& rat() const {
        if (!is_exact()) fail(Err::BackendMismatch, "expected the exact backend");
        return std::get<Rat>(v_);
    }
    const Cplx& cplx() const {
        if (is_exact()) fail(Err::BackendMismatch, "expected the float backend");
        return std::get<Cplx>(v_);
    }
    unsigned precision() const { return is_exact() ? 0 : cplx().precision(); }

    bool is_zero() const {
        return is_exact() ? rat().is_zero() : cplx().is_zero();
    }

    friend Scalar operator-(const Scalar& a) {
        return a.is_exact() ? Scalar(-a.rat()) : Scalar(-a.cplx());
    }
#define STOKES_SCALAR_BINOP(op)                                           \
    friend Scalar operator op(const Scalar& a, const Scalar& b) {         \
        if (a.backend() != b.backend())                                   \
            fail(Err::BackendMismatch, "mixed exact/float operands");     \
        return a.is_exact() ? Scalar(a.rat() op b.rat())                  \
                            : Scalar(a.cplx() op b.cplx());               \
    }
    STOKES_SCALAR_BINOP(+)
    STOKES_SCALAR_BINOP(-)
    STOKES_SCALAR_BINOP(*)
    STOKES_SCALAR_BINOP(/)
#undef STOKES_SCALAR_BINOP
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.backend() != b.backend())
            fail(Err::BackendMismatch, "mixed exact/float comparison");
        return a.is_exact() ? a.rat() == b.rat() : a.cplx() == b.cplx();
    }

    /// Lossless for the exact backend, round-trippable decimals for float.
    std::string str() const { return is_exact() ? rat().str() : cplx().str(); }

private:
    std::variant<Rat, Cplx> v_;
};

/// Parse "p/q", "r/s i", "p/q+r/s i" (signs allowed on both parts).
Rat parse_rat(const std::string& s);

/// Parse decimal complex "x", "yi", "x+yi", "x-y e-5 i" at the given precision.
Cplx parse_cplx(const std::string& s, unsigned prec);

/// Parse according to the backend tag.
Scalar parse_scalar(const std::string& s, Backend backend, unsigned prec);

} // namespace stokes
