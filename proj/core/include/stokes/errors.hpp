#pragma once

#include <stdexcept>
#include <string>

namespace stokes {

enum class Err {
    NotRegular,
    NotFramed,
    NotBorel,
    NotNormalForm,
    NotInvertible,
    LogUndefined,
    TruncationUnderflow,
    OutOfSector,
    PrecisionExhausted,
    StepLimit,
    NewtonDiverged,
    ResonanceHit,
    NoIrregularPoint,
    Indeterminate,
    BackendMismatch,
    BadInput,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::NotRegular: return "NotRegular";
        case Err::NotFramed: return "NotFramed";
        case Err::NotBorel: return "NotBorel";
        case Err::NotNormalForm: return "NotNormalForm";
        case Err::NotInvertible: return "NotInvertible";
        case Err::LogUndefined: return "LogUndefined";
        case Err::TruncationUnderflow: return "TruncationUnderflow";
        case Err::OutOfSector: return "OutOfSector";
        case Err::PrecisionExhausted: return "PrecisionExhausted";
        case Err::StepLimit: return "StepLimit";
        case Err::NewtonDiverged: return "NewtonDiverged";
        case Err::ResonanceHit: return "ResonanceHit";
        case Err::NoIrregularPoint: return "NoIrregularPoint";
        case Err::Indeterminate: return "Indeterminate";
        case Err::BackendMismatch: return "BackendMismatch";
        case Err::BadInput: return "BadInput";
    }
    return "Unknown";
}

/// Domain-level failure (precondition violated, numeric policy exhausted...).
/// The CLI maps these to exit code 2 and a structured JSON error object.
class DomainError : public std::runtime_error {
public:
    DomainError(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }
private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
    throw DomainError(code, what);
}

} // namespace stokes
