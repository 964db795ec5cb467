#pragma once

#include <stdexcept>
#include <string>

namespace smoothfib {

enum class ErrorKind {
    NotPrimitive,
    NotUnimodular,
    DimensionMismatch,
    EmptyInput,
    NotAdmissible,
    NotPointed,
    NotFullDimensional,
    BoundTooSmall,
    RangeError,
    NotHomogeneous,
    AlreadyApplied,
    CutsRemaining,
    NegativeArea,
    ZeroCoordinate,
    NegativeExponent,
    SchemaError,
    TargetMismatch,
    UnsupportedDimension,
    CrossCheckFailed,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotPrimitive: return "NotPrimitive";
        case ErrorKind::NotUnimodular: return "NotUnimodular";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::NotAdmissible: return "NotAdmissible";
        case ErrorKind::NotPointed: return "NotPointed";
        case ErrorKind::NotFullDimensional: return "NotFullDimensional";
        case ErrorKind::BoundTooSmall: return "BoundTooSmall";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::NotHomogeneous: return "NotHomogeneous";
        case ErrorKind::AlreadyApplied: return "AlreadyApplied";
        case ErrorKind::CutsRemaining: return "CutsRemaining";
        case ErrorKind::NegativeArea: return "NegativeArea";
        case ErrorKind::ZeroCoordinate: return "ZeroCoordinate";
        case ErrorKind::NegativeExponent: return "NegativeExponent";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::TargetMismatch: return "TargetMismatch";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::CrossCheckFailed: return "CrossCheckFailed";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Internal invariant check; failure means a bug, not bad input.
inline void ensure(bool cond, const char* what) {
    if (!cond) throw Error(ErrorKind::CrossCheckFailed, what);
}

}  // namespace smoothfib
