#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nls {

enum class ErrorKind {
    InvalidArgument,
    InvalidExponent,
    InvalidOrder,
    InvalidScale,
    NonFinite,
    GridMismatch,
    UnsupportedTopology,
    UndefinedAtZeroMode,
    UndefinedRatio,
    OutOfLemmaRange,
    TimeTooSmall,
    InvalidInterval,
    ContractionFailure,
    NumericalBlowup,
    BlowupDetected,
    RescaleFailure,
    InvalidSeries,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; `kind()` is the stable part.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidExponent: return "invalid-exponent";
    case ErrorKind::InvalidOrder: return "invalid-order";
    case ErrorKind::InvalidScale: return "invalid-scale";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::UnsupportedTopology: return "unsupported-topology";
    case ErrorKind::UndefinedAtZeroMode: return "undefined-at-zero-mode";
    case ErrorKind::UndefinedRatio: return "undefined-ratio";
    case ErrorKind::OutOfLemmaRange: return "out-of-lemma-range";
    case ErrorKind::TimeTooSmall: return "time-too-small";
    case ErrorKind::InvalidInterval: return "invalid-interval";
    case ErrorKind::ContractionFailure: return "contraction-failure";
    case ErrorKind::NumericalBlowup: return "numerical-blowup";
    case ErrorKind::BlowupDetected: return "blowup-detected";
    case ErrorKind::RescaleFailure: return "rescale-failure";
    case ErrorKind::InvalidSeries: return "invalid-series";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

} // namespace nls
