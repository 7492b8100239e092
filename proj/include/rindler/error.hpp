#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rindler {

enum class ErrorCode {
    BadPartition,
    NotHermitian,
    NotPSD,
    NotDensityMatrix,
    UnphysicalState,
    UnknownPreset,
    BadPhysicalParam,
    BadRindlerParam,
    BadProbability,
    NotAPauliChannel,
    ChannelNotTracePreserving,
    NotXForm,
    ClosedFormDomainError,
    BadSweepSpec,
    BadPlotRequest,
    IoError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
        case ErrorCode::UnphysicalState: return "UnphysicalState";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::BadPhysicalParam: return "BadPhysicalParam";
        case ErrorCode::BadRindlerParam: return "BadRindlerParam";
        case ErrorCode::BadProbability: return "BadProbability";
        case ErrorCode::NotAPauliChannel: return "NotAPauliChannel";
        case ErrorCode::ChannelNotTracePreserving: return "ChannelNotTracePreserving";
        case ErrorCode::NotXForm: return "NotXForm";
        case ErrorCode::ClosedFormDomainError: return "ClosedFormDomainError";
        case ErrorCode::BadSweepSpec: return "BadSweepSpec";
        case ErrorCode::BadPlotRequest: return "BadPlotRequest";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Base exception for every library failure. `code()` identifies the failure
/// class; `what()` is "<Code>: <detail>".
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

/// Raised by strict state construction; carries the closed-form spectrum
/// ¼(1+c3±c⁻), ¼(1−c3±c⁺).
class UnphysicalStateError : public Error {
   public:
    UnphysicalStateError(const std::string &detail, std::array<double, 4> eigenvalues)
        : Error(ErrorCode::UnphysicalState, detail), eigenvalues_(eigenvalues) {
    }

    const std::array<double, 4> &eigenvalues() const noexcept {
        return eigenvalues_;
    }

   private:
    std::array<double, 4> eigenvalues_;
};

/// Raised when a closed-form concurrence expression takes the square root of
/// a materially negative quantity.
class ClosedFormDomainError : public Error {
   public:
    ClosedFormDomainError(std::string term, double radicand)
        : Error(ErrorCode::ClosedFormDomainError,
                "radicand '" + term + "' = " + std::to_string(radicand) + " is negative"),
          term_(std::move(term)),
          radicand_(radicand) {
    }

    const std::string &term() const noexcept {
        return term_;
    }
    double radicand() const noexcept {
        return radicand_;
    }

   private:
    std::string term_;
    double radicand_;
};

}  // namespace rindler
