#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace floerflow {

enum class Errc {
    // input / shape errors
    ParseError,
    ConfigError,
    DimensionMismatch,
    InvalidRing,
    InvalidJPoint,
    SourceTargetMismatch,
    IndexOutOfRange,
    NegativeCoordinate,
    NotComparable,
    InvalidCategory,
    // mathematical validation failures
    CompositeNonzero,
    WindowOverflow,
    BoundaryCompositeNonzero,
    TotalDifferentialSquareNonzero,
    IncoherentOrientation,
    NegativeRelativeIndex,
    NotMorse,
    EulerMismatch,
    MorseSmaleViolation,
    IntegrationFailure,
    UnmatchedEndpoint,
};

constexpr std::string_view errcName(Errc e)
{
    switch (e) {
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidRing: return "InvalidRing";
    case Errc::InvalidJPoint: return "InvalidJPoint";
    case Errc::SourceTargetMismatch: return "SourceTargetMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NegativeCoordinate: return "NegativeCoordinate";
    case Errc::NotComparable: return "NotComparable";
    case Errc::InvalidCategory: return "InvalidCategory";
    case Errc::CompositeNonzero: return "CompositeNonzero";
    case Errc::WindowOverflow: return "WindowOverflow";
    case Errc::BoundaryCompositeNonzero: return "BoundaryCompositeNonzero";
    case Errc::TotalDifferentialSquareNonzero: return "TotalDifferentialSquareNonzero";
    case Errc::IncoherentOrientation: return "IncoherentOrientation";
    case Errc::NegativeRelativeIndex: return "NegativeRelativeIndex";
    case Errc::NotMorse: return "NotMorse";
    case Errc::EulerMismatch: return "EulerMismatch";
    case Errc::MorseSmaleViolation: return "MorseSmaleViolation";
    case Errc::IntegrationFailure: return "IntegrationFailure";
    case Errc::UnmatchedEndpoint: return "UnmatchedEndpoint";
    }
    return "Unknown";
}

/// True for errors that mean "the input was well formed but fails a
/// mathematical check" as opposed to malformed input.
constexpr bool isValidationFailure(Errc e)
{
    switch (e) {
    case Errc::CompositeNonzero:
    case Errc::WindowOverflow:
    case Errc::BoundaryCompositeNonzero:
    case Errc::TotalDifferentialSquareNonzero:
    case Errc::IncoherentOrientation:
    case Errc::NegativeRelativeIndex:
    case Errc::NotMorse:
    case Errc::EulerMismatch:
    case Errc::MorseSmaleViolation:
    case Errc::IntegrationFailure:
    case Errc::UnmatchedEndpoint:
        return true;
    default:
        return false;
    }
}

class Error : public std::runtime_error
{
public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(std::string(errcName(code)) + ": " + what),
          code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace floerflow
